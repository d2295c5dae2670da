/*
 * Copyright (c) 2026 The qkdps Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "decoy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "error.hpp"
#include "lp.hpp"

namespace qkdps {

void IntensitySet::validate() const {
  require(!intensities.empty(), ErrorCode::kInvalidArgument, "IntensitySet: no intensities");
  require(cutoff_n >= 0, ErrorCode::kInvalidArgument, "IntensitySet: cutoff must be nonnegative");
  require(signal_intensity >= 0 && signal_intensity < static_cast<int>(intensities.size()),
          ErrorCode::kInvalidArgument, "IntensitySet: signal intensity index out of range");
  for (size_t i = 0; i < intensities.size(); ++i) {
    require(intensities[i] > 0.0 && std::isfinite(intensities[i]), ErrorCode::kInvalidArgument,
            "IntensitySet: intensities must be positive");
    for (size_t j = 0; j < i; ++j)
      require(intensities[i] != intensities[j], ErrorCode::kInvalidArgument, "IntensitySet: intensities must be distinct");
  }
}

DecoyObservations::DecoyObservations(int n_outcomes, int n_signals, int n_intensities)
    : n_outcomes_(n_outcomes), n_signals_(n_signals), n_intensities_(n_intensities) {
  require(n_outcomes > 0 && n_signals > 0 && n_intensities > 0, ErrorCode::kInvalidArgument,
          "DecoyObservations: sizes must be positive");
  data_.assign(static_cast<size_t>(n_outcomes) * n_signals * n_intensities, 0.0);
}

size_t DecoyObservations::index(int l, int k, int mu) const {
  require(l >= 0 && l < n_outcomes_ && k >= 0 && k < n_signals_ && mu >= 0 && mu < n_intensities_,
          ErrorCode::kInvalidArgument, "DecoyObservations: index out of range");
  return (static_cast<size_t>(k) * n_intensities_ + mu) * n_outcomes_ + l;
}

void DecoyObservations::validate() const {
  for (int k = 0; k < n_signals_; ++k)
    for (int mu = 0; mu < n_intensities_; ++mu) {
      double s = 0.0;
      for (int l = 0; l < n_outcomes_; ++l) {
        const double g = at(l, k, mu);
        require(g >= 0.0 && g <= 1.0, ErrorCode::kInvalidArgument, "DecoyObservations: frequency outside [0,1]");
        s += g;
      }
      require(std::abs(s - 1.0) <= 1e-9, ErrorCode::kInvalidArgument,
              "DecoyObservations: outcome frequencies for signal " + std::to_string(k) + ", intensity " +
                  std::to_string(mu) + " do not sum to 1");
    }
}

double poisson_pmf(int m, double mu) {
  require(m >= 0 && mu >= 0.0, ErrorCode::kInvalidArgument, "poisson_pmf: need m >= 0 and mu >= 0");
  if (mu == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(-mu + m * std::log(mu) - std::lgamma(m + 1.0));
}

DensityOp tagged_state(int signal, double mu, int cutoff, const std::vector<CMat>& encodings, int tag_index,
                       int n_tags) {
  require(signal >= 0 && signal < static_cast<int>(encodings.size()), ErrorCode::kInvalidArgument,
          "tagged_state: signal index out of range");
  require(cutoff >= 0 && mu >= 0.0 && n_tags >= 1 && tag_index >= 0 && tag_index < n_tags,
          ErrorCode::kInvalidArgument, "tagged_state: invalid cutoff, intensity or tag");
  const CMat& v = encodings[signal];
  require(v.cols() == cutoff + 1 && v.rows() >= v.cols(), ErrorCode::kDimensionMismatch,
          "tagged_state: encoding must map C^{N+1} into the optical space");
  require(max_abs(v.adjoint() * v - CMat::Identity(cutoff + 1, cutoff + 1)) <= 1e-10, ErrorCode::kInvalidArgument,
          "tagged_state: encoding is not an isometry");
  const int d_opt = static_cast<int>(v.rows());
  CMat rho = CMat::Zero(d_opt + n_tags, d_opt + n_tags);
  double kept = 0.0;
  for (int m = 0; m <= cutoff; ++m) {
    const double p = poisson_pmf(m, mu);
    kept += p;
    rho.topLeftCorner(d_opt, d_opt) += p * v.col(m) * v.col(m).adjoint();
  }
  rho(d_opt + tag_index, d_opt + tag_index) = std::max(0.0, 1.0 - kept);
  return DensityOp(rho);
}

YieldBounds decoy_lp_bounds(const DecoyObservations& obs, const IntensitySet& set, const YieldTarget& target) {
  set.validate();
  obs.validate();
  const int n_int = static_cast<int>(set.intensities.size());
  require(obs.n_intensities() == n_int, ErrorCode::kDimensionMismatch,
          "decoy_lp_bounds: observations and intensity set disagree on the number of intensities");
  require(target.outcome >= 0 && target.outcome < obs.n_outcomes() && target.signal >= 0 &&
              target.signal < obs.n_signals() && target.photons >= 0 && target.photons <= set.cutoff_n,
          ErrorCode::kInvalidArgument, "decoy_lp_bounds: target out of range");

  // Signals decouple, so only the target signal's variables enter:
  // y[l, m'] for m' <= N, then y_tag[l, mu].
  const int n_out = obs.n_outcomes(), n_ph = set.cutoff_n + 1;
  const int n_y = n_out * n_ph, n_var = n_y + n_out * n_int;
  auto yi = [&](int l, int m) { return l * n_ph + m; };
  auto ti = [&](int l, int mu) { return n_y + l * n_int + mu; };

  const int n_rows = n_out * n_int + n_ph + n_int;
  LpProblem lp;
  lp.a_eq = Eigen::MatrixXd::Zero(n_rows, n_var);
  lp.b_eq = Eigen::VectorXd::Zero(n_rows);
  lp.lower = Eigen::VectorXd::Zero(n_var);
  lp.upper = Eigen::VectorXd::Ones(n_var);
  int row = 0;
  for (int mu = 0; mu < n_int; ++mu) {
    double kept = 0.0;
    std::vector<double> pm(n_ph);
    for (int m = 0; m < n_ph; ++m) kept += (pm[m] = poisson_pmf(m, set.intensities[mu]));
    for (int l = 0; l < n_out; ++l, ++row) {
      for (int m = 0; m < n_ph; ++m) lp.a_eq(row, yi(l, m)) = pm[m];
      lp.a_eq(row, ti(l, mu)) = std::max(0.0, 1.0 - kept);
      lp.b_eq(row) = obs.at(l, target.signal, mu);
    }
  }
  for (int m = 0; m < n_ph; ++m, ++row) {
    for (int l = 0; l < n_out; ++l) lp.a_eq(row, yi(l, m)) = 1.0;
    lp.b_eq(row) = 1.0;
  }
  for (int mu = 0; mu < n_int; ++mu, ++row) {
    for (int l = 0; l < n_out; ++l) lp.a_eq(row, ti(l, mu)) = 1.0;
    lp.b_eq(row) = 1.0;
  }

  YieldBounds out;
  for (double sense : {1.0, -1.0}) {
    lp.c = Eigen::VectorXd::Zero(n_var);
    lp.c(yi(target.outcome, target.photons)) = sense;
    const LpResult r = lp_solve(lp);
    require(r.status != LpStatus::kInfeasible, ErrorCode::kInfeasible,
            "decoy_lp_bounds: observations are inconsistent with any photon-number yields");
    require(r.status == LpStatus::kOptimal, ErrorCode::kNumerical, "decoy_lp_bounds: simplex did not converge");
    const double v = std::clamp(sense * r.value, 0.0, 1.0);
    if (sense > 0)
      out.lo = v;
    else
      out.hi = v;
  }
  if (out.lo > out.hi) out.lo = out.hi = 0.5 * (out.lo + out.hi);
  return out;
}

BlockSpec shield_block_spec(const ShieldBlocks& sb, std::vector<Block> side_b) {
  require(sb.n_int >= 1 && sb.cutoff_n >= 0 && sb.d_a >= 1, ErrorCode::kInvalidArgument, "ShieldBlocks: invalid sizes");
  BlockSpec spec;
  spec.side_a.push_back(Block{sb.d_a, sb.n_int * (sb.cutoff_n + 2)});
  spec.side_b = std::move(side_b);
  return spec;
}

DecoyObservations load_decoy_csv(const std::string& path, IntensitySet& set) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIo, "load_decoy_csv: cannot open " + path);
  struct Row {
    int l, k;
    double mu, f;
  };
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    boost::algorithm::trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    boost::algorithm::split(cells, line, boost::is_any_of(","));
    for (auto& c : cells) boost::algorithm::trim(c);
    if (!header_seen) {
      header_seen = true;
      require(cells.size() == 4 && cells[0] == "outcome" && cells[1] == "signal" && cells[2] == "intensity" &&
                  cells[3] == "frequency",
              ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": expected header outcome,signal,intensity,frequency");
      continue;
    }
    require(cells.size() == 4, ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": expected 4 columns");
    try {
      size_t pos = 0;
      Row r{};
      r.l = std::stoi(cells[0], &pos);
      r.k = std::stoi(cells[1], &pos);
      std::istringstream mu_in(cells[2]), f_in(cells[3]);
      mu_in.imbue(std::locale::classic());
      f_in.imbue(std::locale::classic());
      mu_in >> r.mu;
      f_in >> r.f;
      require(!mu_in.fail() && !f_in.fail() && r.l >= 0 && r.k >= 0, ErrorCode::kParse, "bad value");
      rows.push_back(r);
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": malformed row");
    }
  }
  require(!rows.empty(), ErrorCode::kParse, "load_decoy_csv: " + path + " has no data rows");
  std::vector<double> mus;
  int n_out = 0, n_sig = 0;
  for (const Row& r : rows) {
    if (std::find(mus.begin(), mus.end(), r.mu) == mus.end()) mus.push_back(r.mu);
    n_out = std::max(n_out, r.l + 1);
    n_sig = std::max(n_sig, r.k + 1);
  }
  std::sort(mus.begin(), mus.end());
  set.intensities = mus;
  set.signal_intensity = static_cast<int>(mus.size()) - 1;
  DecoyObservations obs(n_out, n_sig, static_cast<int>(mus.size()));
  std::map<std::tuple<int, int, int>, bool> seen;
  for (const Row& r : rows) {
    const int mi = static_cast<int>(std::find(mus.begin(), mus.end(), r.mu) - mus.begin());
    require(!seen[{r.l, r.k, mi}], ErrorCode::kParse, "load_decoy_csv: duplicate row for one (outcome, signal, intensity)");
    seen[{r.l, r.k, mi}] = true;
    obs.at(r.l, r.k, mi) = r.f;
  }
  obs.validate();
  set.validate();
  return obs;
}

}  // namespace qkdps
