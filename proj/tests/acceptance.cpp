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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "decoy.hpp"
#include "decoy_gen.hpp"
#include "definetti.hpp"
#include "entropy.hpp"
#include "entropy_gen.hpp"
#include "finite_size.hpp"
#include "oracles.hpp"
#include "povm_gen.hpp"
#include "squasher.hpp"
#include "sweep.hpp"
#include "three_state.hpp"

using namespace qkdps;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

double log2_big(const BigInt& v) {
  BigInt g = v;
  int shift = 0;
  while (g > BigInt(1) << 60) {
    g >>= 1;
    ++shift;
  }
  return std::log2(g.convert_to<double>()) + shift;
}

Verdict effective_dimensions() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t block = effective_x({{{2, 1}}, {{2, 1}, {1, 9}}});
  const std::uint64_t generic = effective_x({{{2, 1}}, {{11, 1}}});
  const std::uint64_t decoy = effective_x(shield_block_spec({3, 8, 3}, {{2, 1}, {1, 9}}));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "x = %llu, %llu, %llu in %.3f ms", (unsigned long long)block,
                (unsigned long long)generic, (unsigned long long)decoy, ms);
  return {block == 52 && generic == 484 && decoy == 3510 && ms < 1.0, buf};
}

Verdict symmetric_bound() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> nd(0, 1000000), xd(2, 64);
  double worst = -INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = nd(rng), x = xd(rng);
    worst = std::max(worst, log2_big(sym_dim(n, x)) - log2_sym_dim_upper(static_cast<double>(n), x));
  }
  bool pascal = true;
  for (std::uint64_t n = 1; n <= 50; ++n)
    for (std::uint64_t x = 2; x <= 50; ++x) pascal &= sym_dim(n, x) == sym_dim(n - 1, x) + sym_dim(n, x - 1);
  char buf[128];
  std::snprintf(buf, sizeof buf, "max(log2 g - upper) = %.3g, Pascal %s", worst, pascal ? "exact" : "broken");
  return {worst <= 1e-9 && pascal, buf};
}

Verdict squasher_soundness() {
  Rng rng(3);
  int verified = 0, detected = 0, tampered = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> dl(1, 4), dt(1, 4), k(2, 6);
    const int d_low = dl(rng), d_tail = dt(rng), n_out = k(rng);
    const TruncatedPOVM g = testgen::random_block_povm(d_low, d_tail, n_out, rng);
    const FlagSquash fs = build_flag_squasher(g, lambda_min_tail(g, 0));
    verified += verify_squash(fs, g, 1e-10, 200, trial).ok;
    for (int i = 0; i < n_out; ++i) {
      FlagSquash bad = fs;
      CMat f = bad.target[i].matrix();
      // The low block passes through unchanged, so every entry there is reachable.
      f(i % d_low, i % d_low) += 1e-3;
      bad.target[i] = HermOp(f);
      ++tampered;
      const SquashReport r = verify_squash(bad, g, 1e-10, 50, trial);
      detected += !r.ok && std::abs(r.max_deviation - 1e-3) <= 5e-5;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/50 verified, %d/%d tamperings detected", verified, detected, tampered);
  return {verified == 50 && detected == tampered, buf};
}

Verdict crossclick() {
  const double v = crossclick_lambda_min(0.2, 1);
  char buf[96];
  std::snprintf(buf, sizeof buf, "lambda_min = %.15f", v);
  return {std::abs(v - 0.08) <= 1e-12, buf};
}

Verdict de_finetti() {
  const HermOp m = haar_mean_power(2, 2, 100000, 5);
  const double err = (m.matrix() - sym_projector(2, 2).matrix() / 3.0).operatorNorm();
  CVec sym = CVec::Zero(4), anti = CVec::Zero(4);
  sym(1) = sym(2) = anti(1) = 1.0 / std::sqrt(2.0);
  anti(2) = -anti(1);
  CVec sym3 = CVec::Zero(8);
  sym3(1) = sym3(2) = sym3(4) = 1.0 / std::sqrt(3.0);
  const bool ok_sym = check_pure_domination(sym, 2, 2) && check_pure_domination(sym3, 3, 2);
  const bool ok_anti = !check_pure_domination(anti, 2, 2);
  char buf[128];
  std::snprintf(buf, sizeof buf, "||Haar - P/3|| = %.3g, symmetric %s, antisymmetric %s", err,
                ok_sym ? "dominated" : "NOT dominated", ok_anti ? "rejected" : "accepted");
  return {err < 5e-2 && ok_sym && ok_anti, buf};
}

Verdict decoy_bracket() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  int misses = 0, widened = 0, targets = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int cutoff = trial % 4, n_out = 2 + trial % 3, n_sig = 1 + trial % 3;
    const auto y = testgen::random_yields(n_sig, n_out, 25, rng);
    std::vector<double> mus{u(rng) * 0.2, 0.2 + u(rng) * 0.3, 0.6 + u(rng)};
    std::vector<double> mus4 = mus;
    mus4.push_back(1.7 + u(rng));
    const IntensitySet s3{mus, cutoff, 2}, s4{mus4, cutoff, 3};
    const auto o3 = testgen::mix(y, mus), o4 = testgen::mix(y, mus4);
    for (int k = 0; k < n_sig; ++k)
      for (int l = 0; l < n_out; ++l)
        for (int m = 0; m <= cutoff; ++m) {
          ++targets;
          const YieldBounds b3 = decoy_lp_bounds(o3, s3, {l, k, m});
          const YieldBounds b4 = decoy_lp_bounds(o4, s4, {l, k, m});
          misses += y[k][m][l] < b3.lo - 1e-9 || y[k][m][l] > b3.hi + 1e-9;
          widened += b4.lo < b3.lo - 1e-9 || b4.hi > b3.hi + 1e-9;
        }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d targets, %d outside bracket, %d widened by a 4th intensity", targets, misses,
                widened);
  return {misses == 0 && widened == 0, buf};
}

Verdict entropy_soundness() {
  Rng rng(7);
  const int dims[5][2] = {{2, 2}, {2, 3}, {3, 2}, {2, 2}, {3, 3}};
  int tested = 0;
  double worst = INFINITY;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int set = 0; set < 5; ++set) {
    const int da = dims[set][0], db = dims[set][1];
    const auto ec = testgen::random_case(da, db, 3, 0.05, set % 2 == 1, rng);
    const double lb = min_entropy_lower_bound(ec.cs, ec.km).lower_bound;
    int accepted = 0;
    for (int attempt = 0; attempt < 2000000 && accepted < 2000; ++attempt) {
      const DensityOp tau =
          testgen::with_marginal(random_density(da * db, rng), ec.cs.fixed_marginal.matrix(), da, db);
      const double s = std::pow(u(rng), 2);
      const CMat sigma = (1.0 - s) * ec.center.matrix() + s * tau.matrix();
      if (!testgen::feasible(ec.cs, sigma)) continue;
      ++accepted;
      worst = std::min(worst, testgen::objective_oracle(ec.km, sigma) - lb);
    }
    tested += accepted;
  }

  // Singleton: every two-qubit Pauli expectation pinned.
  const CMat paulis[4] = {CMat::Identity(2, 2), (CMat(2, 2) << 0, 1, 1, 0).finished(),
                          (CMat(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
                          (CMat(2, 2) << 1, 0, 0, -1).finished()};
  const KeyMapSpec qubit_km{KrausChannel::identity(4), testgen::register_pinching(2, 2)};
  const DensityOp point(CMat(0.8 * random_density(4, rng).matrix() + 0.05 * CMat::Identity(4, 4)));
  ConstraintSet single;
  single.dim_a = single.dim_b = 2;
  single.fixed_marginal = DensityOp(ptrace(point.matrix(), {2, 2}, {0}));
  std::vector<double> vals;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i || j) {
        single.observables.push_back(HermOp(kron(paulis[i], paulis[j])));
        vals.push_back(trace_prod(single.observables.back().matrix(), point.matrix()));
      }
  single.lower = single.upper = Eigen::Map<RVec>(vals.data(), static_cast<int>(vals.size()));
  const double single_err = std::abs(min_entropy_lower_bound(single, qubit_km).lower_bound - objective(point, qubit_km));

  double bb84_err = 0.0;
  for (double q : {0.05, 0.11}) {
    const CMat z0 = basis_projector(2, 0), z1 = basis_projector(2, 1);
    const CMat p = CMat::Constant(2, 2, 0.5), m = CMat::Identity(2, 2) - p;
    ConstraintSet cs;
    cs.dim_a = cs.dim_b = 2;
    cs.observables = {HermOp(CMat(kron(z0, z1) + kron(z1, z0))), HermOp(CMat(kron(p, m) + kron(m, p)))};
    cs.lower = cs.upper = RVec::Constant(2, q);
    cs.fixed_marginal = DensityOp(CMat(CMat::Identity(2, 2) / 2.0));
    bb84_err = std::max(bb84_err, std::abs(min_entropy_lower_bound(cs, qubit_km).lower_bound - (1 - oracle::h2(q))));
  }
  char buf[192];
  std::snprintf(buf, sizeof buf, "%d feasible states, min(objective - bound) = %.3g, singleton err %.2g, BB84 err %.2g",
                tested, worst, single_err, bb84_err);
  return {tested == 10000 && worst >= -1e-9 && single_err <= 1e-6 && bb84_err <= 1e-3, buf};
}

Verdict gradient_check() {
  Rng rng(8);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto ec = testgen::random_case(2, 3, 1, 0.1, trial % 2 == 0, rng);
    CMat dir = random_hermitian(6, rng).matrix();
    dir -= CMat::Identity(6, 6) * (dir.trace() / 6.0);
    const double h = 1e-5;
    const double fd = (objective(DensityOp(CMat(ec.center.matrix() + h * dir)), ec.km) -
                       objective(DensityOp(CMat(ec.center.matrix() - h * dir)), ec.km)) /
                      (2 * h);
    const double an = trace_prod(gradient(ec.center, ec.km).matrix(), dir);
    worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative deviation %.3g over 20 directions", worst);
  return {worst <= 1e-5, buf};
}

Verdict budget_round_trip() {
  const Epsilon target = Epsilon::from_value(1e-12);
  double worst = 0.0;
  for (double lg : {0.0, 10.0, 100.0, 1e4}) {
    const double back = achieved_log2_secrecy(epsilon_budget(target, lg), lg);
    worst = std::max(worst, std::abs(back - target.log2()) / std::abs(target.log2()));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative log2 deviation %.3g", worst);
  return {worst <= 1e-12, buf};
}

Verdict hoeffding_coverage() {
  std::mt19937_64 rng(10);
  const std::vector<double> p{0.3, 0.2, 0.15, 0.1, 0.1, 0.08, 0.05, 0.02};
  const int m = 1000, trials = 10000;
  const double eps = 0.05, mu = hoeffding_mu(m, static_cast<int>(p.size()), eps);
  std::discrete_distribution<int> draw(p.begin(), p.end());
  int covered = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> c(p.size(), 0);
    for (int i = 0; i < m; ++i) ++c[draw(rng)];
    bool ok = true;
    for (size_t j = 0; j < p.size(); ++j) ok &= std::abs(c[j] / double(m) - p[j]) <= mu;
    covered += ok;
  }
  const double freq = covered / double(trials), floor = 1 - eps - 3 * std::sqrt(eps * (1 - eps) / trials);
  char buf[96];
  std::snprintf(buf, sizeof buf, "coverage %.4f, required %.4f", freq, floor);
  return {freq >= floor, buf};
}

Verdict end_to_end() {
  SweepConfig cfg;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_sweep(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::map<std::string, std::map<double, double>> rate;
  int failed = 0;
  for (const auto& r : rows) {
    failed += r.status != "ok";
    rate[r.mode][r.distance_km] = r.key_rate_per_second;
  }
  const bool a = rate["iid"][0] > 0 && rate["ps_block"][0] > 0;
  bool b = true, c = true, d = true;
  for (double dist : cfg.distances_km) {
    b &= rate["iid"][dist] >= rate["ps_block"][dist] && rate["ps_block"][dist] >= rate["ps_generic"][dist] &&
         rate["ps_generic"][dist] >= rate["ps_decoy"][dist];
    if (dist >= 35) d &= rate["sequential_iid"][dist] == 0.0;
  }
  for (auto& [mode, curve] : rate) {
    double prev = INFINITY;
    for (auto& [dist, r] : curve) {
      c &= r <= prev;
      prev = r;
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu rows (%d failed) in %.1f s; (a) %s (b) %s (c) %s (d) %s; rates at 0 km: iid %.3g ps_block %.3g",
                rows.size(), failed, secs, a ? "ok" : "FAIL", b ? "ok" : "FAIL", c ? "ok" : "FAIL", d ? "ok" : "FAIL",
                rate["iid"][0], rate["ps_block"][0]);
  return {failed == 0 && a && b && c && d && secs < 900, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"effective dimensions", effective_dimensions},
      {"symmetric-subspace bound", symmetric_bound},
      {"squasher soundness", squasher_soundness},
      {"cross-click eigenvalue", crossclick},
      {"de Finetti backbone", de_finetti},
      {"decoy LP bracket", decoy_bracket},
      {"entropy-bound soundness", entropy_soundness},
      {"gradient correctness", gradient_check},
      {"epsilon budget round trip", budget_round_trip},
      {"Hoeffding coverage", hoeffding_coverage},
      {"end-to-end sweep", end_to_end},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
