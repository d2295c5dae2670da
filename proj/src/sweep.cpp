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

#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "decoy.hpp"
#include "error.hpp"
#include "finite_size.hpp"

namespace qkdps {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kIid: return "iid";
    case Mode::kSequentialIid: return "sequential_iid";
    case Mode::kPsBlock: return "ps_block";
    case Mode::kPsGeneric: return "ps_generic";
    case Mode::kPsDecoy: return "ps_decoy";
  }
  return "?";
}

const std::vector<Mode>& all_modes() {
  static const std::vector<Mode> modes{Mode::kIid, Mode::kSequentialIid, Mode::kPsBlock, Mode::kPsGeneric,
                                       Mode::kPsDecoy};
  return modes;
}

Mode parse_mode(const std::string& name) {
  for (Mode m : all_modes())
    if (name == mode_name(m)) return m;
  fail(ErrorCode::kParse, "unknown mode '" + name + "'");
}

BlockSpec mode_block_spec(Mode m) {
  const BlockSpec single_photon = protocol_block_spec();
  switch (m) {
    case Mode::kPsBlock: return single_photon;
    case Mode::kPsGeneric: return BlockSpec{{Block{2, 1}}, {Block{kBobDim, 1}}};
    case Mode::kPsDecoy: return shield_block_spec(ShieldBlocks{3, 8, kAliceDim}, single_photon.side_b);
    default: fail(ErrorCode::kInvalidArgument, std::string("mode ") + mode_name(m) + " has no block structure");
  }
}

SweepConfig::SweepConfig() {
  for (int d = 0; d <= 190; d += 10) distances_km.push_back(d);
  entropy.gap_target = 1e-7;
  entropy.relative_gap_target = 1e-4;
}

void SweepConfig::validate() const {
  protocol.validate();
  require(!modes.empty(), ErrorCode::kInvalidArgument, "sweep: no modes selected");
  require(!distances_km.empty(), ErrorCode::kInvalidArgument, "sweep: no distances selected");
  for (double d : distances_km)
    require(std::isfinite(d) && d >= 0.0, ErrorCode::kInvalidArgument, "sweep: distances must be nonnegative");
  require(eps_target_sec > 0.0 && eps_target_sec < 1.0 && eps_target_cor > 0.0 && eps_target_cor < 1.0,
          ErrorCode::kInvalidArgument, "sweep: epsilon targets must lie in (0,1)");
  require(f_ec >= 1.0, ErrorCode::kInvalidArgument, "sweep: f_ec must be >= 1");
  require(n_total >= 0.0, ErrorCode::kInvalidArgument, "sweep: n_total must be nonnegative");
  require(entropy.max_iterations > 0 && entropy.gap_target >= 0.0 && entropy.relative_gap_target >= 0.0,
          ErrorCode::kInvalidArgument, "sweep: bad entropy stopping rule");
  require(entropy.perturbation > 0.0 && entropy.perturbation < 1.0, ErrorCode::kInvalidArgument,
          "sweep: entropy perturbation must lie in (0,1)");
}

namespace {

struct Point {
  double distance = 0.0;
  Mode mode = Mode::kIid;
  double n = 0.0;
  double log2_g = 0.0;
  std::uint64_t x = 0;
  SecurityBudget budget;
  double mu = 0.0;
  double entropy = 0.0;
  std::string error;
};

template <class F>
void parallel_for(int count, int threads, F&& body) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(count, 1));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const double n_full = cfg.n_total > 0.0 ? cfg.n_total : unconstrained_n(cfg.protocol);

  std::vector<Point> points;
  for (double d : cfg.distances_km)
    for (Mode m : cfg.modes) {
      Point p;
      p.distance = d;
      p.mode = m;
      p.n = n_full;
      ThreeStateConfig pc = cfg.protocol;
      pc.distance_km = d;
      if (m == Mode::kSequentialIid) p.n = std::min(n_full, sequential_n(pc));
      if (m == Mode::kIid || m == Mode::kSequentialIid) {
        p.budget = SecurityBudget::iid(cfg.eps_target_sec, cfg.eps_target_cor);
      } else {
        p.x = effective_x(mode_block_spec(m));
        p.log2_g = log2_g_for(p.n, p.x);
        p.budget = SecurityBudget::postselection(cfg.eps_target_sec, cfg.eps_target_cor, p.log2_g);
      }
      p.mu = hoeffding_mu(cfg.protocol.test_fraction * p.n, kNumJointOutcomes, p.budget.eps_at);
      points.push_back(p);
    }

  // One entropy minimization per distinct (distance, mu).
  std::map<std::pair<double, double>, int> task_index;
  std::vector<std::pair<double, double>> tasks;
  for (const Point& p : points)
    if (task_index.emplace(std::make_pair(p.distance, p.mu), static_cast<int>(tasks.size())).second)
      tasks.emplace_back(p.distance, p.mu);
  std::vector<double> task_h(tasks.size(), 0.0);
  std::vector<std::string> task_err(tasks.size());

  parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int i) {
    try {
      ThreeStateConfig pc = cfg.protocol;
      pc.distance_km = tasks[i].first;
      const HonestStats hs = honest_stats(pc);
      const AliceSignals alice = alice_states(pc);
      ConstraintSet cs = build_constraint_set(hs.joint, tasks[i].second, protocol_observables(pc),
                                              source_marginal(alice.vectors, alice.probs));
      cs.b_blocks = bob_blocks();
      task_h[i] = min_entropy_lower_bound(cs, keymap(pc), cfg.entropy).lower_bound;
    } catch (const std::exception& e) {
      task_err[i] = e.what();
    }
  });

  for (Point& p : points) {
    const int ti = task_index.at({p.distance, p.mu});
    p.error = task_err[ti];
    // A set with a wider interval contains this one, so its certified bound
    // is also valid here.
    p.entropy = task_h[ti];
    for (size_t j = 0; j < tasks.size(); ++j)
      if (tasks[j].first == p.distance && tasks[j].second >= p.mu && task_err[j].empty())
        p.entropy = std::max(p.entropy, task_h[j]);
  }

  std::vector<SweepRow> rows;
  for (const Point& p : points) {
    SweepRow r;
    r.distance_km = p.distance;
    r.mode = mode_name(p.mode);
    r.n_used = p.n;
    r.x_used = static_cast<double>(p.x);
    r.log2_g = p.log2_g;
    try {
      if (!p.error.empty()) fail(ErrorCode::kNumerical, p.error);
      ThreeStateConfig pc = cfg.protocol;
      pc.distance_km = p.distance;
      ProtocolCounts counts{p.n, cfg.protocol.test_fraction * p.n, 2};
      counts.validate();
      const double alpha = renyi_alpha(counts.n_k(), p.budget.eps_pa, counts.d_z);
      r.entropy_lb_bits_per_round = p.entropy;
      r.b_stat = b_stat(p.entropy, counts, alpha);
      r.leak = leak_bits(honest_stats(pc).key_table, counts, cfg.f_ec);
      r.theta = theta(p.budget.eps_pa, p.budget.eps_ev, alpha);
      double l = variable_key_length(r.b_stat, r.leak, r.theta);
      if (p.x > 0) {
        const KeyLengthResult lifted = variable_lift(l, p.n, mode_block_spec(p.mode), p.budget.eps_target_sec);
        l = lifted.length_bits;
        r.secrecy_eps = lifted.secrecy_eps;
      } else {
        r.secrecy_eps = p.budget.eps_target_sec.value();
      }
      r.key_length_bits = l;
      r.key_rate_per_second = l / cfg.protocol.duration_s;
    } catch (const std::exception& e) {
      r.status = std::string("error: ") + e.what();
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qkdps
