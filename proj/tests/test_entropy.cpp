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

#include <cmath>

#include "doctest.h"
#include "entropy.hpp"
#include "entropy_gen.hpp"
#include "error.hpp"
#include "oracles.hpp"

using namespace qkdps;

namespace {

CMat pauli(int i) {
  CMat p(2, 2);
  switch (i) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1;
  }
  return p;
}

KeyMapSpec qubit_key_map() { return KeyMapSpec{KrausChannel::identity(4), testgen::register_pinching(2, 2)}; }

// Bell state through independent bit and phase flips, each with probability q.
DensityOp flipped_bell(double q) {
  CVec phi = CVec::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  CMat rho = phi * phi.adjoint();
  auto flip = [&](const CMat& r, const CMat& u) {
    const CMat k = kron(CMat::Identity(2, 2), u);
    return CMat((1.0 - q) * r + q * k * r * k.adjoint());
  };
  rho = flip(rho, pauli(1));
  rho = flip(rho, pauli(3));
  return DensityOp(rho);
}

ConstraintSet bb84_set(double q) {
  CMat z0 = basis_projector(2, 0), z1 = basis_projector(2, 1);
  CMat p = CMat::Constant(2, 2, 0.5), m = CMat::Identity(2, 2) - p;
  ConstraintSet cs;
  cs.dim_a = cs.dim_b = 2;
  cs.observables = {HermOp(CMat(kron(z0, z1) + kron(z1, z0))), HermOp(CMat(kron(p, m) + kron(m, p)))};
  cs.lower = cs.upper = RVec::Constant(2, q);
  cs.fixed_marginal = DensityOp(CMat(CMat::Identity(2, 2) / 2.0));
  return cs;
}

double fidelity(const CMat& a, const CMat& b) {
  const CMat sa = mat_sqrt_psd(a);
  const CMat m = sa * b * sa;
  return mat_sqrt_psd(0.5 * (m + m.adjoint())).trace().real();
}

}  // namespace

TEST_CASE("objective special cases") {
  Rng rng(127);
  const DensityOp rb = random_density(2, rng);
  const KeyMapSpec km = qubit_key_map();
  const DensityOp uniform(kron(CMat::Identity(2, 2) / 2.0, rb.matrix()));
  CHECK(std::abs(objective(uniform, km)) < 1e-9);
  const DensityOp plus(kron(CMat::Constant(2, 2, 0.5), rb.matrix()));
  CHECK(objective(plus, km) == doctest::Approx(1.0).epsilon(1e-10));
  const DensityOp fixed(kron(basis_projector(2, 0), rb.matrix()));
  CHECK(std::abs(objective(fixed, km)) < 1e-9);

  for (double q : {0.05, 0.11}) {
    const DensityOp rho = flipped_bell(q);
    CHECK(std::abs(objective(rho, km) - (1.0 - oracle::h2(q))) < 1e-6);
    CHECK(std::abs(objective(rho, km) - testgen::objective_oracle(km, rho.matrix())) < 1e-9);
  }

  // A key map that discards everything.
  const KeyMapSpec none{KrausChannel(4, 4, {CMat::Zero(4, 4)}, TraceKind::kNonincreasing), km.z_pinching};
  const ObjectiveValue ov = objective_value(uniform, none);
  CHECK(ov.zero_trace);
  CHECK(ov.bits == 0.0);
}

TEST_CASE("objective against entropy oracle") {
  Rng rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ec = testgen::random_case(2, 3, 1, 0.1, trial % 2 == 0, rng);
    const DensityOp s = random_density(6, rng);
    CHECK(std::abs(objective(s, ec.km) - testgen::objective_oracle(ec.km, s.matrix())) < 1e-9);
  }
}

TEST_CASE("gradient matches central differences") {
  Rng rng(137);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ec = testgen::random_case(2, 3, 1, 0.1, trial % 2 == 0, rng);
    const DensityOp s = ec.center;
    const HermOp g = gradient(s, ec.km);
    CMat dir = random_hermitian(6, rng).matrix();
    dir -= CMat::Identity(6, 6) * (dir.trace() / 6.0);
    const double h = 1e-5;
    const double fd = (objective(DensityOp(CMat(s.matrix() + h * dir)), ec.km) -
                       objective(DensityOp(CMat(s.matrix() - h * dir)), ec.km)) /
                      (2 * h);
    const double an = trace_prod(g.matrix(), dir);
    CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(an)));
  }
}

TEST_CASE("gradient vanishes at the maximally mixed state") {
  const HermOp g = gradient(DensityOp(CMat(CMat::Identity(4, 4) / 4.0)), qubit_key_map());
  CMat traceless = g.matrix() - CMat::Identity(4, 4) * (g.matrix().trace() / 4.0);
  CHECK(traceless.norm() < 1e-6);
}

TEST_CASE("objective convexity") {
  Rng rng(139);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ec = testgen::random_case(2, 2, 1, 0.1, trial % 2 == 0, rng);
    const DensityOp s1 = random_density(4, rng), s2 = random_density(4, rng);
    const double lin = objective(s1, ec.km) + trace_prod(gradient(s1, ec.km).matrix(), s2.matrix() - s1.matrix());
    CHECK(objective(s2, ec.km) >= lin - 1e-8);
  }
}

TEST_CASE("linear minimum without constraints is the spectral minimum") {
  Rng rng(149);
  for (int trial = 0; trial < 10; ++trial) {
    const HermOp w = random_hermitian(4, rng);
    ConstraintSet cs;
    cs.dim_a = 1;
    cs.dim_b = 4;
    cs.fixed_marginal = DensityOp(CMat(CMat::Identity(1, 1)));
    const LinearMin lm = sdp_linear_min(w, cs);
    CHECK(lm.value == doctest::Approx(lambda_min(w.matrix())).epsilon(1e-7));
    CHECK(lm.dual_bound <= lm.value + 1e-9);
  }
}

TEST_CASE("linear minimum with a fixed marginal") {
  // min -<psi|sigma|psi> over extensions of rho_A is minus the squared
  // fidelity between rho_A and psi_A.
  Rng rng(151);
  for (int trial = 0; trial < 20; ++trial) {
    const CVec psi = random_vector(4, rng);
    const DensityOp rho_a = random_density(2, rng);
    ConstraintSet cs;
    cs.dim_a = cs.dim_b = 2;
    cs.fixed_marginal = rho_a;
    const HermOp w = HermOp::hermitize(-psi * psi.adjoint());
    const LinearMin lm = sdp_linear_min(w, cs);
    const double f = fidelity(rho_a.matrix(), ptrace(CMat(psi * psi.adjoint()), {2, 2}, {0}));
    CHECK(std::abs(lm.value + f * f) < 1e-7);
    CHECK(lm.dual_bound <= lm.value + 1e-9);
    CHECK(lm.value - lm.dual_bound < 1e-7);
    CHECK(max_abs(ptrace(lm.argument.matrix(), {2, 2}, {0}) - rho_a.matrix()) < 1e-8);
  }
}

TEST_CASE("BB84 bound") {
  for (double q : {0.05, 0.11}) {
    const EntropyBound b = min_entropy_lower_bound(bb84_set(q), qubit_key_map());
    CHECK(std::abs(b.lower_bound - (1.0 - oracle::h2(q))) < 1e-3);
    CHECK(b.lower_bound <= b.feasible_value + 1e-9);
    CHECK(b.gap >= -1e-9);
  }
}

TEST_CASE("singleton set") {
  Rng rng(157);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityOp s = DensityOp(CMat(0.8 * random_density(4, rng).matrix() + 0.05 * CMat::Identity(4, 4)));
    ConstraintSet cs;
    cs.dim_a = cs.dim_b = 2;
    cs.fixed_marginal = DensityOp(ptrace(s.matrix(), {2, 2}, {0}));
    std::vector<double> vals;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == 0 && j == 0) continue;
        const HermOp o(kron(pauli(i), pauli(j)));
        cs.observables.push_back(o);
        vals.push_back(trace_prod(o.matrix(), s.matrix()));
      }
    cs.lower = cs.upper = Eigen::Map<RVec>(vals.data(), static_cast<int>(vals.size()));
    const EntropyBound b = min_entropy_lower_bound(cs, qubit_key_map());
    CHECK(std::abs(b.lower_bound - objective(s, qubit_key_map())) < 1e-6);
  }
}

TEST_CASE("trivial key register gives zero") {
  const KeyMapSpec km{KrausChannel::identity(4), {HermOp::identity(4)}};
  const EntropyBound b = min_entropy_lower_bound(bb84_set(0.05), km);
  CHECK(std::abs(b.lower_bound) < 1e-9);
}

TEST_CASE("soundness on random feasible states") {
  Rng rng(163);
  const int dims[5][2] = {{2, 2}, {2, 3}, {3, 2}, {2, 2}, {3, 3}};
  for (int set = 0; set < 5; ++set) {
    const int da = dims[set][0], db = dims[set][1];
    const auto ec = testgen::random_case(da, db, 3, 0.05, set % 2 == 1, rng);
    const EntropyBound b = min_entropy_lower_bound(ec.cs, ec.km);
    CHECK(b.lower_bound <= b.feasible_value + 1e-9);
    int accepted = 0;
    double worst = INFINITY;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 200000 && accepted < 400; ++attempt) {
      const DensityOp tau =
          testgen::with_marginal(random_density(da * db, rng), ec.cs.fixed_marginal.matrix(), da, db);
      const double s = std::pow(u(rng), 2);
      const CMat sigma = (1.0 - s) * ec.center.matrix() + s * tau.matrix();
      if (!testgen::feasible(ec.cs, sigma)) continue;
      ++accepted;
      worst = std::min(worst, testgen::objective_oracle(ec.km, sigma) - b.lower_bound);
    }
    CHECK(accepted == 400);
    CHECK(worst >= -1e-9);
  }
}

TEST_CASE("tightening intervals never lowers the bound") {
  Rng rng(167);
  for (int trial = 0; trial < 4; ++trial) {
    auto ec = testgen::random_case(2, 2, 3, 0.1, trial % 2 == 1, rng);
    const double loose = min_entropy_lower_bound(ec.cs, ec.km).lower_bound;
    for (int k = 0; k < 3; ++k) {
      const double mid = 0.5 * (ec.cs.lower(k) + ec.cs.upper(k));
      ec.cs.lower(k) = 0.5 * (ec.cs.lower(k) + mid);
      ec.cs.upper(k) = 0.5 * (ec.cs.upper(k) + mid);
    }
    const double tight = min_entropy_lower_bound(ec.cs, ec.km).lower_bound;
    CHECK(tight >= loose - 1e-6);
  }
}

TEST_CASE("infeasible set is reported") {
  ConstraintSet cs = bb84_set(0.05);
  cs.observables.push_back(HermOp::identity(4));
  cs.lower.conservativeResize(3);
  cs.upper.conservativeResize(3);
  cs.lower(2) = cs.upper(2) = 0.5;
  CHECK_THROWS_AS(min_entropy_lower_bound(cs, qubit_key_map()), Error);
}

TEST_CASE("conditional Shannon entropy") {
  CHECK(conditional_shannon({{0, 0, 0, 0.5}, {1, 1, 0, 0.5}}) == doctest::Approx(0.0));
  CHECK(conditional_shannon({{0, 0, 0, 0.25}, {1, 0, 0, 0.25}, {0, 1, 0, 0.25}, {1, 1, 0, 0.25}}) ==
        doctest::Approx(1.0));
  // p(z,y): (0,0)=0.4 (1,0)=0.1 (0,1)=0.2 (1,1)=0.3
  const double expect = 0.5 * oracle::h2(0.8) + 0.5 * oracle::h2(0.4);
  CHECK(conditional_shannon({{0, 0, 0, 0.4}, {1, 0, 0, 0.1}, {0, 1, 0, 0.2}, {1, 1, 0, 0.3}}) ==
        doctest::Approx(expect));
  CHECK(conditional_shannon({{0, 0, 0, 0.4}, {1, 0, 1, 0.1}, {0, 1, 0, 0.2}, {1, 1, 1, 0.3}}) ==
        doctest::Approx(0.0));
}
