// Copyright 2026 The coexist Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace coexist;
using coexist::testing::diff;
using coexist::testing::random_effect;

namespace {

HermitianMatrix diag2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return HermitianMatrix::diagonal(v);
}

}  // namespace

TEST_CASE("project_shifted_cone") {
  std::mt19937_64 rng(1);
  const Effect e = random_effect(3, rng);
  CHECK(diff(project_shifted_cone(e.matrix(), HermitianMatrix::zero(3), ConeSide::Lower),
             e.matrix()) < 1e-14);
  CHECK(diff(project_shifted_cone(e.matrix(), HermitianMatrix::identity(3), ConeSide::Upper),
             e.matrix()) < 1e-14);
  CHECK(diff(project_shifted_cone(diag2(-1, 1), HermitianMatrix::zero(2), ConeSide::Lower),
             diag2(0, 1)) < 1e-15);
  CHECK(diff(project_shifted_cone(diag2(-1, 2), diag2(0.5, 0.5), ConeSide::Upper),
             diag2(-1, 0.5)) < 1e-15);

  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Index d = 2 + rep % 6;
    const HermitianMatrix x = testing::random_hermitian(d, rng);
    const HermitianMatrix b = testing::random_hermitian(d, rng);
    for (ConeSide side : {ConeSide::Lower, ConeSide::Upper}) {
      const HermitianMatrix y = project_shifted_cone(x, b, side);
      CHECK(diff(project_shifted_cone(y, b, side), y) <= 1e-12 * std::max(1.0, y.frobenius_norm()));
      const HermitianMatrix slack = side == ConeSide::Lower ? y - b : b - y;
      CHECK(min_eigenvalue(slack) >= -1e-12 * std::max(1.0, slack.frobenius_norm()));
      // nearest point: any other feasible point is no closer
      const HermitianMatrix other = side == ConeSide::Lower
                                        ? b + HermitianMatrix::identity(d) * 0.1 + coexist::abs(x - b)
                                        : b - HermitianMatrix::identity(d) * 0.1 - coexist::abs(b - x);
      CHECK(diff(x, y) <= diff(x, other) + 1e-12);
    }
  }
}

TEST_CASE("violation") {
  std::mt19937_64 rng(2);
  const Effect e = random_effect(2, rng);
  const Effect f = validate_effect(e.matrix() + e.complement_matrix() * 0.5);
  CHECK(violation(e, f, e.matrix()) <= 1e-15);

  const Effect x = qubit_effect(1, Bloch(0.5, 0, 0)), y = qubit_effect(1, Bloch(0, 0.5, 0));
  CHECK(violation(x, y, x.matrix()) > 0.1);

  for (int rep = 0; rep < 50; ++rep) {
    const Effect a = random_effect(2 + rep % 3, rng), b = random_effect(2 + rep % 3, rng);
    const auto v = check_ginf(a, b);
    if (v.holds()) CHECK(violation(a, b, std::get<SingleGWitness>(*v.witness).g) <= 1e-10);
  }
}

TEST_CASE("decide_pair examples") {
  std::mt19937_64 rng(3);
  {
    const Effect e = random_effect(3, rng);
    const Effect f = validate_effect(e.matrix() + e.complement_matrix() * 0.2);
    const OracleOutcome o = decide_pair(e, f);
    CHECK(o.kind == OracleKind::Feasible);
    CHECK(verify_witness(e, f, SingleGWitness{o.witness_g}, 1e-6).ok);
  }
  {
    const auto [e, f] = liu_pair(2.0 / 3, 2.0 / 3, 0.75);
    const OracleOutcome o = decide_pair(e, f);
    CHECK(o.kind == OracleKind::Feasible);
    CHECK(o.residual <= 1e-7);
    CHECK(verify_witness(e, f, SingleGWitness{o.witness_g}, 1e-6).ok);
    CHECK(o.monotone);
  }
  {
    const Effect e = qubit_effect(1, Bloch(0.9, 0, 0)), f = qubit_effect(1, Bloch(0, 0.9, 0));
    const OracleOutcome o = decide_pair(e, f);
    CHECK(o.kind == OracleKind::LikelyInfeasible);
    CHECK(o.residual >= 1e-4);
  }
  {
    const Effect e = random_effect(2, rng);
    OracleParams p;
    p.feas_tol = 1e-3;
    p.infeas_tol = 1e-4;
    CHECK_THROWS_AS(decide_pair(e, e, p), Error);
    p = {};
    p.restarts = 0;
    CHECK_THROWS_AS(decide_pair(e, e, p), Error);
    CHECK_THROWS_AS(decide_pair(e, random_effect(3, rng)), Error);
  }
}

TEST_CASE("decide_pair is deterministic and prefers earlier restarts on ties") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const Effect e = random_effect(3, rng), f = random_effect(3, rng);
    const OracleOutcome a = decide_pair(e, f), b = decide_pair(e, f);
    CHECK(a.kind == b.kind);
    CHECK(a.residual == b.residual);
    CHECK(a.restart == b.restart);
    CHECK(a.witness_g.matrix() == b.witness_g.matrix());
  }
  // zero start is already feasible for a pair with E + F <= I
  const Effect e = validate_effect(HermitianMatrix::identity(2) * 0.3);
  const OracleOutcome o = decide_pair(e, e);
  CHECK(o.kind == OracleKind::Feasible);
  CHECK(o.restart == 0);
}

TEST_CASE("oracle agrees with the exact unbiased qubit criterion") {
  std::mt19937_64 rng(5);
  int agree = 0, band = 0, feasible = 0, monotone_feasible = 0, infeasible_nonmono = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const Bloch a = testing::random_bloch(rng), b = testing::random_bloch(rng);
    const ExactCriterion exact = busch_criterion(a, b);
    const OracleOutcome o = decide_pair(qubit_effect(1, a), qubit_effect(1, b));
    if (o.kind == OracleKind::Feasible) {
      ++feasible;
      if (o.monotone) ++monotone_feasible;
    } else if (!o.monotone) {
      ++infeasible_nonmono;
    }
    if (std::abs(exact.margin) <= 1e-3) {
      ++band;
      continue;
    }
    const bool ok = exact.coexistent ? o.kind == OracleKind::Feasible
                                     : o.kind == OracleKind::LikelyInfeasible;
    CHECK(ok);
    if (ok) ++agree;
  }
  MESSAGE("agree " << agree << ", in band " << band);
  MESSAGE("residual non-monotone on " << infeasible_nonmono << " non-feasible runs");
  CHECK(agree + band == 400);
  CHECK(monotone_feasible == feasible);

  // close to the boundary on both sides
  const double s = std::sqrt(0.5);
  for (double m : {-2e-3, 2e-3}) {
    // orthogonal pair of equal norm r: margin 2 - 2 sqrt(2) r
    const double r = s * (1 - m / 2);
    const OracleOutcome o = decide_pair(qubit_effect(1, Bloch(r, 0, 0)), qubit_effect(1, Bloch(0, r, 0)));
    CHECK(o.kind == (m > 0 ? OracleKind::Feasible : OracleKind::LikelyInfeasible));
  }
}

TEST_CASE("oracle never rejects a pair certified by a condition") {
  std::mt19937_64 rng(6);
  int certified = 0;
  for (int rep = 0; rep < 150; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const Effect e = random_effect(d, rng);
    const Effect f = rep % 2 ? random_effect(d, rng)
                             : noisy_pair(e, random_effect(d, rng), 0.5).second;
    const PairReport r = full_report(e, f, true);
    if (!r.any_holds()) continue;
    ++certified;
    CHECK(r.oracle->kind != OracleKind::LikelyInfeasible);
    if (r.oracle->kind == OracleKind::Feasible)
      CHECK(verify_witness(e, f, SingleGWitness{r.oracle->witness_g}, 1e-6).ok);
  }
  CHECK(certified > 50);
}

TEST_CASE("rank-deficient pairs") {
  std::mt19937_64 rng(31);
  using coexist::testing::random_full_effect;
  using coexist::testing::random_unit;
  int checked = 0;
  for (int rep = 0; rep < 90; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const HermitianMatrix psi = HermitianMatrix::outer(random_unit(d, rng));
    const Effect f = random_full_effect(d, rng);
    // thin on the range side, then on the complement side
    const Effect e = rep % 2 ? validate_effect(psi * 0.7)
                             : validate_effect(HermitianMatrix::identity(d) - psi * 0.7);
    const PairReport r = full_report(e, f, true);
    if (!r.any_holds()) continue;
    ++checked;
    CHECK(r.oracle->kind == OracleKind::Feasible);
    CHECK(verify_witness(e, f, SingleGWitness{r.oracle->witness_g}, 1e-6).ok);
  }
  CHECK(checked > 30);

  // orthogonal rank-one projections: ran E ∩ ran F = {0}, only G = 0 is left
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(3), b = Eigen::VectorXcd::Zero(3);
  a(0) = 1;
  b(1) = 1;
  const EffectPair p = rank_one_pair(a, b, 1.0, 1.0);
  const OracleOutcome o = decide_pair(p.first, p.second);
  CHECK(o.kind == OracleKind::Feasible);
  CHECK(o.witness_g.frobenius_norm() < 1e-12);

  // E = F = a projection: G = E is the only candidate
  const Effect q = validate_effect(HermitianMatrix::outer(a));
  const OracleOutcome same = decide_pair(q, q);
  CHECK(same.kind == OracleKind::Feasible);
  CHECK(diff(same.witness_g, q.matrix()) < 1e-9);

  // non-orthogonal projections are incompatible
  Eigen::VectorXcd c = (a + b) / std::sqrt(2.0);
  const OracleOutcome bad = decide_pair(q, validate_effect(HermitianMatrix::outer(c)));
  CHECK(bad.kind == OracleKind::LikelyInfeasible);
}
