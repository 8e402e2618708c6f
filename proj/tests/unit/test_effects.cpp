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
using coexist::testing::random_full_effect;
using coexist::testing::random_unit;

namespace {

HermitianMatrix diag(std::initializer_list<double> v) {
  RealVector r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r(i++) = x;
  return HermitianMatrix::diagonal(r);
}

Effect eff(std::initializer_list<double> v) { return validate_effect(diag(v)); }

// Projector onto the span of k random vectors.
HermitianMatrix random_projection(Eigen::Index d, Eigen::Index k, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<GeneralMatrix> qr(testing::random_general(d, rng));
  const GeneralMatrix q = GeneralMatrix(qr.householderQ()).leftCols(k);
  return HermitianMatrix(GeneralMatrix(q * q.adjoint()));
}

// Shorted operator of an invertible E to ran P: (P E^-1 P)^+, computed with
// Eigen's own pseudo-inverse.
HermitianMatrix shorted_reference(const Effect& e, const HermitianMatrix& p) {
  const GeneralMatrix inner = p.matrix() * e.matrix().matrix().inverse() * p.matrix();
  return HermitianMatrix(GeneralMatrix(inner.completeOrthogonalDecomposition().pseudoInverse()));
}

// Largest c with c |psi><psi| <= E, by bisection.
double bisect_rank_one(const Effect& e, const Eigen::VectorXcd& psi) {
  double lo = 0.0, hi = 1.0;
  const HermitianMatrix p = HermitianMatrix::outer(psi);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_eigenvalue(e.matrix() - p * mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("validate_effect") {
  CHECK_NOTHROW(validate_effect(HermitianMatrix::identity(3) * 0.5));
  try {
    validate_effect(diag({1.5, 0.0}));
    FAIL("expected SpectrumOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpectrumOutOfRange);
    REQUIRE(e.witness());
    CHECK(*e.witness() == doctest::Approx(1.5));
  }
  try {
    validate_effect(diag({-0.25, 0.5}));
    FAIL("expected SpectrumOutOfRange");
  } catch (const Error& e) {
    CHECK(*e.witness() == doctest::Approx(-0.25));
  }
  const Effect boundary = qubit_effect(1.0, Bloch(0.6, 0.0, 0.8));
  CHECK(min_eigenvalue(boundary.matrix()) == doctest::Approx(0.0).epsilon(1e-15));
  // no clamping
  const HermitianMatrix slight = diag({1.0 + 5e-10, -5e-10});
  CHECK(validate_effect(slight).matrix().matrix() == slight.matrix());
}

TEST_CASE("complement") {
  CHECK(diff(complement(validate_effect(HermitianMatrix::identity(2))).matrix(),
             HermitianMatrix::zero(2)) == 0.0);
  const Effect half = validate_effect(HermitianMatrix::identity(2) * 0.5);
  CHECK(diff(complement(half).matrix(), half.matrix()) == 0.0);
  const Bloch v(0.1, -0.3, 0.2);
  CHECK(diff(complement(qubit_effect(0.7, v)).matrix(), qubit_effect(1.3, -v).matrix()) < 1e-15);

  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    const Effect e = random_effect(2 + rep % 5, rng);
    const Effect cc = complement(complement(e));
    CHECK(cc.matrix().matrix() == e.matrix().matrix());
    CHECK(cc.complement_matrix().matrix() == e.complement_matrix().matrix());
  }
}

TEST_CASE("leq") {
  std::mt19937_64 rng(2);
  const Effect id = validate_effect(HermitianMatrix::identity(3));
  for (int rep = 0; rep < 20; ++rep) CHECK(leq(random_effect(3, rng), id));

  const Effect half = eff({0.5, 0.5});
  const Effect p0 = eff({1.0, 0.0});
  CHECK_FALSE(leq(half, p0));
  CHECK_FALSE(leq(p0, half));
  CHECK_FALSE(comparable(half, p0));

  for (double t : {0.1, 0.3, 0.5}) {
    const auto [e2, f2] = noisy_pair(random_effect(3, rng), random_effect(3, rng), t);
    CHECK(leq(complement(f2), e2));
  }
  CHECK_THROWS_AS(leq(eff({0.5}), eff({0.5, 0.5})), Error);
}

TEST_CASE("jordan_product") {
  const Effect e = eff({0.2, 0.7, 1.0});
  const Effect f = eff({0.5, 0.1, 0.3});
  CHECK(diff(jordan_product(e, f), diag({0.1, 0.07, 0.3})) < 1e-16);

  for (double r : {0.25, 0.5, 0.75}) {
    Eigen::VectorXcd psi(2), phi(2);
    psi << 1, 0;
    phi << r, std::sqrt(1 - r * r);
    const auto [a, b] = rank_one_pair(psi, phi, 0.5, 0.5);
    const auto eig = eigh(jordan_product(a, b));
    CHECK(eig.values(0) == doctest::Approx(r * (r - 1) / 8).epsilon(1e-12));
    CHECK(eig.values(1) == doctest::Approx(r * (1 + r) / 8).epsilon(1e-12));
  }

  const auto [me, mf] = mub_pair({2, std::sqrt(0.5)});
  CHECK(std::abs(min_eigenvalue(jordan_product(me, mf))) < 1e-9);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Index d = 2 + rep % 6;
    const Effect x = random_effect(d, rng), y = random_effect(d, rng), z = random_effect(d, rng);
    CHECK(diff(jordan_product(x, y), jordan_product(y, x)) <= 1e-12);
    // linearity in the first slot: x/2 + z/2 is an effect
    const Effect mix = validate_effect(x.matrix() * 0.5 + z.matrix() * 0.5);
    CHECK(diff(jordan_product(mix, y),
               jordan_product(x, y) * 0.5 + jordan_product(z, y) * 0.5) <= 1e-12);
    // marginals
    const Effect xc = complement(x), yc = complement(y);
    CHECK(diff(jordan_product(x, y) + jordan_product(x, yc), x.matrix()) <= 1e-12);
    CHECK(diff(jordan_product(x, y) + jordan_product(xc, y), y.matrix()) <= 1e-12);
    CHECK(diff(jordan_product(x, y) + jordan_product(x, yc) + jordan_product(xc, y) +
                   jordan_product(xc, yc),
               HermitianMatrix::identity(d)) <= 1e-12);
  }
}

TEST_CASE("generalized_infimum") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 300; ++rep) {
    const Eigen::Index d = 2 + rep % 7;
    const Effect e = random_effect(d, rng), f = random_effect(d, rng);
    const HermitianMatrix m = generalized_infimum(e, f);
    CHECK(diff(m, generalized_infimum(f, e)) <= 1e-12);
    CHECK(min_eigenvalue(e.matrix() - m) >= -1e-10);
    CHECK(min_eigenvalue(f.matrix() - m) >= -1e-10);
    CHECK(diff(generalized_infimum(e, e), e.matrix()) <= 1e-14);
    // E <= E + (I - E)/2 gives E ^ F = E
    const Effect above = validate_effect(e.matrix() + e.complement_matrix() * 0.5);
    CHECK(diff(generalized_infimum(e, above), e.matrix()) <= 1e-12);
  }
  for (int rep = 0; rep < 100; ++rep) {
    const Bloch a = testing::random_bloch(rng), b = testing::random_bloch(rng);
    const double expected = 0.25 * (2 - (a - b).norm() - (a + b).norm());
    CHECK(min_eigenvalue(generalized_infimum(qubit_effect(1, a), qubit_effect(1, b))) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("range and intersection projectors") {
  CHECK(diff(range_projector(eff({0.5, 0.0})), diag({1, 0})) == 0.0);
  std::mt19937_64 rng(5);
  const Effect inv = random_full_effect(3, rng);
  CHECK(diff(range_projector(inv), HermitianMatrix::identity(3)) < 1e-12);
  const Eigen::VectorXcd psi = random_unit(3, rng);
  CHECK(diff(range_projector(validate_effect(HermitianMatrix::outer(psi) * 0.4)),
             HermitianMatrix::outer(psi)) < 1e-12);

  const HermitianMatrix p = random_projection(4, 2, rng);
  CHECK(diff(intersection_projector(p, p), p) < 1e-12);
  Eigen::VectorXcd zero(2), plus(2);
  zero << 1, 0;
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  CHECK(intersection_projector(HermitianMatrix::outer(zero), HermitianMatrix::outer(plus))
            .frobenius_norm() == 0.0);
  // psi in ran F for invertible F
  CHECK(diff(intersection_projector(HermitianMatrix::outer(psi), range_projector(inv)),
             HermitianMatrix::outer(psi)) < 1e-12);
  // two planes in C^3 meet in a line
  const HermitianMatrix a = diag({1, 1, 0});
  HermitianMatrix b = HermitianMatrix::identity(3) - HermitianMatrix::outer(random_unit(3, rng));
  const HermitianMatrix line = intersection_projector(a, b);
  CHECK(line.trace() == doctest::Approx(1.0));
  CHECK((a.matrix() * line.matrix() - line.matrix()).norm() < 1e-9);
  CHECK((b.matrix() * line.matrix() - line.matrix()).norm() < 1e-9);

  try {
    intersection_projector(diag({0.5, 1, 0}), a);
    FAIL("expected NotAProjection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAProjection);
  }
}

TEST_CASE("infimum with a projection is the shorted operator") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 40; ++rep) {
    const Effect e = random_effect(2 + rep % 3, rng);
    CHECK(diff(infimum_with_projection(e, HermitianMatrix::identity(e.dim())).matrix(),
               e.matrix()) < 1e-12);
  }

  // commuting: P E P
  {
    const Effect e = eff({0.3, 0.8, 0.1, 0.6});
    const HermitianMatrix p = diag({1, 0, 1, 0});
    CHECK(diff(infimum_with_projection(e, p).matrix(), diag({0.3, 0, 0.1, 0})) < 1e-14);
  }

  // rank-one P against the bisection oracle
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const Effect e = random_full_effect(d, rng);
    const Eigen::VectorXcd psi = random_unit(d, rng);
    const Complex q = psi.dot(e.matrix().matrix().inverse() * psi);
    const double c = 1.0 / q.real();
    const Effect meet = infimum_with_projection(e, HermitianMatrix::outer(psi));
    CHECK(diff(meet.matrix(), HermitianMatrix::outer(psi) * c) <= 1e-9);
    CHECK(c == doctest::Approx(bisect_rank_one(e, psi)).epsilon(1e-9));
  }

  // brute force over d <= 4 and every rank of P
  for (int rep = 0; rep < 120; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const Eigen::Index k = 1 + rep % d;
    const Effect e = random_full_effect(d, rng);
    const HermitianMatrix p = random_projection(d, k, rng);
    const HermitianMatrix s = infimum_with_projection(e, p).matrix();
    CHECK(min_eigenvalue(e.matrix() - s) >= -1e-10);
    CHECK(min_eigenvalue(p - s) >= -1e-10);
    CHECK(min_eigenvalue(s) >= -1e-10);
    CHECK((p.matrix() * s.matrix() * p.matrix() - s.matrix()).norm() <= 1e-10);
    CHECK(diff(s, shorted_reference(e, p)) <= 1e-8);
  }
}

TEST_CASE("shorted coefficient versus the closed-form claim for a rank-one range") {
  // E = e|psi><psi| with invertible F: P_{E,F} = |psi><psi|. The shorted value
  // of F to that line is 1/<psi|F^-1 psi>; <psi|F psi> is never smaller and
  // differs unless psi is an eigenvector of F.
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Effect f = random_full_effect(3, rng);
    const Eigen::VectorXcd psi = random_unit(3, rng);
    const Effect e = validate_effect(HermitianMatrix::outer(psi) * 0.5);
    const InfimumResult r = infimum(e, f);
    const double shorted = 1.0 / psi.dot(f.matrix().matrix().inverse() * psi).real();
    const double quadratic = psi.dot(f.matrix().matrix() * psi).real();
    CHECK(diff(r.common_range, HermitianMatrix::outer(psi)) < 1e-9);
    CHECK(diff(r.f_meet_p.matrix(), HermitianMatrix::outer(psi) * shorted) < 1e-9);
    CHECK(quadratic >= shorted - 1e-12);
    // the quadratic-form coefficient is not below F in general
    const double below = min_eigenvalue(f.matrix() - HermitianMatrix::outer(psi) * quadratic);
    if (rep == 0) CHECK(below < 0.0);
    worst = std::max(worst, quadratic - shorted);
    MESSAGE("shorted " << shorted << "  <psi|F psi> " << quadratic
                       << "  min eig of F - <psi|F psi>|psi><psi| " << below);
  }
  MESSAGE("largest coefficient divergence " << worst);
}

TEST_CASE("infimum") {
  std::mt19937_64 rng(8);
  {
    const Effect e = random_effect(3, rng);
    const Effect f = validate_effect(e.matrix() + e.complement_matrix() * 0.3);
    const InfimumResult r = infimum(e, f);
    REQUIRE(r.kind == InfimumKind::Exists);
    CHECK(diff(r.value->matrix(), e.matrix()) < 1e-8);
  }
  {
    // rank-one E off the range of a rank-one F
    Eigen::VectorXcd a(3), b(3);
    a << 1, 0, 0;
    b << 0, 1, 0;
    const auto [e, f] = rank_one_pair(a, b, 0.7, 0.4);
    const InfimumResult r = infimum(e, f);
    CHECK(r.common_range.frobenius_norm() < 1e-12);
    REQUIRE(r.kind == InfimumKind::Exists);
    CHECK(r.value->matrix().frobenius_norm() < 1e-12);
  }
  {
    const Effect e = qubit_effect(1.0, Bloch(0.5, 0.0, 0.0));
    const Effect f = qubit_effect(1.0, Bloch(0.0, 0.5, 0.0));
    REQUIRE_FALSE(comparable(e, f));
    const InfimumResult r = infimum(e, f);
    CHECK(r.kind == InfimumKind::NotExists);
    CHECK_FALSE(r.value);
    CHECK(diff(r.common_range, HermitianMatrix::identity(2)) < 1e-12);
    CHECK_FALSE(r.e_side_leq);
    CHECK_FALSE(r.f_side_leq);
  }
}

TEST_CASE("infimum agrees with the generalized infimum when both apply") {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int rep = 0; rep < 600; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const Effect e = random_effect(d, rng);
    Effect f;
    switch (rep % 4) {
      case 0: f = random_effect(d, rng); break;
      case 1: f = validate_effect(e.matrix() * 0.6); break;
      case 2:
        f = validate_effect(HermitianMatrix::outer(random_unit(d, rng)) * 0.8);
        break;
      default: {
        const HermitianMatrix p = random_projection(d, 1 + rep % d, rng);
        f = validate_effect(p * 0.9);
      }
    }
    const InfimumResult r = infimum(e, f);
    if (r.kind == InfimumKind::Exists && is_psd(generalized_infimum(e, f), kDefaultTol).psd) {
      ++checked;
      CHECK(diff(r.value->matrix(), generalized_infimum(e, f)) <= 1e-8);
    }
  }
  MESSAGE("pairs with both an infimum and a PSD generalized infimum: " << checked);
  CHECK(checked > 100);
}

TEST_CASE("E ^ P is PSD exactly when E and P commute") {
  std::mt19937_64 rng(10);
  int commuting = 0, other = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const Eigen::Index d = 2 + rep % 4;
    const HermitianMatrix p = random_projection(d, 1 + rep % (d - 1), rng);
    Effect e;
    if (rep % 2 == 0) {
      // block-diagonal with respect to P
      const HermitianMatrix q = HermitianMatrix::identity(d) - p;
      const Effect a = random_effect(d, rng), b = random_effect(d, rng);
      e = validate_effect(HermitianMatrix(GeneralMatrix(
          p.matrix() * a.matrix().matrix() * p.matrix() +
          q.matrix() * b.matrix().matrix() * q.matrix())));
    } else {
      e = random_effect(d, rng);
    }
    const bool commute = commutator_norm(e.matrix(), p) <= 1e-9;
    (commute ? commuting : other)++;
    const bool psd = is_psd(generalized_infimum(e, validate_effect(p)), kDefaultTol).psd;
    CHECK(psd == commute);
  }
  CHECK(commuting == 150);
  CHECK(other == 150);
}
