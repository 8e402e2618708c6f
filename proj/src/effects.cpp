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

#include "coexist/effects.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace coexist {

Effect validate_effect(const HermitianMatrix& a) {
  const auto values = eigh(a).values;
  const double lo = values(0);
  const double hi = values(values.size() - 1);
  if (lo < -kEffectTol) {
    throw Error(ErrorCode::SpectrumOutOfRange,
                "eigenvalue " + std::to_string(lo) + " below 0", lo);
  }
  if (hi > 1.0 + kEffectTol) {
    throw Error(ErrorCode::SpectrumOutOfRange,
                "eigenvalue " + std::to_string(hi) + " above 1", hi);
  }
  return Effect(a, HermitianMatrix::identity(a.dim()) - a);
}

Effect validate_effect(const GeneralMatrix& a) {
  return validate_effect(HermitianMatrix(a));
}

bool leq(const Effect& e, const Effect& f, double tol) {
  require_same_dim(e.dim(), f.dim(), "leq");
  return is_psd(f.matrix() - e.matrix(), tol).psd;
}

bool comparable(const Effect& e, const Effect& f, double tol) {
  return leq(e, f, tol) || leq(f, e, tol);
}

HermitianMatrix jordan_product(const Effect& e, const Effect& f) {
  require_same_dim(e.dim(), f.dim(), "jordan_product");
  return hermitian_part(e.matrix().matrix() * f.matrix().matrix());
}

HermitianMatrix generalized_infimum(const Effect& e, const Effect& f) {
  require_same_dim(e.dim(), f.dim(), "generalized_infimum");
  const HermitianMatrix sum = e.matrix() + f.matrix();
  const HermitianMatrix modulus = abs(e.matrix() - f.matrix());
  return 0.5 * (sum - modulus);
}

HermitianMatrix range_projector(const Effect& e, double rank_tol) {
  if (!(rank_tol > 0.0)) {
    throw Error(ErrorCode::ParameterRange, "rank_tol must be positive",
                rank_tol);
  }
  return apply_spectral(
      e.matrix(), [rank_tol](double x) { return x > rank_tol ? 1.0 : 0.0; });
}

void require_projection(const HermitianMatrix& p, const char* what) {
  const GeneralMatrix& m = p.matrix();
  const double defect = (m * m - m).norm();
  if (defect > 1e-9) {
    throw Error(ErrorCode::NotAProjection,
                std::string(what) + ": ||P^2 - P||_F = " +
                    std::to_string(defect),
                defect);
  }
}

HermitianMatrix intersection_projector(const HermitianMatrix& p,
                                       const HermitianMatrix& q) {
  require_same_dim(p.dim(), q.dim(), "intersection_projector");
  require_projection(p, "intersection_projector");
  require_projection(q, "intersection_projector");
  return spectral_projector(p + q, 2.0 - kIntersectionWindow,
                            2.0 + kIntersectionWindow);
}

Effect infimum_with_projection(const Effect& e, const HermitianMatrix& p,
                               double rank_tol) {
  require_same_dim(e.dim(), p.dim(), "infimum_with_projection");
  require_projection(p, "infimum_with_projection");

  const auto n = e.dim();
  const auto eig = eigh(p);
  std::vector<Eigen::Index> inside;
  std::vector<Eigen::Index> outside;
  for (Eigen::Index k = 0; k < n; ++k)
    (eig.values(k) > 0.5 ? inside : outside).push_back(k);

  if (inside.empty()) return validate_effect(HermitianMatrix::zero(n));
  if (outside.empty()) return e;

  const auto k_in = static_cast<Eigen::Index>(inside.size());
  const auto k_out = static_cast<Eigen::Index>(outside.size());
  GeneralMatrix u1(n, k_in);
  GeneralMatrix u2(n, k_out);
  for (Eigen::Index j = 0; j < k_in; ++j)
    u1.col(j) = eig.vectors.col(inside[static_cast<std::size_t>(j)]);
  for (Eigen::Index j = 0; j < k_out; ++j)
    u2.col(j) = eig.vectors.col(outside[static_cast<std::size_t>(j)]);

  const GeneralMatrix& m = e.matrix().matrix();
  const GeneralMatrix e11 = u1.adjoint() * m * u1;
  const GeneralMatrix e12 = u1.adjoint() * m * u2;
  const HermitianMatrix e22(GeneralMatrix(u2.adjoint() * m * u2));
  const GeneralMatrix e22_pinv = pseudo_inverse(e22, rank_tol).matrix();

  const GeneralMatrix schur = e11 - e12 * e22_pinv * e12.adjoint();
  return validate_effect(HermitianMatrix(GeneralMatrix(u1 * schur * u1.adjoint())));
}

InfimumResult infimum(const Effect& e, const Effect& f, double tol,
                      double rank_tol) {
  require_same_dim(e.dim(), f.dim(), "infimum");
  InfimumResult out;
  out.common_range = intersection_projector(range_projector(e, rank_tol),
                                            range_projector(f, rank_tol));
  out.e_meet_p = infimum_with_projection(e, out.common_range, rank_tol);
  out.f_meet_p = infimum_with_projection(f, out.common_range, rank_tol);
  out.e_side_leq = leq(out.e_meet_p, out.f_meet_p, tol);
  out.f_side_leq = leq(out.f_meet_p, out.e_meet_p, tol);
  if (out.e_side_leq) {
    out.kind = InfimumKind::Exists;
    out.value = out.e_meet_p;
  } else if (out.f_side_leq) {
    out.kind = InfimumKind::Exists;
    out.value = out.f_meet_p;
  }
  return out;
}

}  // namespace coexist
