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

#pragma once

#include <optional>

#include "coexist/hermitian.hpp"

namespace coexist {

/// Spectrum slack used when validating effects.
inline constexpr double kEffectTol = 1e-9;
/// Default rank cutoff for range projectors and pseudo-inverses.
inline constexpr double kRankTol = 1e-9;
/// Half-width of the eigenvalue-2 window of P+Q used for range intersections.
inline constexpr double kIntersectionWindow = 1e-7;
/// Default relative PSD slack for order comparisons and condition checks.
inline constexpr double kDefaultTol = 1e-9;

/// An operator 0 <= E <= I. The complement I - E is computed once at
/// construction and carried alongside, so complement() is an exact
/// involution.
class Effect {
 public:
  Effect() = default;

  const HermitianMatrix& matrix() const { return matrix_; }
  /// I - E
  const HermitianMatrix& complement_matrix() const { return complement_; }
  Eigen::Index dim() const { return matrix_.dim(); }

  Effect complement() const { return Effect(complement_, matrix_); }

 private:
  Effect(HermitianMatrix m, HermitianMatrix c)
      : matrix_(std::move(m)), complement_(std::move(c)) {}
  friend Effect validate_effect(const HermitianMatrix& a);

  HermitianMatrix matrix_;
  HermitianMatrix complement_;
};

/// Throws ErrorCode::SpectrumOutOfRange (witness = offending eigenvalue)
/// unless the spectrum lies in [-kEffectTol, 1 + kEffectTol]. No clamping.
Effect validate_effect(const HermitianMatrix& a);
Effect validate_effect(const GeneralMatrix& a);

inline Effect complement(const Effect& e) { return e.complement(); }

/// E <= F, i.e. F - E is PSD at relative slack `tol`.
bool leq(const Effect& e, const Effect& f, double tol = kDefaultTol);
bool comparable(const Effect& e, const Effect& f, double tol = kDefaultTol);

/// (EF + FE) / 2. Hermitian, not necessarily positive.
HermitianMatrix jordan_product(const Effect& e, const Effect& f);

/// (E + F - |E - F|) / 2. Lies below both E and F, not necessarily
/// positive.
HermitianMatrix generalized_infimum(const Effect& e, const Effect& f);

/// Projector onto span of eigenvectors of E with eigenvalue > rank_tol.
HermitianMatrix range_projector(const Effect& e, double rank_tol = kRankTol);

/// Throws ErrorCode::NotAProjection unless P is idempotent to 1e-9.
void require_projection(const HermitianMatrix& p, const char* what);

/// Projector onto ran(P) ∩ ran(Q).
HermitianMatrix intersection_projector(const HermitianMatrix& p,
                                       const HermitianMatrix& q);

/// The effect infimum E ∧ P with a projection, computed as the shorted
/// operator of E to ran(P): with E written in blocks over ran P ⊕ ran P^⊥,
/// the result is E11 - E12 E22^+ E21 on ran P and zero elsewhere.
Effect infimum_with_projection(const Effect& e, const HermitianMatrix& p,
                               double rank_tol = kRankTol);

enum class InfimumKind { Exists, NotExists };

struct InfimumResult {
  InfimumKind kind = InfimumKind::NotExists;
  std::optional<Effect> value;
  HermitianMatrix common_range;  // P_{E,F}
  Effect e_meet_p;               // E ∧ P_{E,F}
  Effect f_meet_p;               // F ∧ P_{E,F}
  bool e_side_leq = false;       // E∧P <= F∧P
  bool f_side_leq = false;       // F∧P <= E∧P
};

/// Finite-dimensional infimum of two effects: both are shorted to the
/// projector onto ran(E) ∩ ran(F); the infimum exists iff the two results
/// are comparable, and is then the smaller one.
InfimumResult infimum(const Effect& e, const Effect& f,
                      double tol = kDefaultTol, double rank_tol = kRankTol);

}  // namespace coexist
