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

#include <array>
#include <utility>

#include "coexist/effects.hpp"

namespace coexist {

using Bloch = Eigen::Vector3d;
using EffectPair = std::pair<Effect, Effect>;

/// sigma_x, sigma_y, sigma_z in the standard basis.
const std::array<GeneralMatrix, 3>& pauli();

/// (alpha I + v . sigma) / 2, an effect iff 0 <= alpha <= 2 and
/// ||v|| <= min(alpha, 2 - alpha).
struct QubitEffect {
  double alpha = 1.0;
  Bloch bloch = Bloch::Zero();

  /// Throws ErrorCode::InvalidBloch when the invariant fails by more than
  /// 1e-12.
  Effect to_effect() const;
};

Effect qubit_effect(double alpha, const Bloch& v);

/// Exact decision plus signed margin (>= 0 iff coexistent).
struct ExactCriterion {
  bool coexistent;
  double margin;
};

/// Unbiased qubit pair (I + e.sigma)/2, (I + f.sigma)/2:
/// coexistent iff ||e + f|| + ||e - f|| <= 2.
ExactCriterion busch_criterion(const Bloch& e, const Bloch& f);

/// Unbiased E = (I + e.sigma)/2 and biased F = (beta I + f.sigma)/2 with
/// e orthogonal to f: coexistent iff
/// 2||e|| <= sqrt(beta^2 - ||f||^2) + sqrt((2 - beta)^2 - ||f||^2).
ExactCriterion liu_criterion(double e_norm, double f_norm, double beta);

/// Canonical frame for the family above: e along x, f along y.
EffectPair liu_pair(double e_norm, double f_norm, double beta);

/// Noisy projections onto a basis vector and onto the uniform superposition
/// of the basis, each mixed with white noise at weight 1 - lambda.
struct MubParams {
  int d = 2;
  double lambda = 0.0;
};

EffectPair mub_pair(const MubParams& p);

/// Mixing weight below which the MUB pair is known to be coexistent.
double lambda_max(int d);
/// Mixing weight at which the Jordan product of the MUB pair stops being
/// positive.
double lambda_jor(int d);

/// (tE + (1-t)I, tF + (1-t)I) for 0 < t <= 1/2.
EffectPair noisy_pair(const Effect& e, const Effect& f, double t);

/// (sE + (1-s)E^perp, tE + (1-t)E^perp); E must be neither below nor above
/// I/2.
EffectPair mixed_commuting_pair(const Effect& e, double s, double t);

/// (a|psi><psi|, b|phi><phi|) for unit vectors and weights in (0, 1].
EffectPair rank_one_pair(const Eigen::VectorXcd& psi,
                         const Eigen::VectorXcd& phi, double a, double b);

}  // namespace coexist
