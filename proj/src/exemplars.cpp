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

#include "coexist/exemplars.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coexist {

namespace {

constexpr double kBlochSlack = 1e-12;

void require_range(bool ok, const std::string& what, double value) {
  if (!ok) throw Error(ErrorCode::ParameterRange, what, value);
}

}  // namespace

const std::array<GeneralMatrix, 3>& pauli() {
  static const std::array<GeneralMatrix, 3> sigma = [] {
    const Complex i(0.0, 1.0);
    GeneralMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return std::array<GeneralMatrix, 3>{x, y, z};
  }();
  return sigma;
}

Effect QubitEffect::to_effect() const {
  const double norm = bloch.norm();
  if (!std::isfinite(alpha) || !std::isfinite(norm) || alpha < 0.0 ||
      alpha > 2.0 || norm > std::min(alpha, 2.0 - alpha) + kBlochSlack) {
    throw Error(ErrorCode::InvalidBloch,
                "need ||v|| <= min(alpha, 2 - alpha); alpha = " +
                    std::to_string(alpha) + ", ||v|| = " + std::to_string(norm),
                norm);
  }
  const auto& s = pauli();
  GeneralMatrix m = alpha * GeneralMatrix::Identity(2, 2);
  for (int k = 0; k < 3; ++k) m += bloch(k) * s[static_cast<std::size_t>(k)];
  return validate_effect(HermitianMatrix(GeneralMatrix(0.5 * m)));
}

Effect qubit_effect(double alpha, const Bloch& v) {
  return QubitEffect{alpha, v}.to_effect();
}

ExactCriterion busch_criterion(const Bloch& e, const Bloch& f) {
  for (const Bloch* v : {&e, &f}) {
    if (!(v->norm() <= 1.0 + kBlochSlack)) {
      throw Error(ErrorCode::InvalidBloch, "unbiased Bloch vector outside the unit ball",
                  v->norm());
    }
  }
  const double margin = 2.0 - (e + f).norm() - (e - f).norm();
  return {margin >= 0.0, margin};
}

ExactCriterion liu_criterion(double e_norm, double f_norm, double beta) {
  require_range(e_norm >= 0.0 && e_norm <= 1.0 + kBlochSlack,
                "||e|| must lie in [0, 1]", e_norm);
  require_range(f_norm >= 0.0 && f_norm <= 1.0 + kBlochSlack,
                "||f|| must lie in [0, 1]", f_norm);
  require_range(beta >= f_norm - kBlochSlack && beta <= 2.0 - f_norm + kBlochSlack,
                "need ||f|| <= beta <= 2 - ||f||", beta);
  const double f2 = f_norm * f_norm;
  const double rhs = std::sqrt(std::max(0.0, beta * beta - f2)) +
                     std::sqrt(std::max(0.0, (2.0 - beta) * (2.0 - beta) - f2));
  const double margin = rhs - 2.0 * e_norm;
  return {margin >= 0.0, margin};
}

EffectPair liu_pair(double e_norm, double f_norm, double beta) {
  liu_criterion(e_norm, f_norm, beta);
  return {qubit_effect(1.0, Bloch(e_norm, 0.0, 0.0)),
          qubit_effect(beta, Bloch(0.0, f_norm, 0.0))};
}

EffectPair mub_pair(const MubParams& p) {
  require_range(p.d >= 2, "MUB dimension must be at least 2", p.d);
  require_range(p.lambda >= 0.0 && p.lambda <= 1.0,
                "lambda must lie in [0, 1]", p.lambda);
  const auto d = static_cast<Eigen::Index>(p.d);
  Eigen::VectorXcd basis0 = Eigen::VectorXcd::Zero(d);
  basis0(0) = 1.0;
  const Eigen::VectorXcd uniform =
      Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const HermitianMatrix noise =
      HermitianMatrix::identity(d) * ((1.0 - p.lambda) / static_cast<double>(d));
  return {validate_effect(HermitianMatrix::outer(basis0) * p.lambda + noise),
          validate_effect(HermitianMatrix::outer(uniform) * p.lambda + noise)};
}

double lambda_max(int d) {
  require_range(d >= 2, "dimension must be at least 2", d);
  const double dd = d;
  return 0.5 + (std::sqrt(dd) - 1.0) / (2.0 * (dd - 1.0));
}

double lambda_jor(int d) {
  require_range(d >= 2, "dimension must be at least 2", d);
  const double dd = d;
  return (2.0 * (1.0 + std::sqrt(2.0)) * dd - 4.0) / (dd * dd + 4.0 * dd - 4.0);
}

EffectPair noisy_pair(const Effect& e, const Effect& f, double t) {
  require_same_dim(e.dim(), f.dim(), "noisy_pair");
  require_range(t > 0.0 && t <= 0.5, "t must lie in (0, 1/2]", t);
  const auto noise = HermitianMatrix::identity(e.dim()) * (1.0 - t);
  return {validate_effect(e.matrix() * t + noise),
          validate_effect(f.matrix() * t + noise)};
}

EffectPair mixed_commuting_pair(const Effect& e, double s, double t) {
  require_range(s > 0.0 && s < 1.0, "s must lie in (0, 1)", s);
  require_range(t > 0.0 && t < 1.0, "t must lie in (0, 1)", t);
  const Effect half =
      validate_effect(HermitianMatrix::identity(e.dim()) * 0.5);
  if (comparable(e, half)) {
    throw Error(ErrorCode::ParameterRange,
                "E must be neither below nor above I/2");
  }
  const HermitianMatrix& em = e.matrix();
  const HermitianMatrix& ec = e.complement_matrix();
  return {validate_effect(em * s + ec * (1.0 - s)),
          validate_effect(em * t + ec * (1.0 - t))};
}

EffectPair rank_one_pair(const Eigen::VectorXcd& psi,
                         const Eigen::VectorXcd& phi, double a, double b) {
  require_same_dim(psi.size(), phi.size(), "rank_one_pair");
  for (const auto* v : {&psi, &phi}) {
    if (std::abs(v->norm() - 1.0) > 1e-10) {
      throw Error(ErrorCode::ParameterRange, "vectors must be unit length",
                  v->norm());
    }
  }
  require_range(a > 0.0 && a <= 1.0, "weight a must lie in (0, 1]", a);
  require_range(b > 0.0 && b <= 1.0, "weight b must lie in (0, 1]", b);
  return {validate_effect(HermitianMatrix::outer(psi) * a),
          validate_effect(HermitianMatrix::outer(phi) * b)};
}

}  // namespace coexist
