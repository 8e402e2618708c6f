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

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "coexist/exemplars.hpp"
#include "coexist/survey.hpp"

namespace coexist::testing {

inline GeneralMatrix random_general(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  GeneralMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline HermitianMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  return HermitianMatrix(random_general(d, rng));
}

inline Effect random_effect(Eigen::Index d, std::mt19937_64& rng) {
  return sample_effect(static_cast<int>(d), rng);
}

/// Effect with spectrum drawn uniformly from [0, 1] in a random basis.
inline Effect random_full_effect(Eigen::Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::HouseholderQR<GeneralMatrix> qr(random_general(d, rng));
  const GeneralMatrix q = qr.householderQ();
  Eigen::VectorXd spec(d);
  for (Eigen::Index i = 0; i < d; ++i) spec(i) = u(rng);
  return validate_effect(
      HermitianMatrix(GeneralMatrix(q * spec.cast<Complex>().asDiagonal() * q.adjoint())));
}

inline Eigen::VectorXcd random_unit(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Uniform point in the unit ball.
inline Bloch random_bloch(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Bloch v(g(rng), g(rng), g(rng));
  return v / v.norm() * std::cbrt(u(rng));
}

/// Random orthonormal frame of R^3, columns.
inline Eigen::Matrix3d random_frame(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
  return Eigen::HouseholderQR<Eigen::Matrix3d>(m).householderQ();
}

inline double diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a - b).frobenius_norm();
}

}  // namespace coexist::testing
