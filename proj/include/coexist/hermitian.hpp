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

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "coexist/error.hpp"

namespace coexist {

using Complex = std::complex<double>;
using GeneralMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Dense Hermitian operator on C^d.
///
/// Construction symmetrizes the input, (M + M*)/2, so that entry (i,j) is
/// bit-for-bit the conjugate of entry (j,i) and the diagonal is real.
/// Throws ErrorCode::NonFinite on NaN/Inf entries and
/// ErrorCode::DimensionMismatch on non-square or empty input.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const GeneralMatrix& m);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix diagonal(const RealVector& diag);
  /// |v><v| for a (not necessarily normalized) vector.
  static HermitianMatrix outer(const Eigen::VectorXcd& v);

  Eigen::Index dim() const { return m_.rows(); }
  const GeneralMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double frobenius_norm() const { return m_.norm(); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return a * s;
  }

 private:
  struct Trusted {};
  HermitianMatrix(GeneralMatrix m, Trusted) : m_(std::move(m)) {}

  GeneralMatrix m_;
};

struct EigenDecomposition {
  RealVector values;       // ascending
  GeneralMatrix vectors;   // columns are eigenvectors
};

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius mass is at
/// most 1e-13 * ||A||_F; throws ErrorCode::NotConverged after 64 sweeps.
/// Each eigenvector is phased so its largest-modulus component is real
/// positive.
EigenDecomposition eigh(const HermitianMatrix& a);

/// V f(Lambda) V*.
HermitianMatrix apply_spectral(const HermitianMatrix& a,
                               const std::function<double(double)>& f);
HermitianMatrix apply_spectral(const EigenDecomposition& eig,
                               const std::function<double(double)>& f);

HermitianMatrix abs(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

struct PsdCheck {
  bool psd;
  double witness;  // minimum eigenvalue
};

/// PSD within relative slack: min eigenvalue >= -tol * max(1, ||A||_F).
PsdCheck is_psd(const HermitianMatrix& a, double tol);

/// Eigenvalues with |lambda| <= rank_tol * max|lambda| are treated as zero.
HermitianMatrix pseudo_inverse(const HermitianMatrix& a, double rank_tol);

/// Orthogonal projector onto eigenvectors with eigenvalue in [lo, hi].
HermitianMatrix spectral_projector(const HermitianMatrix& a, double lo,
                                   double hi);

GeneralMatrix mul(const GeneralMatrix& a, const GeneralMatrix& b);
HermitianMatrix hermitian_part(const GeneralMatrix& m);
/// ||AB - BA||_F
double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b);

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what);

}  // namespace coexist
