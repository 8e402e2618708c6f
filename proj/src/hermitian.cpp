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

#include "coexist/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace coexist {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kOffDiagonalTol = 1e-13;

double off_diagonal_norm(const GeneralMatrix& a) {
  double sum = 0.0;
  const auto n = a.rows();
  for (Eigen::Index q = 1; q < n; ++q)
    for (Eigen::Index p = 0; p < q; ++p) sum += std::norm(a(p, q));
  return std::sqrt(2.0 * sum);
}

// One complex Jacobi rotation annihilating a(p,q). The phase of a(p,q) is
// first moved onto column q so the 2x2 pivot block is real symmetric, then
// an ordinary Jacobi rotation is applied.
void rotate(GeneralMatrix& a, GeneralMatrix& v, Eigen::Index p,
            Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = std::conj(apq) / mag;

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) /
        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const auto n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Complex akp = a(k, p);
    const Complex akq = a(k, q) * phase;
    const Complex new_kp = c * akp - s * akq;
    const Complex new_kq = s * akp + c * akq;
    a(k, p) = new_kp;
    a(k, q) = new_kq;
    a(p, k) = std::conj(new_kp);
    a(q, k) = std::conj(new_kq);
  }
  a(p, p) = Complex(a(p, p).real() - t * mag, 0.0);
  a(q, q) = Complex(a(q, q).real() + t * mag, 0.0);
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q) * phase;
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> col) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index k = 0; k < col.size(); ++k) {
    const double m = std::abs(col(k));
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  if (best_mag <= 0.0) return;
  col *= std::conj(col(best)) / best_mag;
  col(best) = Complex(col(best).real(), 0.0);
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NonFinite: return "NON_FINITE";
    case ErrorCode::SpectrumOutOfRange: return "SPECTRUM_OUT_OF_RANGE";
    case ErrorCode::NotAProjection: return "NOT_A_PROJECTION";
    case ErrorCode::InvalidBloch: return "INVALID_BLOCH";
    case ErrorCode::ParameterRange: return "PARAMETER_RANGE";
    case ErrorCode::CombinatorialLimit: return "COMBINATORIAL_LIMIT";
    case ErrorCode::NotConverged: return "NOT_CONVERGED";
    case ErrorCode::Io: return "IO_ERROR";
    case ErrorCode::Parse: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<double> witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message),
      witness_(witness) {}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimensions " + std::to_string(a) +
                    " and " + std::to_string(b));
  }
}

HermitianMatrix::HermitianMatrix(const GeneralMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "Hermitian matrix must be square and non-empty, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  }
  const auto n = m.rows();
  m_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m_(j, j) = Complex(m(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(GeneralMatrix::Zero(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(GeneralMatrix::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
  return HermitianMatrix(GeneralMatrix(diag.cast<Complex>().asDiagonal()));
}

HermitianMatrix HermitianMatrix::outer(const Eigen::VectorXcd& v) {
  return HermitianMatrix(GeneralMatrix(v * v.adjoint()));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim(dim(), o.dim(), "operator+");
  return HermitianMatrix(GeneralMatrix(m_ + o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim(dim(), o.dim(), "operator-");
  return HermitianMatrix(GeneralMatrix(m_ - o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-() const {
  return HermitianMatrix(GeneralMatrix(-m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(GeneralMatrix(m_ * s), Trusted{});
}

EigenDecomposition eigh(const HermitianMatrix& a_in) {
  const auto n = a_in.dim();
  GeneralMatrix a = a_in.matrix();
  GeneralMatrix v = GeneralMatrix::Identity(n, n);
  const double threshold = kOffDiagonalTol * a_in.frobenius_norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep == kMaxSweeps) {
      throw Error(ErrorCode::NotConverged,
                  "Jacobi eigensolver exceeded " + std::to_string(kMaxSweeps) +
                      " sweeps",
                  off_diagonal_norm(a));
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweep;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     return a(i, i).real() < a(j, j).real();
                   });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
    fix_phase(out.vectors.col(k));
  }
  return out;
}

HermitianMatrix apply_spectral(const EigenDecomposition& eig,
                               const std::function<double(double)>& f) {
  RealVector mapped(eig.values.size());
  for (Eigen::Index k = 0; k < mapped.size(); ++k) mapped(k) = f(eig.values(k));
  return HermitianMatrix(GeneralMatrix(
      eig.vectors * mapped.cast<Complex>().asDiagonal() *
      eig.vectors.adjoint()));
}

HermitianMatrix apply_spectral(const HermitianMatrix& a,
                               const std::function<double(double)>& f) {
  return apply_spectral(eigh(a), f);
}

HermitianMatrix abs(const HermitianMatrix& a) {
  return apply_spectral(a, [](double x) { return std::abs(x); });
}

double min_eigenvalue(const HermitianMatrix& a) { return eigh(a).values(0); }

double max_eigenvalue(const HermitianMatrix& a) {
  const auto values = eigh(a).values;
  return values(values.size() - 1);
}

PsdCheck is_psd(const HermitianMatrix& a, double tol) {
  const double witness = min_eigenvalue(a);
  const double slack = tol * std::max(1.0, a.frobenius_norm());
  return {witness >= -slack, witness};
}

HermitianMatrix pseudo_inverse(const HermitianMatrix& a, double rank_tol) {
  if (!(rank_tol > 0.0)) {
    throw Error(ErrorCode::ParameterRange, "rank_tol must be positive",
                rank_tol);
  }
  const auto eig = eigh(a);
  const double largest = eig.values.cwiseAbs().maxCoeff();
  const double cutoff = rank_tol * largest;
  return apply_spectral(eig, [cutoff](double x) {
    return std::abs(x) <= cutoff ? 0.0 : 1.0 / x;
  });
}

HermitianMatrix spectral_projector(const HermitianMatrix& a, double lo,
                                   double hi) {
  if (!(lo <= hi)) {
    throw Error(ErrorCode::ParameterRange, "spectral window needs lo <= hi");
  }
  return apply_spectral(
      a, [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
}

GeneralMatrix mul(const GeneralMatrix& a, const GeneralMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "mul");
  return a * b;
}

HermitianMatrix hermitian_part(const GeneralMatrix& m) {
  return HermitianMatrix(m);
}

double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "commutator_norm");
  const GeneralMatrix ab = a.matrix() * b.matrix();
  return (ab - ab.adjoint()).norm();
}

}  // namespace coexist
