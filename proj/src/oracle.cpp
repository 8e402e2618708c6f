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

#include "coexist/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace coexist {

std::string_view to_string(OracleKind k) {
  switch (k) {
    case OracleKind::Feasible: return "FEASIBLE";
    case OracleKind::LikelyInfeasible: return "LIKELY_INFEASIBLE";
    case OracleKind::Undetermined: return "UNDETERMINED";
  }
  return "UNKNOWN";
}

HermitianMatrix project_shifted_cone(const HermitianMatrix& x,
                                     const HermitianMatrix& bound,
                                     ConeSide side) {
  require_same_dim(x.dim(), bound.dim(), "project_shifted_cone");
  const auto clip = [](double v) { return std::max(v, 0.0); };
  if (side == ConeSide::Lower) {
    return bound + apply_spectral(x - bound, clip);
  }
  return bound - apply_spectral(bound - x, clip);
}

double violation(const Effect& e, const Effect& f, const HermitianMatrix& g) {
  require_same_dim(e.dim(), g.dim(), "violation");
  require_same_dim(f.dim(), g.dim(), "violation");
  const HermitianMatrix lower = e.matrix() - f.complement_matrix();
  const std::array<HermitianMatrix, 4> slacks = {
      g, e.matrix() - g, f.matrix() - g, g - lower};
  double worst = 0.0;
  for (const auto& s : slacks) worst = std::max(worst, -min_eigenvalue(s));
  return worst;
}

namespace {

constexpr double kStallStep = 1e-13;
constexpr int kStallCycles = 100;

// The four constraint sets {G >= 0, G <= upper_e, G <= upper_f, G >= lower}.
struct Problem {
  HermitianMatrix zero, upper_e, upper_f, lower;
};

double problem_violation(const Problem& p, const HermitianMatrix& g) {
  const std::array<HermitianMatrix, 4> slacks = {g, p.upper_e - g, p.upper_f - g,
                                                 g - p.lower};
  double worst = 0.0;
  for (const auto& s : slacks) worst = std::max(worst, -min_eigenvalue(s));
  return worst;
}

// Every feasible G has range inside S = ran E ∩ ran F. With U an orthonormal
// basis of S, G = U g U* and the constraints become g <= U*(E∧P_S)U,
// g <= U*(F∧P_S)U and, by a Schur complement over S ⊕ S^⊥,
// g >= L11 + L12 (-L22)^+ L21 for L = E + F - I.
struct Reduction {
  bool full = true;  // S is the whole space; u is unused
  GeneralMatrix u;
  Problem problem;

  HermitianMatrix compress(const HermitianMatrix& x) const {
    return full ? x : HermitianMatrix(GeneralMatrix(u.adjoint() * x.matrix() * u));
  }
  HermitianMatrix expand(const HermitianMatrix& g) const {
    return full ? g : HermitianMatrix(GeneralMatrix(u * g.matrix() * u.adjoint()));
  }
};

Reduction reduce(const Effect& e, const Effect& f) {
  const auto n = e.dim();
  const HermitianMatrix lower = e.matrix() - f.complement_matrix();
  Reduction r;
  const HermitianMatrix s = intersection_projector(range_projector(e), range_projector(f));
  const EigenDecomposition eig = eigh(s);
  std::vector<Eigen::Index> in, out;
  for (Eigen::Index i = 0; i < n; ++i) (eig.values(i) > 0.5 ? in : out).push_back(i);
  if (out.empty()) {
    r.problem = {HermitianMatrix::zero(n), e.matrix(), f.matrix(), lower};
    return r;
  }
  r.full = false;
  const auto k = static_cast<Eigen::Index>(in.size());
  r.u = eig.vectors(Eigen::all, in);
  const GeneralMatrix w = eig.vectors(Eigen::all, out);
  if (k == 0) return r;
  const GeneralMatrix l = lower.matrix();
  const HermitianMatrix neg22(GeneralMatrix(-(w.adjoint() * l * w)));
  const GeneralMatrix l12 = r.u.adjoint() * l * w;
  const GeneralMatrix schur =
      r.u.adjoint() * l * r.u + l12 * pseudo_inverse(neg22, kRankTol).matrix() * l12.adjoint();
  r.problem = {HermitianMatrix::zero(k),
               r.compress(infimum_with_projection(e, s).matrix()),
               r.compress(infimum_with_projection(f, s).matrix()), HermitianMatrix(schur)};
  return r;
}

struct RunResult {
  HermitianMatrix best;
  double residual;
  int iterations;
  bool monotone;
};

RunResult dykstra(const Problem& p, HermitianMatrix x, const OracleParams& params) {
  struct Set {
    const HermitianMatrix* bound;
    ConeSide side;
  };
  const std::array<Set, 4> sets = {Set{&p.zero, ConeSide::Lower},
                                   Set{&p.upper_e, ConeSide::Upper},
                                   Set{&p.upper_f, ConeSide::Upper},
                                   Set{&p.lower, ConeSide::Lower}};
  std::array<HermitianMatrix, 4> corrections;
  corrections.fill(p.zero);

  RunResult out{x, problem_violation(p, x), 0, true};
  double previous = out.residual;
  int stalled = 0;
  for (int it = 1; it <= params.max_iters; ++it) {
    const HermitianMatrix start = x;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const HermitianMatrix y = x + corrections[k];
      x = project_shifted_cone(y, *sets[k].bound, sets[k].side);
      corrections[k] = y - x;
    }
    // On an empty intersection the iterate freezes while the corrections
    // grow without bound; further cycles cannot change the verdict.
    const double step = (x - start).frobenius_norm();
    stalled = step <= kStallStep * std::max(1.0, x.frobenius_norm()) ? stalled + 1 : 0;
    const double v = problem_violation(p, x);
    if (it > 1 && v > previous * (1.0 + 1e-9) + 1e-15) out.monotone = false;
    previous = v;
    out.iterations = it;
    if (v < out.residual) {
      out.residual = v;
      out.best = x;
    }
    if (v <= params.feas_tol || stalled >= kStallCycles) break;
  }
  return out;
}

}  // namespace

OracleOutcome decide_pair(const Effect& e, const Effect& f,
                          const OracleParams& params) {
  require_same_dim(e.dim(), f.dim(), "decide_pair");
  if (!(params.feas_tol < params.infeas_tol) || params.max_iters < 1 ||
      params.restarts < 1) {
    throw Error(ErrorCode::ParameterRange,
                "oracle needs feas_tol < infeas_tol, max_iters >= 1, "
                "restarts >= 1");
  }

  const auto positive_part = [](const HermitianMatrix& a) {
    return apply_spectral(a, [](double v) { return std::max(v, 0.0); });
  };
  const HermitianMatrix lower = e.matrix() - f.complement_matrix();
  std::array<HermitianMatrix, 3> starts = {
      HermitianMatrix::zero(e.dim()),
      positive_part(0.5 * generalized_infimum(e, f)),
      positive_part(0.5 * lower)};

  // A thin feasible set slows Dykstra to a crawl, so solve on ran E ∩ ran F,
  // or on the complement pair when that intersection is the whole space.
  Reduction red = reduce(e, f);
  bool via_complement = false;
  if (red.full) {
    Reduction alt = reduce(e.complement(), f.complement());
    if (!alt.full) {
      red = std::move(alt);
      via_complement = true;
      for (auto& s : starts) s = s - lower;
    }
  }
  const auto to_g = [&](const HermitianMatrix& g) {
    const HermitianMatrix full = red.expand(g);
    return via_complement ? full + lower : full;
  };

  const int runs = std::min<int>(params.restarts, static_cast<int>(starts.size()));
  OracleOutcome best;
  bool have = false;
  for (int r = 0; r < runs; ++r) {
    // ran E ∩ ran F = {0} forces G = 0 (or G' = 0 on the complement side).
    const RunResult run =
        red.full || red.u.cols() > 0
            ? dykstra(red.problem, red.compress(starts[static_cast<std::size_t>(r)]), params)
            : RunResult{HermitianMatrix::zero(e.dim()), 0.0, 0, true};
    const HermitianMatrix g = red.full || red.u.cols() > 0
                                  ? to_g(run.best)
                                  : (via_complement ? lower : HermitianMatrix::zero(e.dim()));
    const double residual = violation(e, f, g);
    if (!have || residual < best.residual) {
      best.witness_g = g;
      best.residual = residual;
      best.iterations = run.iterations;
      best.restart = r;
      best.monotone = run.monotone;
      have = true;
    }
  }

  if (best.residual <= params.feas_tol) {
    best.kind = OracleKind::Feasible;
  } else if (best.residual >= params.infeas_tol) {
    best.kind = OracleKind::LikelyInfeasible;
  } else {
    best.kind = OracleKind::Undetermined;
  }
  return best;
}

}  // namespace coexist
