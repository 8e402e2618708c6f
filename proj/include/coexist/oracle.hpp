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

#include <string_view>

#include "coexist/effects.hpp"

namespace coexist {

struct OracleParams {
  int max_iters = 5000;
  double feas_tol = 1e-7;
  double infeas_tol = 1e-4;
  int restarts = 3;
};

enum class OracleKind { Feasible, LikelyInfeasible, Undetermined };
std::string_view to_string(OracleKind k);

struct OracleOutcome {
  OracleKind kind = OracleKind::Undetermined;
  HermitianMatrix witness_g;  // best iterate; a certificate only if Feasible
  double residual = 0.0;      // constraint violation of witness_g
  int iterations = 0;
  int restart = 0;            // index of the restart that produced witness_g
  bool monotone = true;       // residual never increased after first cycle
};

enum class ConeSide { Lower, Upper };

/// Frobenius-nearest Y with Y >= bound (Lower) or Y <= bound (Upper).
HermitianMatrix project_shifted_cone(const HermitianMatrix& x,
                                     const HermitianMatrix& bound,
                                     ConeSide side);

/// Largest violation among G >= 0, G <= E, G <= F, G >= E + F - I, as the
/// negated minimum eigenvalue of each slack, floored at zero.
double violation(const Effect& e, const Effect& f, const HermitianMatrix& g);

/// Searches for G with G >= 0, G <= E, G <= F, G >= E + F - I using
/// Dykstra's alternating projections from up to three start points.
OracleOutcome decide_pair(const Effect& e, const Effect& f,
                          const OracleParams& params = {});

}  // namespace coexist
