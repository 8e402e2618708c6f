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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coexist/effects.hpp"
#include "coexist/oracle.hpp"

namespace coexist {

enum class Condition { Commu, Comp, Inf, Jor, Ginf };
enum class Status { Holds, Fails };

inline constexpr std::array<Condition, 5> kAllConditions = {
    Condition::Commu, Condition::Comp, Condition::Inf, Condition::Jor,
    Condition::Ginf};

std::string_view to_string(Condition c);
std::string_view to_string(Status s);

/// G11 + G12 = E, G11 + G21 = F, all four summing to I.
struct FourTermWitness {
  HermitianMatrix g11, g12, g21, g22;
};

/// G <= E, G <= F, G + I >= E + F, G >= 0.
struct SingleGWitness {
  HermitianMatrix g;
};

using CoexWitness = std::variant<FourTermWitness, SingleGWitness>;

struct WitnessValue {
  std::string label;
  double value;  // min eigenvalue, or a norm for COMMU
  bool passed;   // the inequality behind this value held at tol
};

struct ConditionVerdict {
  Condition condition = Condition::Commu;
  Status status = Status::Fails;
  std::vector<WitnessValue> witnesses;
  std::string branch;  // succeeding disjunct; empty on FAILS
  std::optional<CoexWitness> witness;

  bool holds() const { return status == Status::Holds; }
  /// Signed scalar summary; non-negative (up to tol) iff the condition holds.
  double margin = 0.0;
};

/// Which of the four complement combinations a pair-level witness was
/// built for. A witness G' for (E^(i), F^(j)) maps back to (E, F) through
/// the four-term decomposition.
enum class ComplementBranch { EF, EFc, EcF, EcFc };

/// Maps a single-G witness for the branch pair back to one for (E, F).
HermitianMatrix map_witness(ComplementBranch branch, const HermitianMatrix& g,
                            const Effect& e, const Effect& f);

ConditionVerdict check_commu(const Effect& e, const Effect& f,
                             double tol = kDefaultTol);
ConditionVerdict check_comp(const Effect& e, const Effect& f,
                            double tol = kDefaultTol);
ConditionVerdict check_inf(const Effect& e, const Effect& f,
                           double tol = kDefaultTol);
ConditionVerdict check_jor(const Effect& e, const Effect& f,
                           double tol = kDefaultTol);
ConditionVerdict check_ginf(const Effect& e, const Effect& f,
                            double tol = kDefaultTol);
ConditionVerdict check_condition(Condition c, const Effect& e, const Effect& f,
                                 double tol = kDefaultTol);

inline constexpr std::size_t kMaxJordanEffects = 8;

/// Symmetrized product (1/n!) sum over orderings of E_k^(i_k), where
/// pattern[k] == 1 picks E_k and 2 picks its complement.
HermitianMatrix jordan_general(std::span<const Effect> effects,
                               std::span<const int> pattern);

struct MultiJordanVerdict {
  Status status = Status::Fails;
  double min_eigenvalue = 0.0;
  std::vector<int> worst_pattern;
  bool holds() const { return status == Status::Holds; }
};

MultiJordanVerdict check_jor_multi(std::span<const Effect> effects,
                                   double tol = kDefaultTol);

struct WitnessCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

WitnessCheck verify_witness(const Effect& e, const Effect& f,
                            const CoexWitness& w, double tol);

struct ImplicationFlags {
  bool commu_implies_jor = true;
  bool jor_implies_ginf = true;
  bool comp_implies_ginf = true;
  bool comp_implies_inf = true;
  bool all() const {
    return commu_implies_jor && jor_implies_ginf && comp_implies_ginf &&
           comp_implies_inf;
  }
};

struct PairReport {
  std::array<ConditionVerdict, 5> verdicts;  // indexed like kAllConditions
  std::optional<OracleOutcome> oracle;
  ImplicationFlags implications;

  const ConditionVerdict& verdict(Condition c) const {
    return verdicts[static_cast<std::size_t>(c)];
  }
  bool any_holds() const;
};

ImplicationFlags implication_flags(const std::array<ConditionVerdict, 5>& v);

PairReport full_report(const Effect& e, const Effect& f, bool run_oracle,
                       double tol = kDefaultTol,
                       const OracleParams& params = {});

}  // namespace coexist
