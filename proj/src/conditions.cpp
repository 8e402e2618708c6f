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

#include "coexist/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace coexist {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Commu: return "COMMU";
    case Condition::Comp: return "COMP";
    case Condition::Inf: return "INF";
    case Condition::Jor: return "JOR";
    case Condition::Ginf: return "GINF";
  }
  return "UNKNOWN";
}

std::string_view to_string(Status s) {
  return s == Status::Holds ? "HOLDS" : "FAILS";
}

HermitianMatrix map_witness(ComplementBranch branch, const HermitianMatrix& g,
                            const Effect& e, const Effect& f) {
  switch (branch) {
    case ComplementBranch::EF: return g;
    case ComplementBranch::EFc: return e.matrix() - g;
    case ComplementBranch::EcF: return f.matrix() - g;
    case ComplementBranch::EcFc:
      return g + (e.matrix() - f.complement_matrix());
  }
  return g;
}

namespace {

struct BranchPair {
  ComplementBranch branch;
  const char* name;
  Effect first;
  Effect second;
};

std::array<BranchPair, 4> complement_pairs(const Effect& e, const Effect& f) {
  return {BranchPair{ComplementBranch::EF, "E,F", e, f},
          BranchPair{ComplementBranch::EFc, "E,F^perp", e, f.complement()},
          BranchPair{ComplementBranch::EcF, "E^perp,F", e.complement(), f},
          BranchPair{ComplementBranch::EcFc, "E^perp,F^perp", e.complement(),
                     f.complement()}};
}

}  // namespace

ConditionVerdict check_commu(const Effect& e, const Effect& f, double tol) {
  require_same_dim(e.dim(), f.dim(), "check_commu");
  ConditionVerdict v;
  v.condition = Condition::Commu;
  const double norm = commutator_norm(e.matrix(), f.matrix());
  v.witnesses.push_back({"||EF-FE||_F", norm, norm <= tol});
  v.margin = -norm;
  if (norm <= tol) {
    v.status = Status::Holds;
    v.branch = "EF=FE";
    const GeneralMatrix& em = e.matrix().matrix();
    const GeneralMatrix& ec = e.complement_matrix().matrix();
    const GeneralMatrix& fm = f.matrix().matrix();
    const GeneralMatrix& fc = f.complement_matrix().matrix();
    v.witness = FourTermWitness{hermitian_part(em * fm), hermitian_part(em * fc),
                                hermitian_part(ec * fm), hermitian_part(ec * fc)};
  }
  return v;
}

ConditionVerdict check_comp(const Effect& e, const Effect& f, double tol) {
  require_same_dim(e.dim(), f.dim(), "check_comp");
  ConditionVerdict v;
  v.condition = Condition::Comp;

  const HermitianMatrix& em = e.matrix();
  const HermitianMatrix& fm = f.matrix();
  const HermitianMatrix& fc = f.complement_matrix();
  const HermitianMatrix zero = HermitianMatrix::zero(e.dim());

  struct Disjunct {
    const char* label;
    HermitianMatrix difference;  // PSD iff the disjunct holds
    HermitianMatrix g;
  };
  const std::array<Disjunct, 4> disjuncts = {
      Disjunct{"E<=F", fm - em, em}, Disjunct{"F<=E", em - fm, fm},
      Disjunct{"E<=F^perp", fc - em, zero},
      Disjunct{"F^perp<=E", em - fc, em - fc}};

  v.margin = -std::numeric_limits<double>::infinity();
  for (const auto& d : disjuncts) {
    const PsdCheck check = is_psd(d.difference, tol);
    v.witnesses.push_back({d.label, check.witness, check.psd});
    v.margin = std::max(v.margin, check.witness);
    if (check.psd && v.status == Status::Fails) {
      v.status = Status::Holds;
      v.branch = d.label;
      v.witness = SingleGWitness{d.g};
    }
  }
  return v;
}

ConditionVerdict check_jor(const Effect& e, const Effect& f, double tol) {
  require_same_dim(e.dim(), f.dim(), "check_jor");
  ConditionVerdict v;
  v.condition = Condition::Jor;

  const Effect ec = e.complement();
  const Effect fc = f.complement();
  const std::array<HermitianMatrix, 4> terms = {
      jordan_product(e, f), jordan_product(e, fc), jordan_product(ec, f),
      jordan_product(ec, fc)};
  const std::array<const char*, 4> labels = {"E.F", "E.F^perp", "E^perp.F",
                                             "E^perp.F^perp"};

  bool all = true;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const PsdCheck check = is_psd(terms[k], tol);
    v.witnesses.push_back({labels[k], check.witness, check.psd});
    v.margin = std::min(v.margin, check.witness);
    all = all && check.psd;
  }
  if (all) {
    v.status = Status::Holds;
    v.branch = "all four Jordan terms PSD";
    v.witness = FourTermWitness{terms[0], terms[1], terms[2], terms[3]};
  }
  return v;
}

ConditionVerdict check_ginf(const Effect& e, const Effect& f, double tol) {
  require_same_dim(e.dim(), f.dim(), "check_ginf");
  ConditionVerdict v;
  v.condition = Condition::Ginf;

  const Effect ec = e.complement();
  const Effect fc = f.complement();
  const HermitianMatrix meet = generalized_infimum(e, f);
  const HermitianMatrix meet_cc = generalized_infimum(ec, fc);
  const HermitianMatrix meet_cf = generalized_infimum(ec, f);
  const HermitianMatrix meet_fc = generalized_infimum(e, fc);

  const PsdCheck a = is_psd(meet, tol);
  const PsdCheck b = is_psd(meet_cc, tol);
  const PsdCheck c = is_psd(meet_cf, tol);
  const PsdCheck d = is_psd(meet_fc, tol);
  v.witnesses = {{"E^F", a.witness, a.psd},
                 {"E^perp^F^perp", b.witness, b.psd},
                 {"E^perp^F", c.witness, c.psd},
                 {"E^F^perp", d.witness, d.psd}};
  v.margin = std::max(std::min(a.witness, b.witness),
                      std::min(c.witness, d.witness));

  if (a.psd && b.psd) {
    v.status = Status::Holds;
    v.branch = "E^F>=0 and E^perp^F^perp>=0";
    v.witness = SingleGWitness{meet};
  } else if (c.psd && d.psd) {
    v.status = Status::Holds;
    v.branch = "E^perp^F>=0 and E^F^perp>=0";
    v.witness =
        SingleGWitness{map_witness(ComplementBranch::EcF, meet_cf, e, f)};
  }
  return v;
}

ConditionVerdict check_inf(const Effect& e, const Effect& f, double tol) {
  require_same_dim(e.dim(), f.dim(), "check_inf");
  ConditionVerdict v;
  v.condition = Condition::Inf;
  v.margin = std::numeric_limits<double>::quiet_NaN();

  const auto identity = HermitianMatrix::identity(e.dim());
  for (const auto& bp : complement_pairs(e, f)) {
    const InfimumResult inf = infimum(bp.first, bp.second, tol);
    const std::string name = bp.name;
    if (inf.kind != InfimumKind::Exists) {
      v.witnesses.push_back({name + ": infimum exists", 0.0, false});
      continue;
    }
    v.witnesses.push_back({name + ": infimum exists", 1.0, true});
    const HermitianMatrix slack = inf.value->matrix() -
                                  (bp.first.matrix() + bp.second.matrix() -
                                   identity);
    const PsdCheck check = is_psd(slack, tol);
    v.witnesses.push_back({name + ": inf - (sum - I)", check.witness, check.psd});
    if (std::isnan(v.margin) || check.witness > v.margin) v.margin = check.witness;
    if (check.psd && v.status == Status::Fails) {
      v.status = Status::Holds;
      v.branch = name;
      v.witness = SingleGWitness{
          map_witness(bp.branch, inf.value->matrix(), e, f)};
    }
  }
  return v;
}

ConditionVerdict check_condition(Condition c, const Effect& e, const Effect& f,
                                 double tol) {
  switch (c) {
    case Condition::Commu: return check_commu(e, f, tol);
    case Condition::Comp: return check_comp(e, f, tol);
    case Condition::Inf: return check_inf(e, f, tol);
    case Condition::Jor: return check_jor(e, f, tol);
    case Condition::Ginf: return check_ginf(e, f, tol);
  }
  return {};
}

namespace {

void require_jordan_input(std::span<const Effect> effects) {
  if (effects.empty()) {
    throw Error(ErrorCode::ParameterRange, "need at least one effect");
  }
  if (effects.size() > kMaxJordanEffects) {
    throw Error(ErrorCode::CombinatorialLimit,
                std::to_string(effects.size()) + " effects exceeds limit of " +
                    std::to_string(kMaxJordanEffects),
                static_cast<double>(effects.size()));
  }
  for (const auto& e : effects)
    require_same_dim(effects[0].dim(), e.dim(), "jordan_general");
}

// Sum of the products over every ordering of the remaining factors,
// extending `prefix` one factor at a time.
void accumulate_orderings(const std::vector<const GeneralMatrix*>& factors,
                          unsigned used, const GeneralMatrix& prefix,
                          GeneralMatrix& total) {
  const auto n = factors.size();
  if (used == (1u << n) - 1) {
    total += prefix;
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (used & (1u << k)) continue;
    const GeneralMatrix next = prefix * *factors[k];
    accumulate_orderings(factors, used | (1u << k), next, total);
  }
}

}  // namespace

HermitianMatrix jordan_general(std::span<const Effect> effects,
                               std::span<const int> pattern) {
  require_jordan_input(effects);
  if (pattern.size() != effects.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "pattern length must equal number of effects");
  }
  std::vector<HermitianMatrix> chosen;
  chosen.reserve(effects.size());
  for (std::size_t k = 0; k < effects.size(); ++k) {
    if (pattern[k] == 1) {
      chosen.push_back(effects[k].matrix());
    } else if (pattern[k] == 2) {
      chosen.push_back(effects[k].complement_matrix());
    } else {
      throw Error(ErrorCode::ParameterRange, "pattern entries must be 1 or 2",
                  pattern[k]);
    }
  }
  std::vector<const GeneralMatrix*> factors;
  for (const auto& c : chosen) factors.push_back(&c.matrix());

  const auto d = effects[0].dim();
  GeneralMatrix total = GeneralMatrix::Zero(d, d);
  accumulate_orderings(factors, 0u, GeneralMatrix::Identity(d, d), total);

  double orderings = 1.0;
  for (std::size_t k = 2; k <= effects.size(); ++k) orderings *= static_cast<double>(k);
  return HermitianMatrix(GeneralMatrix(total / orderings));
}

MultiJordanVerdict check_jor_multi(std::span<const Effect> effects,
                                   double tol) {
  require_jordan_input(effects);
  const std::size_t n = effects.size();
  MultiJordanVerdict out;
  out.status = Status::Holds;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  std::vector<int> pattern(n);
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    for (std::size_t k = 0; k < n; ++k) pattern[k] = (bits >> k) & 1u ? 2 : 1;
    const PsdCheck check = is_psd(jordan_general(effects, pattern), tol);
    if (check.witness < out.min_eigenvalue) {
      out.min_eigenvalue = check.witness;
      out.worst_pattern = pattern;
    }
    if (!check.psd) out.status = Status::Fails;
  }
  return out;
}

WitnessCheck verify_witness(const Effect& e, const Effect& f,
                            const CoexWitness& w, double tol) {
  require_same_dim(e.dim(), f.dim(), "verify_witness");
  WitnessCheck out;
  const auto identity = HermitianMatrix::identity(e.dim());
  const auto require_psd = [&](const HermitianMatrix& m, const char* label) {
    require_same_dim(m.dim(), e.dim(), "verify_witness");
    const PsdCheck check = is_psd(m, tol);
    if (!check.psd) {
      out.ok = false;
      out.violations.push_back(std::string(label) +
                               " not PSD, min eigenvalue " +
                               std::to_string(check.witness));
    }
  };
  const auto require_equal = [&](const HermitianMatrix& a,
                                 const HermitianMatrix& b, const char* label) {
    require_same_dim(a.dim(), b.dim(), "verify_witness");
    const double residual = (a - b).frobenius_norm();
    if (residual > tol * std::max(1.0, b.frobenius_norm())) {
      out.ok = false;
      out.violations.push_back(std::string(label) + " residual " +
                               std::to_string(residual));
    }
  };

  if (const auto* four = std::get_if<FourTermWitness>(&w)) {
    require_equal(four->g11 + four->g12, e.matrix(), "G11+G12=E");
    require_equal(four->g11 + four->g21, f.matrix(), "G11+G21=F");
    require_equal(four->g11 + four->g12 + four->g21 + four->g22, identity,
                  "G11+G12+G21+G22=I");
    require_psd(four->g11, "G11");
    require_psd(four->g12, "G12");
    require_psd(four->g21, "G21");
    require_psd(four->g22, "G22");
  } else {
    const HermitianMatrix& g = std::get<SingleGWitness>(w).g;
    require_psd(g, "G");
    require_psd(e.matrix() - g, "E-G");
    require_psd(f.matrix() - g, "F-G");
    require_psd(g + identity - e.matrix() - f.matrix(), "G+I-E-F");
  }
  return out;
}

ImplicationFlags implication_flags(const std::array<ConditionVerdict, 5>& v) {
  const auto holds = [&](Condition c) {
    return v[static_cast<std::size_t>(c)].holds();
  };
  ImplicationFlags flags;
  flags.commu_implies_jor = !holds(Condition::Commu) || holds(Condition::Jor);
  flags.jor_implies_ginf = !holds(Condition::Jor) || holds(Condition::Ginf);
  flags.comp_implies_ginf = !holds(Condition::Comp) || holds(Condition::Ginf);
  flags.comp_implies_inf = !holds(Condition::Comp) || holds(Condition::Inf);
  return flags;
}

bool PairReport::any_holds() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const ConditionVerdict& v) { return v.holds(); });
}

PairReport full_report(const Effect& e, const Effect& f, bool run_oracle,
                       double tol, const OracleParams& params) {
  require_same_dim(e.dim(), f.dim(), "full_report");
  PairReport report;
  for (std::size_t k = 0; k < kAllConditions.size(); ++k)
    report.verdicts[k] = check_condition(kAllConditions[k], e, f, tol);
  report.implications = implication_flags(report.verdicts);
  if (run_oracle) report.oracle = decide_pair(e, f, params);
  return report;
}

}  // namespace coexist
