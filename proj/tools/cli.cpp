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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "coexist/conditions.hpp"
#include "coexist/effect_file.hpp"
#include "coexist/exemplars.hpp"
#include "coexist/survey.hpp"
#include "json.hpp"

namespace coexist::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int exit_code_for(const PairReport& report) {
  if (report.any_holds()) return kExitCoexistent;
  if (report.oracle) {
    if (report.oracle->kind == OracleKind::Feasible) return kExitCoexistent;
    if (report.oracle->kind == OracleKind::LikelyInfeasible) return kExitIncompatible;
  }
  return kExitUnresolved;
}

json oracle_json(const OracleOutcome& o) {
  return {{"kind", std::string(to_string(o.kind))},
          {"residual", o.residual},
          {"iterations", o.iterations},
          {"restart", o.restart}};
}

json report_json(const PairReport& report) {
  json verdicts = json::array();
  for (const auto& v : report.verdicts) {
    json witnesses = json::array();
    for (const auto& w : v.witnesses)
      witnesses.push_back({{"label", w.label}, {"value", w.value}});
    verdicts.push_back({{"condition", std::string(to_string(v.condition))},
                        {"status", std::string(to_string(v.status))},
                        {"branch", v.branch},
                        {"witnesses", witnesses}});
  }
  const auto& imp = report.implications;
  json doc = {{"verdicts", verdicts},
              {"implications",
               {{"COMMU=>JOR", imp.commu_implies_jor},
                {"JOR=>GINF", imp.jor_implies_ginf},
                {"COMP=>GINF", imp.comp_implies_ginf},
                {"COMP=>INF", imp.comp_implies_inf}}}};
  if (report.oracle) doc["oracle"] = oracle_json(*report.oracle);
  return doc;
}

void print_report(std::ostream& out, const PairReport& report) {
  for (const auto& v : report.verdicts) {
    out << std::left << std::setw(6) << to_string(v.condition) << ' '
        << to_string(v.status);
    if (!v.branch.empty()) out << "  [" << v.branch << "]";
    out << '\n';
    for (const auto& w : v.witnesses)
      out << "    " << w.label << " = " << num(w.value) << '\n';
  }
  const auto& imp = report.implications;
  const auto ok = [](bool b) { return b ? "ok" : "VIOLATED"; };
  out << "implications: COMMU=>JOR " << ok(imp.commu_implies_jor)
      << ", JOR=>GINF " << ok(imp.jor_implies_ginf) << ", COMP=>GINF "
      << ok(imp.comp_implies_ginf) << ", COMP=>INF " << ok(imp.comp_implies_inf)
      << '\n';
  if (report.oracle) {
    const auto& o = *report.oracle;
    out << "oracle: " << to_string(o.kind) << " residual=" << num(o.residual)
        << " iterations=" << o.iterations << '\n';
  }
}

struct CommonOptions {
  double tol = kDefaultTol;
  bool oracle = false;
  bool as_json = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_oracle = true) {
  cmd->add_option("--tol", o.tol, "relative PSD tolerance")->check(CLI::PositiveNumber);
  if (with_oracle) cmd->add_flag("--oracle", o.oracle, "also run the feasibility oracle");
  cmd->add_flag("--json", o.as_json, "emit one JSON document");
}

int emit_pair(std::ostream& out, const CommonOptions& o, const PairReport& report,
              json extra, const std::string& preamble) {
  const int code = exit_code_for(report);
  if (o.as_json) {
    json doc = report_json(report);
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    doc["exit_code"] = code;
    out << doc.dump(2) << '\n';
  } else {
    out << preamble;
    print_report(out, report);
  }
  return code;
}

Bloch to_bloch(const std::vector<double>& v) { return Bloch(v[0], v[1], v[2]); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide and certify coexistence of quantum effects", "coexist"};
  app.require_subcommand(1);

  // check
  CommonOptions check_opts;
  std::string check_file;
  std::vector<std::string> check_names;
  auto* check = app.add_subcommand("check", "run all conditions on two effects of a file");
  check->add_option("file", check_file, "effect file (JSON)")->required();
  check->add_option("names", check_names, "two effect names")->required()->expected(2);
  add_common(check, check_opts);

  // qubit
  CommonOptions qubit_opts;
  std::vector<double> qe, qf;
  double alpha = 1.0, beta = 1.0;
  std::string qubit_save;
  auto* qubit = app.add_subcommand("qubit", "qubit effects (alpha I + v.sigma)/2");
  qubit->add_option("--e", qe, "Bloch vector of E as x,y,z")->required()->delimiter(',')->expected(3);
  qubit->add_option("--f", qf, "Bloch vector of F as x,y,z")->required()->delimiter(',')->expected(3);
  qubit->add_option("--alpha", alpha, "trace weight of E");
  qubit->add_option("--beta", beta, "trace weight of F");
  qubit->add_option("--save", qubit_save, "write the pair as an effect file");
  add_common(qubit, qubit_opts);

  // mub
  CommonOptions mub_opts;
  int mub_dim = 2;
  std::optional<double> mub_lambda;
  std::optional<int> mub_scan;
  std::string mub_save;
  auto* mub = app.add_subcommand("mub", "noisy mutually unbiased pair");
  mub->add_option("--dim", mub_dim, "Hilbert space dimension")->required();
  auto* lambda_opt = mub->add_option("--lambda", mub_lambda, "mixing weight in [0,1]");
  auto* scan_opt = mub->add_option("--scan", mub_scan, "number of evenly spaced lambda values");
  lambda_opt->excludes(scan_opt);
  mub->add_option("--save", mub_save, "write the pair as an effect file (with --lambda)");
  add_common(mub, mub_opts);

  // multi
  CommonOptions multi_opts;
  std::string multi_file;
  std::vector<std::string> multi_names;
  auto* multi = app.add_subcommand("multi", "symmetrized Jordan check for n effects");
  multi->add_option("file", multi_file, "effect file (JSON)")->required();
  multi->add_option("names", multi_names, "effect names (1 to 8)")->required();
  add_common(multi, multi_opts, false);

  // survey
  SurveyConfig survey_cfg;
  std::string survey_out;
  auto* survey = app.add_subcommand("survey", "random-pair condition coverage survey");
  survey->add_option("--dim", survey_cfg.dim, "dimension")->required();
  survey->add_option("--samples", survey_cfg.n_pairs, "number of pairs")->required();
  survey->add_option("--seed", survey_cfg.seed, "RNG seed")->required();
  survey->add_option("--out", survey_out, "CSV output path")->required();
  survey->add_flag("--oracle", survey_cfg.run_oracle, "run the feasibility oracle per pair");
  survey->add_option("--tol", survey_cfg.tol, "relative PSD tolerance")->check(CLI::PositiveNumber);
  survey->add_option("--threads", survey_cfg.threads, "worker threads (0 = all cores)");

  // oracle
  CommonOptions oracle_opts;
  std::string oracle_file;
  std::vector<std::string> oracle_names;
  OracleParams oracle_params;
  auto* oracle = app.add_subcommand("oracle", "feasibility oracle only");
  oracle->add_option("file", oracle_file, "effect file (JSON)")->required();
  oracle->add_option("names", oracle_names, "two effect names")->required()->expected(2);
  oracle->add_option("--max-iters", oracle_params.max_iters, "iterations per restart");
  oracle->add_option("--feas-tol", oracle_params.feas_tol, "feasibility threshold");
  oracle->add_option("--infeas-tol", oracle_params.infeas_tol, "infeasibility threshold");
  oracle->add_option("--restarts", oracle_params.restarts, "number of start points (1-3)");
  oracle->add_flag("--json", oracle_opts.as_json, "emit one JSON document");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check) {
      const EffectFile file = read_effect_file(check_file);
      const Effect& e = file.get(check_names[0]);
      const Effect& f = file.get(check_names[1]);
      const PairReport report = full_report(e, f, check_opts.oracle, check_opts.tol);
      return emit_pair(out, check_opts, report, json::object(),
                       "pair " + check_names[0] + ", " + check_names[1] + "\n");
    }

    if (*qubit) {
      const Bloch ev = to_bloch(qe);
      const Bloch fv = to_bloch(qf);
      const Effect e = qubit_effect(alpha, ev);
      const Effect f = qubit_effect(beta, fv);
      if (!qubit_save.empty())
        write_effect_file({2, {{"E", e}, {"F", f}}}, qubit_save);

      json extra = json::object();
      std::string preamble;
      if (alpha == 1.0 && beta == 1.0) {
        const auto c = busch_criterion(ev, fv);
        extra["busch"] = {{"coexistent", c.coexistent}, {"margin", c.margin}};
        preamble += std::string("exact (unbiased pair): ") +
                    (c.coexistent ? "coexistent" : "not coexistent") +
                    ", margin " + num(c.margin) + "\n";
      }
      const bool orthogonal = std::abs(ev.dot(fv)) <= 1e-12;
      if (orthogonal && (alpha == 1.0 || beta == 1.0)) {
        // The unbiased effect plays the role of E in the criterion.
        const double unbiased_norm = alpha == 1.0 ? ev.norm() : fv.norm();
        const double biased_norm = alpha == 1.0 ? fv.norm() : ev.norm();
        const double bias = alpha == 1.0 ? beta : alpha;
        const auto c = liu_criterion(unbiased_norm, biased_norm, bias);
        extra["liu"] = {{"coexistent", c.coexistent}, {"margin", c.margin}};
        preamble += std::string("exact (orthogonal, one unbiased): ") +
                    (c.coexistent ? "coexistent" : "not coexistent") +
                    ", margin " + num(c.margin) + "\n";
      }
      const PairReport report = full_report(e, f, qubit_opts.oracle, qubit_opts.tol);
      return emit_pair(out, qubit_opts, report, extra, preamble);
    }

    if (*mub) {
      const double l_jor = lambda_jor(mub_dim);
      const double l_max = lambda_max(mub_dim);
      if (mub_scan) {
        const int steps = *mub_scan;
        if (steps < 2) throw Error(ErrorCode::ParameterRange, "--scan needs at least 2 steps", steps);
        json rows = json::array();
        std::optional<double> last_jor_hold, first_jor_fail;
        if (!mub_opts.as_json) {
          out << "lambda_jor=" << num(l_jor) << " lambda_max=" << num(l_max) << '\n'
              << "lambda        COMMU COMP  INF   JOR   GINF\n";
        }
        for (int k = 0; k < steps; ++k) {
          const double lambda = static_cast<double>(k) / (steps - 1);
          const auto [e, f] = mub_pair({mub_dim, lambda});
          json row = {{"lambda", lambda}};
          if (!mub_opts.as_json) out << std::left << std::setw(13) << num(lambda);
          for (auto c : kAllConditions) {
            const bool holds = check_condition(c, e, f, mub_opts.tol).holds();
            row[std::string(to_string(c))] = holds;
            if (c == Condition::Jor) {
              if (holds && !first_jor_fail) last_jor_hold = lambda;
              if (!holds && !first_jor_fail) first_jor_fail = lambda;
            }
            if (!mub_opts.as_json) out << std::setw(6) << (holds ? "HOLDS" : "FAILS");
          }
          if (!mub_opts.as_json) out << '\n';
          rows.push_back(row);
        }
        if (mub_opts.as_json) {
          json doc = {{"dim", mub_dim}, {"lambda_jor", l_jor}, {"lambda_max", l_max},
                      {"scan", rows}};
          if (last_jor_hold && first_jor_fail)
            doc["jor_flip"] = {*last_jor_hold, *first_jor_fail};
          out << doc.dump(2) << '\n';
        } else if (last_jor_hold && first_jor_fail) {
          out << "JOR flips between lambda=" << num(*last_jor_hold) << " and "
              << num(*first_jor_fail) << '\n';
        }
        return kExitCoexistent;
      }
      if (!mub_lambda) throw Error(ErrorCode::ParameterRange, "mub needs --lambda or --scan");
      const auto [e, f] = mub_pair({mub_dim, *mub_lambda});
      if (!mub_save.empty())
        write_effect_file({mub_dim, {{"E", e}, {"F", f}}}, mub_save);
      const PairReport report = full_report(e, f, mub_opts.oracle, mub_opts.tol);
      const json extra = {{"dim", mub_dim}, {"lambda", *mub_lambda},
                          {"lambda_jor", l_jor}, {"lambda_max", l_max}};
      const std::string preamble = "dim=" + std::to_string(mub_dim) + " lambda=" +
                                   num(*mub_lambda) + " lambda_jor=" + num(l_jor) +
                                   " lambda_max=" + num(l_max) + "\n";
      return emit_pair(out, mub_opts, report, extra, preamble);
    }

    if (*multi) {
      const EffectFile file = read_effect_file(multi_file);
      std::vector<Effect> effects;
      for (const auto& name : multi_names) effects.push_back(file.get(name));
      const MultiJordanVerdict v = check_jor_multi(effects, multi_opts.tol);
      const int code = v.holds() ? kExitCoexistent : kExitUnresolved;
      if (multi_opts.as_json) {
        json doc = {{"status", std::string(to_string(v.status))},
                    {"min_eigenvalue", v.min_eigenvalue},
                    {"worst_pattern", v.worst_pattern},
                    {"exit_code", code}};
        out << doc.dump(2) << '\n';
      } else {
        out << "JOR(n=" << effects.size() << ") " << to_string(v.status)
            << "  min eigenvalue " << num(v.min_eigenvalue) << " at pattern ";
        for (int p : v.worst_pattern) out << p;
        out << '\n';
      }
      return code;
    }

    if (*survey) {
      const SurveyResult result = run_survey(survey_cfg);
      emit_csv(survey_cfg, result, survey_out);
      const SurveyStats& s = result.stats;
      out << "pairs=" << s.n_pairs << " dim=" << survey_cfg.dim << " seed=" << survey_cfg.seed
          << '\n';
      for (auto c : kAllConditions) {
        out << std::left << std::setw(6) << to_string(c) << ' '
            << s.holds_count[static_cast<std::size_t>(c)] << " (" << num(s.fraction(c))
            << ")\n";
      }
      out << "implication violations: " << s.implication_violations << '\n'
          << "INF without GINF: " << s.conjecture_violations << '\n';
      if (survey_cfg.run_oracle) {
        out << "oracle: FEASIBLE=" << s.oracle_count[0]
            << " LIKELY_INFEASIBLE=" << s.oracle_count[1]
            << " UNDETERMINED=" << s.oracle_count[2] << '\n';
      }
      out << "wrote " << survey_out << '\n';
      return kExitCoexistent;
    }

    if (*oracle) {
      const EffectFile file = read_effect_file(oracle_file);
      const OracleOutcome o =
          decide_pair(file.get(oracle_names[0]), file.get(oracle_names[1]), oracle_params);
      const int code = o.kind == OracleKind::Feasible          ? kExitCoexistent
                       : o.kind == OracleKind::LikelyInfeasible ? kExitIncompatible
                                                                 : kExitUnresolved;
      if (oracle_opts.as_json) {
        json doc = oracle_json(o);
        doc["exit_code"] = code;
        out << doc.dump(2) << '\n';
      } else {
        out << "oracle: " << to_string(o.kind) << " residual=" << num(o.residual)
            << " iterations=" << o.iterations << '\n';
      }
      return code;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace coexist::cli
