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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coexist/conditions.hpp"
#include "coexist/effects.hpp"
#include "coexist/exemplars.hpp"
#include "coexist/oracle.hpp"
#include "coexist/survey.hpp"

namespace py = pybind11;
using namespace coexist;

namespace {

HermitianMatrix herm(const GeneralMatrix& m) { return HermitianMatrix(m); }

py::object witness_to_py(const std::optional<CoexWitness>& w) {
  if (!w) return py::none();
  if (const auto* single = std::get_if<SingleGWitness>(&*w)) {
    py::dict d;
    d["g"] = single->g.matrix();
    return d;
  }
  const auto& four = std::get<FourTermWitness>(*w);
  py::dict d;
  d["g11"] = four.g11.matrix();
  d["g12"] = four.g12.matrix();
  d["g21"] = four.g21.matrix();
  d["g22"] = four.g22.matrix();
  return d;
}

py::dict stats_to_py(const SurveyStats& s) {
  py::dict d;
  d["n_pairs"] = s.n_pairs;
  py::dict fractions;
  for (Condition c : kAllConditions) fractions[py::str(std::string(to_string(c)))] = s.fraction(c);
  d["fraction"] = fractions;
  d["any_holds"] = s.any_holds;
  d["implication_violations"] = s.implication_violations;
  d["conjecture_violations"] = s.conjecture_violations;
  py::dict oracle;
  for (OracleKind k : {OracleKind::Feasible, OracleKind::LikelyInfeasible, OracleKind::Undetermined})
    oracle[py::str(std::string(to_string(k)))] = s.oracle_count[static_cast<std::size_t>(k)];
  d["oracle"] = oracle;
  return d;
}

}  // namespace

PYBIND11_MODULE(_coexist, m) {
  m.doc() = "Coexistence (joint measurability) of quantum effects";
  m.attr("__version__") = kVersion;

  // Held as a plain handle: the module keeps the type alive.
  static PyObject* error_type =
      py::exception<Error>(m, "CoexistError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("detail") = e.detail();
      inst.attr("witness") = e.witness() ? py::cast(*e.witness()) : py::none();
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  // effects
  py::class_<Effect>(m, "Effect")
      .def(py::init([](const GeneralMatrix& a) { return validate_effect(a); }), py::arg("matrix"))
      .def_property_readonly("matrix", [](const Effect& e) { return e.matrix().matrix(); })
      .def_property_readonly("complement_matrix",
                             [](const Effect& e) { return e.complement_matrix().matrix(); })
      .def_property_readonly("dim", &Effect::dim)
      .def("complement", &Effect::complement)
      .def("__repr__", [](const Effect& e) {
        std::ostringstream os;
        os << "Effect(dim=" << e.dim() << ")";
        return os.str();
      });

  m.def("leq", &leq, py::arg("e"), py::arg("f"), py::arg("tol") = kDefaultTol);
  m.def("comparable", &comparable, py::arg("e"), py::arg("f"), py::arg("tol") = kDefaultTol);
  m.def("jordan_product", [](const Effect& e, const Effect& f) { return jordan_product(e, f).matrix(); });
  m.def("generalized_infimum",
        [](const Effect& e, const Effect& f) { return generalized_infimum(e, f).matrix(); });
  m.def("range_projector",
        [](const Effect& e, double rank_tol) { return range_projector(e, rank_tol).matrix(); },
        py::arg("e"), py::arg("rank_tol") = kRankTol);
  m.def("infimum_with_projection",
        [](const Effect& e, const GeneralMatrix& p) { return infimum_with_projection(e, herm(p)); },
        py::arg("e"), py::arg("p"));
  m.def(
      "infimum",
      [](const Effect& e, const Effect& f, double tol) -> py::object {
        const InfimumResult r = infimum(e, f, tol);
        if (!r.value) return py::none();
        return py::cast(*r.value);
      },
      py::arg("e"), py::arg("f"), py::arg("tol") = kDefaultTol,
      "The effect infimum, or None when it does not exist.");

  // conditions
  py::enum_<Condition>(m, "Condition")
      .value("COMMU", Condition::Commu)
      .value("COMP", Condition::Comp)
      .value("INF", Condition::Inf)
      .value("JOR", Condition::Jor)
      .value("GINF", Condition::Ginf);

  py::class_<ConditionVerdict>(m, "ConditionVerdict")
      .def_property_readonly("condition", [](const ConditionVerdict& v) { return v.condition; })
      .def_property_readonly("holds", &ConditionVerdict::holds)
      .def_readonly("branch", &ConditionVerdict::branch)
      .def_readonly("margin", &ConditionVerdict::margin)
      .def_property_readonly("witnesses",
                             [](const ConditionVerdict& v) {
                               py::list out;
                               for (const auto& w : v.witnesses)
                                 out.append(py::make_tuple(w.label, w.value, w.passed));
                               return out;
                             })
      .def_property_readonly("witness",
                             [](const ConditionVerdict& v) { return witness_to_py(v.witness); });

  m.def("check", &check_condition, py::arg("condition"), py::arg("e"), py::arg("f"),
        py::arg("tol") = kDefaultTol);
  m.def(
      "jordan_multi",
      [](const std::vector<Effect>& effects, double tol) {
        const MultiJordanVerdict v = check_jor_multi(effects, tol);
        return py::make_tuple(v.holds(), v.min_eigenvalue, v.worst_pattern);
      },
      py::arg("effects"), py::arg("tol") = kDefaultTol,
      "Returns (holds, min eigenvalue, worst complement pattern).");
  m.def(
      "verify_witness",
      [](const Effect& e, const Effect& f, const GeneralMatrix& g, double tol) {
        return verify_witness(e, f, SingleGWitness{herm(g)}, tol).violations;
      },
      py::arg("e"), py::arg("f"), py::arg("g"), py::arg("tol") = 1e-6,
      "Violated inequalities of a single-G witness; empty when it certifies coexistence.");

  // oracle
  py::enum_<OracleKind>(m, "OracleKind")
      .value("FEASIBLE", OracleKind::Feasible)
      .value("LIKELY_INFEASIBLE", OracleKind::LikelyInfeasible)
      .value("UNDETERMINED", OracleKind::Undetermined);

  py::class_<OracleParams>(m, "OracleParams")
      .def(py::init<>())
      .def_readwrite("max_iters", &OracleParams::max_iters)
      .def_readwrite("feas_tol", &OracleParams::feas_tol)
      .def_readwrite("infeas_tol", &OracleParams::infeas_tol)
      .def_readwrite("restarts", &OracleParams::restarts);

  py::class_<OracleOutcome>(m, "OracleOutcome")
      .def_readonly("kind", &OracleOutcome::kind)
      .def_property_readonly("witness_g", [](const OracleOutcome& o) { return o.witness_g.matrix(); })
      .def_readonly("residual", &OracleOutcome::residual)
      .def_readonly("iterations", &OracleOutcome::iterations)
      .def_readonly("restart", &OracleOutcome::restart)
      .def_readonly("monotone", &OracleOutcome::monotone);

  m.def("decide_pair", &decide_pair, py::arg("e"), py::arg("f"),
        py::arg("params") = OracleParams{});

  py::class_<PairReport>(m, "PairReport")
      .def("verdict", &PairReport::verdict, py::arg("condition"))
      .def_property_readonly("any_holds", &PairReport::any_holds)
      .def_readonly("oracle", &PairReport::oracle)
      .def_property_readonly("implications_ok",
                             [](const PairReport& r) { return r.implications.all(); });

  m.def("full_report", &full_report, py::arg("e"), py::arg("f"), py::arg("run_oracle") = false,
        py::arg("tol") = kDefaultTol, py::arg("params") = OracleParams{});

  // exemplars
  m.def("qubit_effect", &qubit_effect, py::arg("alpha"), py::arg("bloch"));
  m.def(
      "busch_criterion",
      [](const Bloch& e, const Bloch& f) {
        const ExactCriterion c = busch_criterion(e, f);
        return py::make_tuple(c.coexistent, c.margin);
      },
      py::arg("e"), py::arg("f"));
  m.def(
      "liu_criterion",
      [](double e_norm, double f_norm, double beta) {
        const ExactCriterion c = liu_criterion(e_norm, f_norm, beta);
        return py::make_tuple(c.coexistent, c.margin);
      },
      py::arg("e_norm"), py::arg("f_norm"), py::arg("beta"));
  m.def("liu_pair", &liu_pair, py::arg("e_norm"), py::arg("f_norm"), py::arg("beta"));
  m.def(
      "mub_pair", [](int d, double lambda) { return mub_pair({d, lambda}); }, py::arg("d"),
      py::arg("lam"));
  m.def("lambda_max", &lambda_max, py::arg("d"));
  m.def("lambda_jor", &lambda_jor, py::arg("d"));

  // survey
  m.def(
      "survey",
      [](int dim, std::size_t n_pairs, std::uint64_t seed, bool run_oracle, unsigned threads) {
        SurveyConfig config;
        config.dim = dim;
        config.n_pairs = n_pairs;
        config.seed = seed;
        config.run_oracle = run_oracle;
        config.threads = threads;
        SurveyResult result;
        {
          py::gil_scoped_release release;
          result = run_survey(config);
        }
        std::ostringstream csv;
        write_csv(csv, config, result);
        return py::make_tuple(stats_to_py(result.stats), csv.str());
      },
      py::arg("dim"), py::arg("n_pairs"), py::arg("seed") = 0, py::arg("run_oracle") = false,
      py::arg("threads") = 0, "Returns (stats dict, CSV text).");
}
