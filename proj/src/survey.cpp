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

#include "coexist/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace coexist {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr std::array<OracleKind, 3> kOracleKinds = {
    OracleKind::Feasible, OracleKind::LikelyInfeasible,
    OracleKind::Undetermined};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

SurveyRow survey_pair(const SurveyConfig& config, std::uint64_t index) {
  std::mt19937_64 rng(stream_seed(config.seed, index));
  const Effect e = sample_effect(config.dim, rng);
  const Effect f = sample_effect(config.dim, rng);
  const PairReport report =
      full_report(e, f, config.run_oracle, config.tol, config.oracle);
  SurveyRow row;
  row.pair_id = index;
  row.dim = config.dim;
  for (std::size_t k = 0; k < kAllConditions.size(); ++k) {
    row.holds[k] = report.verdicts[k].holds();
    row.margin[k] = report.verdicts[k].margin;
  }
  if (report.oracle) row.oracle = report.oracle->kind;
  const auto& ginf = report.verdict(Condition::Ginf).witnesses;
  for (std::size_t k = 0; k < row.ginf_passed.size() && k < ginf.size(); ++k)
    row.ginf_passed[k] = ginf[k].passed;
  return row;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

Effect sample_effect(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw Error(ErrorCode::ParameterRange, "dim must be positive", dim);
  const auto d = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  GeneralMatrix b(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      b(i, j) = Complex(re, im);
    }
  }
  const double top = 1.0 - uniform(rng);
  const HermitianMatrix h(GeneralMatrix(b * b.adjoint()));
  return validate_effect(h * (top / max_eigenvalue(h)));
}

double SurveyStats::fraction(Condition c) const {
  if (n_pairs == 0) return 0.0;
  return static_cast<double>(holds_count[static_cast<std::size_t>(c)]) /
         static_cast<double>(n_pairs);
}

SurveyStats accumulate_stats(const std::vector<SurveyRow>& rows) {
  SurveyStats s;
  const auto idx = [](Condition c) { return static_cast<std::size_t>(c); };
  for (const auto& row : rows) {
    ++s.n_pairs;
    bool any = false;
    for (std::size_t k = 0; k < 5; ++k) {
      if (row.holds[k]) ++s.holds_count[k];
      any = any || row.holds[k];
    }
    if (any) ++s.any_holds;
    const auto h = [&](Condition c) { return row.holds[idx(c)]; };
    if ((h(Condition::Commu) && !h(Condition::Jor)) ||
        (h(Condition::Jor) && !h(Condition::Ginf)) ||
        (h(Condition::Comp) && !h(Condition::Ginf)) ||
        (h(Condition::Comp) && !h(Condition::Inf))) {
      ++s.implication_violations;
    }
    if (h(Condition::Inf) && !h(Condition::Ginf)) ++s.conjecture_violations;
    for (std::size_t k = 0; k < 4; ++k) {
      if (row.ginf_passed[k]) ++s.ginf_inequality_holds[k];
      // inequalities pair up as (0, 1) and (2, 3)
      if (!h(Condition::Ginf) && row.ginf_passed[k ^ 1]) ++s.ginf_sole_blocker[k];
    }
    if (row.oracle) {
      const auto o = static_cast<std::size_t>(*row.oracle);
      ++s.oracle_count[o];
      for (std::size_t k = 0; k < 5; ++k) ++s.confusion[k][row.holds[k] ? 0 : 1][o];
    }
  }
  return s;
}

SurveyResult run_survey(const SurveyConfig& config) {
  if (config.n_pairs < 1) {
    throw Error(ErrorCode::ParameterRange, "n_pairs must be at least 1");
  }
  if (config.dim < 2) {
    throw Error(ErrorCode::ParameterRange, "dim must be at least 2", config.dim);
  }
  SurveyResult result;
  result.rows.resize(config.n_pairs);

  unsigned threads = config.threads ? config.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, config.n_pairs));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.n_pairs; i = next++) {
      try {
        result.rows[i] = survey_pair(config, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.stats = accumulate_stats(result.rows);
  return result;
}

std::string csv_header() {
  std::string h = "pair_id,dim";
  for (auto c : kAllConditions) h += "," + lower(to_string(c));
  h += ",oracle";
  for (auto c : kAllConditions) h += "," + lower(to_string(c)) + "_margin";
  return h;
}

void write_csv(std::ostream& out, const SurveyConfig& config,
               const SurveyResult& result) {
  out << csv_header() << '\n';
  if (result.rows.empty()) return;
  for (const auto& row : result.rows) {
    out << row.pair_id << ',' << row.dim;
    for (bool h : row.holds) out << ',' << (h ? 1 : 0);
    out << ',' << (row.oracle ? to_string(*row.oracle) : "NONE");
    for (double m : row.margin) out << ',' << format_double(m);
    out << '\n';
  }

  const SurveyStats& s = result.stats;
  out << "# version=" << kVersion << '\n'
      << "# seed=" << config.seed << '\n'
      << "# dim=" << config.dim << '\n'
      << "# n_pairs=" << s.n_pairs << '\n'
      << "# tol=" << format_double(config.tol) << '\n'
      << "# oracle=" << (config.run_oracle ? "on" : "off") << '\n';
  if (config.run_oracle) {
    out << "# oracle_max_iters=" << config.oracle.max_iters << '\n'
        << "# oracle_feas_tol=" << format_double(config.oracle.feas_tol) << '\n'
        << "# oracle_infeas_tol=" << format_double(config.oracle.infeas_tol)
        << '\n'
        << "# oracle_restarts=" << config.oracle.restarts << '\n';
  }
  for (auto c : kAllConditions) {
    out << "# count_" << to_string(c) << '='
        << s.holds_count[static_cast<std::size_t>(c)] << " fraction_"
        << to_string(c) << '=' << format_double(s.fraction(c)) << '\n';
  }
  out << "# any_holds=" << s.any_holds << '\n'
      << "# implication_violations=" << s.implication_violations << '\n'
      << "# conjecture_inf_not_ginf=" << s.conjecture_violations << '\n';
  constexpr std::array<const char*, 4> ginf_labels = {"E^F", "Ec^Fc", "Ec^F",
                                                      "E^Fc"};
  for (std::size_t k = 0; k < 4; ++k) {
    out << "# ginf_" << ginf_labels[k] << " holds=" << s.ginf_inequality_holds[k]
        << " sole_blocker=" << s.ginf_sole_blocker[k] << '\n';
  }
  if (config.run_oracle) {
    for (std::size_t o = 0; o < 3; ++o)
      out << "# oracle_" << to_string(kOracleKinds[o]) << '=' << s.oracle_count[o]
          << '\n';
    for (std::size_t k = 0; k < 5; ++k) {
      for (std::size_t h = 0; h < 2; ++h) {
        out << "# confusion_" << to_string(kAllConditions[k]) << '_'
            << (h == 0 ? "HOLDS" : "FAILS");
        for (std::size_t o = 0; o < 3; ++o)
          out << ' ' << to_string(kOracleKinds[o]) << '=' << s.confusion[k][h][o];
        out << '\n';
      }
    }
  }
}

void emit_csv(const SurveyConfig& config, const SurveyResult& result,
              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  }
  write_csv(out, config, result);
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::vector<SurveyRow> parse_csv(std::istream& in) {
  std::vector<SurveyRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != csv_header()) throw Error(ErrorCode::Parse, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 13) {
      throw Error(ErrorCode::Parse, "expected 13 columns, got " +
                                        std::to_string(cells.size()));
    }
    SurveyRow row;
    row.pair_id = std::stoull(cells[0]);
    row.dim = std::stoi(cells[1]);
    for (std::size_t k = 0; k < 5; ++k) row.holds[k] = cells[2 + k] == "1";
    for (auto kind : kOracleKinds)
      if (cells[7] == to_string(kind)) row.oracle = kind;
    for (std::size_t k = 0; k < 5; ++k)
      row.margin[k] = std::strtod(cells[8 + k].c_str(), nullptr);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coexist
