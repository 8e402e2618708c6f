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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coexist/conditions.hpp"

namespace coexist {

inline constexpr const char* kVersion = "0.1.0";

/// Seed for the generator of pair `index` in a run seeded with `seed`.
/// A SplitMix64 mix of both, so streams do not depend on scheduling.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Ginibre sample H = B B*, rescaled so its top eigenvalue is u ~ U(0, 1].
Effect sample_effect(int dim, std::mt19937_64& rng);

struct SurveyRow {
  std::uint64_t pair_id = 0;
  int dim = 0;
  std::array<bool, 5> holds{};    // indexed like kAllConditions
  std::array<double, 5> margin{}; // ConditionVerdict::margin per condition
  std::optional<OracleKind> oracle;
  /// Which of the four GINF inequalities held, in the order
  /// E^F, E'^F', E'^F, E^F'. Not part of the CSV columns.
  std::array<bool, 4> ginf_passed{};
};

struct SurveyStats {
  std::size_t n_pairs = 0;
  std::array<std::size_t, 5> holds_count{};
  std::size_t any_holds = 0;
  std::size_t implication_violations = 0;
  /// INF holds while GINF fails.
  std::size_t conjecture_violations = 0;
  /// [condition][holds ? 0 : 1][oracle kind]
  std::array<std::array<std::array<std::size_t, 3>, 2>, 5> confusion{};
  std::array<std::size_t, 3> oracle_count{};
  /// Per GINF inequality: pairs where it held, and pairs where GINF fails
  /// but would hold if that inequality alone were dropped.
  std::array<std::size_t, 4> ginf_inequality_holds{};
  std::array<std::size_t, 4> ginf_sole_blocker{};

  double fraction(Condition c) const;
};

struct SurveyConfig {
  int dim = 2;
  std::size_t n_pairs = 100;
  std::uint64_t seed = 0;
  bool run_oracle = false;
  double tol = kDefaultTol;
  OracleParams oracle;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SurveyResult {
  std::vector<SurveyRow> rows;
  SurveyStats stats;
};

/// Rows come back ordered by pair index, bit-identical for a given config
/// regardless of thread count.
SurveyResult run_survey(const SurveyConfig& config);

SurveyStats accumulate_stats(const std::vector<SurveyRow>& rows);

/// Header, one line per row, then '#' metadata and statistics lines.
void write_csv(std::ostream& out, const SurveyConfig& config,
               const SurveyResult& result);
/// Throws ErrorCode::Io naming the path when it cannot be written.
void emit_csv(const SurveyConfig& config, const SurveyResult& result,
              const std::filesystem::path& path);

/// Parses rows back from survey CSV text, skipping '#' lines.
std::vector<SurveyRow> parse_csv(std::istream& in);

std::string csv_header();

}  // namespace coexist
