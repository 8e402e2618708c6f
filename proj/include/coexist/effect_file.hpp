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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "coexist/effects.hpp"

namespace coexist {

/// JSON document of the form
///
///   {"dim": 2,
///    "effects": [{"name": "E", "re": [[...], ...], "im": [[...], ...]}, ...]}
///
/// Names are unique; every matrix must be dim x dim and a valid effect.
struct EffectFile {
  int dim = 0;
  std::vector<std::pair<std::string, Effect>> effects;

  const Effect& get(const std::string& name) const;
};

/// Errors are ErrorCode::Parse, or the validation error of the offending
/// effect with its name prefixed to the message.
EffectFile parse_effect_file(const std::string& text);
EffectFile read_effect_file(const std::filesystem::path& path);

/// Numbers are written with 17 significant digits so the file re-parses to
/// bit-identical matrices.
std::string dump_effect_file(const EffectFile& file);
void write_effect_file(const EffectFile& file, const std::filesystem::path& path);

}  // namespace coexist
