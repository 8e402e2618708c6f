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

#include "coexist/effect_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace coexist {

using nlohmann::json;

namespace {

Eigen::MatrixXd parse_real_block(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw Error(ErrorCode::Parse, where + " must be a " + std::to_string(dim) +
                                      "x" + std::to_string(dim) + " array");
  }
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw Error(ErrorCode::Parse, where + " row " + std::to_string(i) +
                                        " must have " + std::to_string(dim) +
                                        " entries");
    }
    for (int k = 0; k < dim; ++k) {
      const json& x = row[static_cast<std::size_t>(k)];
      if (!x.is_number()) {
        throw Error(ErrorCode::Parse, where + " entries must be numbers");
      }
      m(i, k) = x.get<double>();
    }
  }
  return m;
}

json real_block(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const Effect& EffectFile::get(const std::string& name) const {
  for (const auto& [n, e] : effects)
    if (n == name) return e;
  throw Error(ErrorCode::Parse, "no effect named '" + name + "'");
}

EffectFile parse_effect_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw Error(ErrorCode::Parse, "document needs an integer \"dim\"");
  }
  EffectFile out;
  out.dim = doc["dim"].get<int>();
  if (out.dim < 1) throw Error(ErrorCode::Parse, "\"dim\" must be positive");
  if (!doc.contains("effects") || !doc["effects"].is_array()) {
    throw Error(ErrorCode::Parse, "document needs an \"effects\" array");
  }

  std::set<std::string> seen;
  for (const json& entry : doc["effects"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
      throw Error(ErrorCode::Parse, "each effect needs a string \"name\"");
    }
    const std::string name = entry["name"].get<std::string>();
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::Parse, "duplicate effect name '" + name + "'");
    }
    if (!entry.contains("re") || !entry.contains("im")) {
      throw Error(ErrorCode::Parse, "effect '" + name + "' needs \"re\" and \"im\"");
    }
    const Eigen::MatrixXd re =
        parse_real_block(entry["re"], out.dim, "effect '" + name + "' re");
    const Eigen::MatrixXd im =
        parse_real_block(entry["im"], out.dim, "effect '" + name + "' im");
    GeneralMatrix m(out.dim, out.dim);
    m.real() = re;
    m.imag() = im;
    try {
      out.effects.emplace_back(name, validate_effect(m));
    } catch (const Error& ex) {
      throw Error(ex.code(), "effect '" + name + "': " + ex.detail(), ex.witness());
    }
  }
  return out;
}

EffectFile read_effect_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_effect_file(buf.str());
}

std::string dump_effect_file(const EffectFile& file) {
  json doc;
  doc["dim"] = file.dim;
  doc["effects"] = json::array();
  for (const auto& [name, effect] : file.effects) {
    const GeneralMatrix& m = effect.matrix().matrix();
    doc["effects"].push_back({{"name", name},
                              {"re", real_block(m.real())},
                              {"im", real_block(m.imag())}});
  }
  return doc.dump(2) + "\n";
}

void write_effect_file(const EffectFile& file, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << dump_effect_file(file);
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace coexist
