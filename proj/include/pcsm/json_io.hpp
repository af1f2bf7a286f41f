// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcsm/errors.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/kmedian.hpp"
#include "pcsm/rational.hpp"

namespace pcsm {

using json = nlohmann::json;

// Integers serialize as JSON numbers, everything else as an exact "a/b" string.
inline json to_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.to_string();
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return Rational::parse(j.dump());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InputError("expected a number or rational string, got " + j.dump());
}

inline json to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
  Matrix out;
  for (const auto& row : j) out.push_back(rationals_from_json(row));
  return out;
}

inline json to_json(const Subset& s) { return s.elements(); }

inline json to_json(const SubmodularOracle& oracle) {
  json out;
  out["kind"] = oracle.kind();
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearOracle>) {
          out["weights"] = to_json(o.weights);
        } else if constexpr (std::is_same_v<T, CoverageOracle>) {
          out["universe"] = o.universe;
          out["element_sets"] = o.element_sets;
          out["universe_weights"] = to_json(o.universe_weights);
        } else {
          out["weights"] = to_json(o.weights);
          out["cap"] = to_json(o.cap);
        }
      },
      oracle.variant());
  return out;
}

inline SubmodularOracle oracle_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") return LinearOracle{rationals_from_json(j.at("weights"))};
    if (kind == "coverage") {
      CoverageOracle o;
      o.universe = j.at("universe").get<int>();
      o.element_sets = j.at("element_sets").get<std::vector<std::vector<int>>>();
      o.universe_weights = rationals_from_json(j.at("universe_weights"));
      return o;
    }
    if (kind == "concave_of_modular")
      return ConcaveOfModularOracle{rationals_from_json(j.at("weights")), rational_from_json(j.at("cap"))};
    throw InputError("unknown objective kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InputError(std::string("objective: ") + e.what());
  }
}

inline json to_json(const Instance& inst) {
  json out;
  out["n"] = inst.n;
  out["packing"] = to_json(inst.packing);
  out["covering"] = to_json(inst.covering);
  out["pack_bound"] = to_json(inst.pack_bound);
  out["cover_bound"] = to_json(inst.cover_bound);
  out["objective"] = to_json(inst.objective);
  return out;
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.packing = matrix_from_json(j.value("packing", json::array()));
    inst.covering = matrix_from_json(j.value("covering", json::array()));
    inst.pack_bound = rationals_from_json(j.value("pack_bound", json::array()));
    inst.cover_bound = rationals_from_json(j.value("cover_bound", json::array()));
    inst.objective = oracle_from_json(j.at("objective"));
  } catch (const json::exception& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

// 64-bit FNV-1a of the canonical JSON text, as 16 hex digits.
inline std::string instance_digest(const Instance& inst) {
  const std::string text = to_json(inst).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) h = (h ^ ch) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json to_json(const TwoDistInstance& inst) {
  json out;
  out["facilities"] = json::array();
  for (int u : inst.caps) out["facilities"].push_back({{"cap", u}});
  out["clients"] = inst.clients;
  out["dist_a_pairs"] = json::array();
  for (const auto& [j, i] : inst.a_pairs) out["dist_a_pairs"].push_back({j, i});
  out["a"] = to_json(inst.a);
  out["b"] = to_json(inst.b);
  out["k"] = inst.k;
  return out;
}

inline TwoDistInstance kmedian_from_json(const json& j) {
  TwoDistInstance inst;
  try {
    for (const auto& f : j.at("facilities")) inst.caps.push_back(f.at("cap").get<int>());
    inst.clients = j.at("clients").get<int>();
    for (const auto& pr : j.at("dist_a_pairs")) {
      if (!pr.is_array() || pr.size() != 2) throw InputError("dist_a_pairs entries must be [client, facility]");
      inst.a_pairs.emplace_back(pr[0].get<int>(), pr[1].get<int>());
    }
    inst.a = rational_from_json(j.at("a"));
    inst.b = rational_from_json(j.at("b"));
    inst.k = j.at("k").get<int>();
  } catch (const json::exception& e) {
    throw InputError(std::string("kmedian instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace pcsm
