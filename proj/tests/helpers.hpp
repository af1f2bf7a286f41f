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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcsm/generate.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/oracle.hpp"

namespace testing_util {

using pcsm::Instance;
using pcsm::Rational;

inline std::vector<Rational> row(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline pcsm::LinearOracle linear(std::initializer_list<std::int64_t> w) {
  pcsm::LinearOracle o;
  o.weights = row(w);
  return o;
}

// One packing row and (optionally) one covering row.
inline Instance one_row(const pcsm::SubmodularOracle& f, std::vector<Rational> P, Rational p, std::vector<Rational> C = {},
                        std::optional<Rational> c = std::nullopt) {
  Instance inst;
  inst.n = f.ground_size();
  inst.objective = f;
  inst.packing = {std::move(P)};
  inst.pack_bound = {p};
  if (c) {
    inst.covering = {std::move(C)};
    inst.cover_bound = {*c};
  }
  inst.validate();
  return inst;
}

inline const char* family(int k) {
  static const char* names[] = {"linear", "coverage", "concave_of_modular"};
  return names[k % 3];
}

inline pcsm::GenSpec spec(int n, int p, int c, std::uint64_t seed, bool integer = true) {
  pcsm::GenSpec s;
  s.n = n;
  s.p = p;
  s.c = c;
  s.seed = seed;
  s.family = family(static_cast<int>(seed));
  s.integer = integer;
  return s;
}

}  // namespace testing_util
