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
#include <random>
#include <string>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/oracle.hpp"

namespace pcsm {

struct GenSpec {
  int n = 8;
  int p = 1;
  int c = 1;
  std::string family = "linear";  // linear | coverage | concave_of_modular
  double density = 0.7;
  std::uint64_t seed = 1;
  bool integer = true;
};

namespace detail {

// Uniform integer in [lo, hi]. Written out instead of using
// std::uniform_int_distribution so the stream is identical on every platform.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline bool coin(std::mt19937_64& rng, double prob) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < prob;
}

}  // namespace detail

// Random instance with a planted feasible set T: bounds are derived from the
// row sums over T, so T (and hence some subset) is always feasible.
inline Instance generate_instance(const GenSpec& spec) {
  if (spec.n < 0 || spec.p < 0 || spec.c < 0) throw InputError("gen: n, p and c must be non-negative");
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw InputError("gen: density must lie in [0, 1]");
  if (spec.family != "linear" && spec.family != "coverage" && spec.family != "concave_of_modular")
    throw InputError("gen: unknown family '" + spec.family + "'");
  std::mt19937_64 rng(spec.seed);
  const int n = spec.n;
  auto entry = [&]() -> Rational {
    if (!detail::coin(rng, spec.density)) return Rational(0);
    const std::int64_t num = detail::draw(rng, 1, 9);
    if (spec.integer) return Rational(num);
    return Rational(num, detail::draw(rng, 1, 4));
  };

  Instance inst;
  inst.n = n;
  for (int i = 0; i < spec.p; ++i) {
    inst.packing.emplace_back();
    for (int e = 0; e < n; ++e) inst.packing.back().push_back(entry());
  }
  for (int j = 0; j < spec.c; ++j) {
    inst.covering.emplace_back();
    for (int e = 0; e < n; ++e) inst.covering.back().push_back(entry());
  }

  std::vector<int> planted;
  for (int e = 0; e < n; ++e)
    if (detail::coin(rng, 0.5)) planted.push_back(e);
  if (planted.empty() && n > 0) planted.push_back(static_cast<int>(detail::draw(rng, 0, n - 1)));

  for (auto& row : inst.covering) {
    Rational sum;
    for (int e : planted) sum += row[e];
    if (sum == Rational(0) && !planted.empty()) {
      const int e = planted[detail::draw(rng, 0, static_cast<std::int64_t>(planted.size()) - 1)];
      row[e] = Rational(detail::draw(rng, 1, 9));
      sum = row[e];
    }
    Rational bound = sum - Rational(detail::draw(rng, 0, 2));
    if (bound < Rational(0)) bound = Rational(0);
    if (!spec.integer) bound = Rational(bound.floor());
    inst.cover_bound.push_back(bound);
  }
  for (const auto& row : inst.packing) {
    Rational sum;
    for (int e : planted) sum += row[e];
    Rational bound = sum + Rational(detail::draw(rng, 0, 2));
    if (!spec.integer) bound = Rational(bound.ceil());
    if (bound == Rational(0)) bound = Rational(1);
    inst.pack_bound.push_back(bound);
  }

  if (spec.family == "linear") {
    LinearOracle o;
    for (int e = 0; e < n; ++e) o.weights.emplace_back(detail::draw(rng, 1, 9));
    inst.objective = o;
  } else if (spec.family == "coverage") {
    CoverageOracle o;
    o.universe = std::max(1, n);
    for (int e = 0; e < n; ++e) {
      std::vector<int> items;
      for (int u = 0; u < o.universe; ++u)
        if (detail::coin(rng, 0.3)) items.push_back(u);
      if (items.empty()) items.push_back(static_cast<int>(detail::draw(rng, 0, o.universe - 1)));
      o.element_sets.push_back(items);
    }
    for (int u = 0; u < o.universe; ++u) o.universe_weights.emplace_back(detail::draw(rng, 1, 9));
    inst.objective = o;
  } else {
    ConcaveOfModularOracle o;
    Rational total;
    for (int e = 0; e < n; ++e) {
      o.weights.emplace_back(detail::draw(rng, 1, 9));
      total += o.weights.back();
    }
    o.cap = Rational((total * Rational(3, 5)).floor() + 1);
    inst.objective = o;
  }
  inst.validate();
  return inst;
}

}  // namespace pcsm
