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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/oracle.hpp"

namespace pcsm {

struct DpOptions {
  // Keep covering coordinates unclamped, as in the [n * c_max] table range.
  bool exact_keys = false;
  double cell_budget = 5e7;
};

struct DpKey {
  int q = 0;
  std::vector<std::int64_t> cover;
  std::vector<std::int64_t> pack;
  auto operator<=>(const DpKey&) const = default;
};

struct DpCell {
  Subset set;
  Rational value;
};

using DpTable = std::map<DpKey, DpCell>;

struct DpResult {
  DpTable table;
  bool found = false;
  Subset best;
  Rational value;
  DpKey best_key;
};

struct CompletionResult {
  bool found = false;
  std::vector<int> multiplicity;
  Subset support;
  Rational value;
  DpKey base_key;
  std::vector<Rational> cover_vec;  // counted with multiplicity
  std::vector<Rational> pack_vec;
  std::size_t valid_cells = 0;
  std::size_t cells = 0;
};

namespace detail {

inline bool improves(const Rational& v, const Subset& s, const Rational& cur_v, const Subset& cur) {
  return v > cur_v || (v == cur_v && lex_less(s, cur));
}

// Integer view of an instance for the pseudo-polynomial solvers.
struct IntData {
  std::vector<std::vector<std::int64_t>> P, C;
  std::vector<std::int64_t> p, c;

  template <SetFunction F>
  explicit IntData(const BasicInstance<F>& inst) {
    if (!inst.is_integral()) throw InputError("integer matrices and bounds required; convert with to_integer");
    P = integer_rows(inst.packing);
    C = integer_rows(inst.covering);
    p = integer_vector(inst.pack_bound);
    c = integer_vector(inst.cover_bound);
  }
};

inline double dp_cell_estimate(int n, const IntData& d, bool exact_keys) {
  double cells = 1.0;
  if (exact_keys) {
    std::int64_t cmax = 0;
    for (auto x : d.c) cmax = std::max(cmax, x);
    std::int64_t pmax = 0;
    for (auto x : d.p) pmax = std::max(pmax, x);
    cells = std::max(n, 1);
    for (std::size_t j = 0; j < d.c.size(); ++j) cells *= static_cast<double>(n) * cmax + 1;
    for (std::size_t i = 0; i < d.p.size(); ++i) cells *= static_cast<double>(pmax) + 1;
  } else {
    cells = n + 1.0;
    for (auto x : d.c) cells *= static_cast<double>(x) + 1;
    for (auto x : d.p) cells *= static_cast<double>(x) + 1;
  }
  return cells;
}

}  // namespace detail

// Greedy DP over (cardinality, covering value, packing value) cells. Each cell
// keeps the most valuable set found by extending a cell of the previous layer
// by one element. Cells whose packing value exceeds the bound are never
// created since they cannot reach the output.
template <SetFunction F>
DpResult vanilla_dp(const BasicInstance<F>& inst, const DpOptions& opt = {}) {
  const detail::IntData d(inst);
  const int n = inst.n;
  const double est = detail::dp_cell_estimate(n, d, opt.exact_keys);
  if (est > opt.cell_budget)
    throw BudgetError("vanilla_dp: table bound " + std::to_string(est) + " exceeds cell budget");

  using Coord = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  DpResult res;
  std::map<Coord, DpCell> layer;
  const Subset empty(n);
  layer.emplace(Coord{std::vector<std::int64_t>(d.c.size(), 0), std::vector<std::int64_t>(d.p.size(), 0)},
                DpCell{empty, inst.objective.eval(empty)});

  for (int q = 0;; ++q) {
    for (const auto& [coord, cell] : layer) res.table.emplace(DpKey{q, coord.first, coord.second}, cell);
    if (q == n) break;
    std::map<Coord, DpCell> next;
    for (const auto& [coord, cell] : layer) {
      for (int l = 0; l < n; ++l) {
        if (cell.set.contains(l)) continue;
        Coord target = coord;
        bool fits = true;
        for (std::size_t i = 0; i < d.p.size() && fits; ++i) {
          target.second[i] += d.P[i][l];
          fits = target.second[i] <= d.p[i];
        }
        if (!fits) continue;
        for (std::size_t j = 0; j < d.c.size(); ++j) {
          target.first[j] += d.C[j][l];
          if (!opt.exact_keys) target.first[j] = std::min(target.first[j], d.c[j]);
        }
        Subset cand = cell.set.with(l);
        Rational v = inst.objective.eval(cand);
        auto it = next.find(target);
        if (it == next.end()) next.emplace(std::move(target), DpCell{std::move(cand), v});
        else if (detail::improves(v, cand, it->second.value, it->second.set)) it->second = DpCell{std::move(cand), v};
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }

  for (const auto& [key, cell] : res.table) {
    bool ok = true;
    for (std::size_t j = 0; j < d.c.size() && ok; ++j) ok = 2 * key.cover[j] >= d.c[j];
    if (!ok) continue;
    if (!res.found || detail::improves(cell.value, cell.set, res.value, res.best)) {
      res.found = true;
      res.best = cell.set;
      res.value = cell.value;
      res.best_key = key;
    }
  }
  return res;
}

// Vanilla DP followed by a completion phase: every cell is completed to a
// feasible multiset by adding a subset X found with a 0/1 reachability DP over
// (covering value clamped at the bound, packing value). Elements in both the
// cell and X appear twice. The value is f of the support.
template <SetFunction F>
CompletionResult dp_with_completion(const BasicInstance<F>& inst, const DpOptions& opt = {}) {
  const DpResult dp = vanilla_dp(inst, opt);
  const detail::IntData d(inst);
  const int n = inst.n;

  // Reachable (cover, pack) states with the first witness found in index order.
  using Coord = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  std::map<Coord, Subset> reach;
  reach.emplace(Coord{std::vector<std::int64_t>(d.c.size(), 0), std::vector<std::int64_t>(d.p.size(), 0)},
                Subset(n));
  for (int l = 0; l < n; ++l) {
    std::vector<std::pair<Coord, Subset>> added;
    for (const auto& [coord, set] : reach) {
      Coord t = coord;
      bool fits = true;
      for (std::size_t i = 0; i < d.p.size() && fits; ++i) {
        t.second[i] += d.P[i][l];
        fits = t.second[i] <= d.p[i];
      }
      if (!fits) continue;
      for (std::size_t j = 0; j < d.c.size(); ++j) t.first[j] = std::min(t.first[j] + d.C[j][l], d.c[j]);
      if (!reach.count(t)) added.emplace_back(std::move(t), set.with(l));
    }
    for (auto& [t, s] : added) reach.emplace(std::move(t), std::move(s));
  }

  CompletionResult res;
  res.cells = dp.table.size();
  for (const auto& [key, cell] : dp.table) {
    bool valid = false;
    Subset best_support;
    Rational best_value;
    Subset best_x;
    for (const auto& [coord, x] : reach) {
      bool ok = true;
      for (std::size_t j = 0; j < d.c.size() && ok; ++j) ok = key.cover[j] + coord.first[j] >= d.c[j];
      for (std::size_t i = 0; i < d.p.size() && ok; ++i) ok = key.pack[i] + coord.second[i] <= d.p[i];
      if (!ok) continue;
      Subset support = cell.set | x;
      Rational v = inst.objective.eval(support);
      if (!valid || detail::improves(v, support, best_value, best_support)) {
        valid = true;
        best_support = std::move(support);
        best_value = v;
        best_x = x;
      }
    }
    if (!valid) continue;
    ++res.valid_cells;
    if (!res.found || detail::improves(best_value, best_support, res.value, res.support)) {
      res.found = true;
      res.support = best_support;
      res.value = best_value;
      res.base_key = key;
      res.multiplicity.assign(n, 0);
      for (int e : cell.set.elements()) ++res.multiplicity[e];
      for (int e : best_x.elements()) ++res.multiplicity[e];
    }
  }
  if (res.found) {
    res.cover_vec.assign(d.c.size(), Rational(0));
    res.pack_vec.assign(d.p.size(), Rational(0));
    for (int e = 0; e < n; ++e) {
      for (std::size_t j = 0; j < d.c.size(); ++j) res.cover_vec[j] += inst.covering[j][e] * Rational(res.multiplicity[e]);
      for (std::size_t i = 0; i < d.p.size(); ++i) res.pack_vec[i] += inst.packing[i][e] * Rational(res.multiplicity[e]);
    }
  }
  return res;
}

template <SetFunction F>
struct ScaledInstance {
  BasicInstance<F> scaled;
  std::vector<Rational> K_c;
  std::vector<Rational> K_p;
};

// Rounds a rational instance to integers: C' = ceil(C / K_c), P' = floor(P / K_p)
// with K_c = eps * c / n and K_p = eps * p / (2n) per row. Covering entries
// above the bound are first clamped to it; elements whose packing entry
// exceeds the bound get a scaled entry one above the scaled bound so they stay
// infeasible. Rows with a zero bound are kept trivially (covering) or only
// admit zero entries (packing).
template <SetFunction F>
ScaledInstance<F> scale_instance(const BasicInstance<F>& inst, const Rational& eps) {
  if (eps <= Rational(0) || eps > Rational(1)) throw InputError("scale_instance: epsilon must lie in (0, 1]");
  inst.validate();
  ScaledInstance<F> out{inst, {}, {}};
  const Rational n(std::max(inst.n, 1));
  for (std::size_t j = 0; j < inst.covering.size(); ++j) {
    const Rational c = inst.cover_bound[j];
    auto& row = out.scaled.covering[j];
    if (c == Rational(0)) {
      out.K_c.push_back(Rational(1));
      for (auto& x : row) x = Rational(0);
      continue;
    }
    const Rational K = eps * c / n;
    out.K_c.push_back(K);
    for (auto& x : row) x = Rational((std::min(x, c) / K).ceil());
    out.scaled.cover_bound[j] = Rational((c / K).ceil());
  }
  for (std::size_t i = 0; i < inst.packing.size(); ++i) {
    const Rational p = inst.pack_bound[i];
    auto& row = out.scaled.packing[i];
    if (p == Rational(0)) {
      out.K_p.push_back(Rational(1));
      for (auto& x : row) x = x > Rational(0) ? Rational(1) : Rational(0);
      continue;
    }
    const Rational K = eps * p / (Rational(2) * n);
    out.K_p.push_back(K);
    const Rational bound((p / K).floor());
    for (auto& x : row) x = x > p ? bound + Rational(1) : Rational((x / K).floor());
    out.scaled.pack_bound[i] = bound;
  }
  return out;
}

}  // namespace pcsm
