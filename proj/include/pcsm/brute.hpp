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

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/oracle.hpp"

namespace pcsm {

struct BruteResult {
  Rational best_value;
  Subset best_set;
  std::int64_t feasible_count = 0;
};

struct ParetoEntry {
  std::vector<Rational> cover;
  std::vector<Rational> pack;
  Rational best_value;
  Subset best_set;
};

namespace detail {

// Lexicographic order on the sorted element lists of two bitmasks.
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const std::uint64_t diff = a ^ b;
  const int d = std::countr_zero(diff);
  const std::uint64_t above = d == 63 ? 0 : ~((std::uint64_t{2} << d) - 1);
  if ((a >> d) & 1U) return (b & above) != 0;
  return (a & above) == 0;
}

// Integer form of each row, scaled by the lcm of its denominators.
struct ScaledRows {
  std::vector<std::vector<std::int64_t>> coef;
  std::vector<std::int64_t> bound;
  std::vector<std::int64_t> scale;

  ScaledRows(const Matrix& m, const std::vector<Rational>& b) {
    for (std::size_t r = 0; r < m.size(); ++r) {
      std::int64_t l = b[r].den();
      for (const auto& x : m[r]) l = lcm_checked(l, x.den());
      std::vector<std::int64_t> row;
      for (const auto& x : m[r]) row.push_back((x * Rational(l)).num());
      coef.push_back(std::move(row));
      bound.push_back((b[r] * Rational(l)).num());
      scale.push_back(l);
    }
  }
};

// Calls visit(mask, pack_sums, cover_sums, value_fn) for every subset in Gray
// code order, maintaining the row sums incrementally.
template <SetFunction F, class Visit>
void gray_enumerate(const BasicInstance<F>& inst, const ScaledRows& pack, const ScaledRows& cover,
                    Visit&& visit) {
  const int n = inst.n;
  std::vector<std::int64_t> ps(pack.coef.size(), 0), cs(cover.coef.size(), 0);
  std::uint64_t mask = 0;
  if constexpr (std::is_same_v<F, SubmodularOracle>) {
    IncrementalEvaluator ev(inst.objective);
    auto value = [&] { return ev.value(); };
    visit(mask, ps, cs, value);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
      const int e = std::countr_zero(i);
      const bool adding = !((mask >> e) & 1U);
      mask ^= std::uint64_t{1} << e;
      const std::int64_t sign = adding ? 1 : -1;
      for (std::size_t r = 0; r < ps.size(); ++r) ps[r] += sign * pack.coef[r][e];
      for (std::size_t r = 0; r < cs.size(); ++r) cs[r] += sign * cover.coef[r][e];
      if (adding) ev.add(e);
      else ev.remove(e);
      visit(mask, ps, cs, value);
    }
  } else {
    auto value = [&] { return inst.objective.eval(Subset::from_mask(n, mask)); };
    visit(mask, ps, cs, value);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
      const int e = std::countr_zero(i);
      const bool adding = !((mask >> e) & 1U);
      mask ^= std::uint64_t{1} << e;
      const std::int64_t sign = adding ? 1 : -1;
      for (std::size_t r = 0; r < ps.size(); ++r) ps[r] += sign * pack.coef[r][e];
      for (std::size_t r = 0; r < cs.size(); ++r) cs[r] += sign * cover.coef[r][e];
      visit(mask, ps, cs, value);
    }
  }
}

}  // namespace detail

// Exact optimum by enumerating all 2^n subsets. When nothing is feasible,
// feasible_count is 0 and best_value/best_set are left at zero/empty.
template <SetFunction F>
BruteResult brute_optimum(const BasicInstance<F>& inst, int max_n = 22) {
  if (inst.n > max_n || inst.n > 62)
    throw BudgetError("brute_optimum: n=" + std::to_string(inst.n) + " exceeds limit " + std::to_string(max_n));
  const detail::ScaledRows pack(inst.packing, inst.pack_bound);
  const detail::ScaledRows cover(inst.covering, inst.cover_bound);
  BruteResult res;
  std::uint64_t best_mask = 0;
  detail::gray_enumerate(inst, pack, cover, [&](std::uint64_t mask, const auto& ps, const auto& cs, auto&& value) {
    for (std::size_t r = 0; r < ps.size(); ++r)
      if (ps[r] > pack.bound[r]) return;
    for (std::size_t r = 0; r < cs.size(); ++r)
      if (cs[r] < cover.bound[r]) return;
    const Rational v = value();
    if (res.feasible_count == 0 || v > res.best_value ||
        (v == res.best_value && detail::mask_lex_less(mask, best_mask))) {
      res.best_value = v;
      best_mask = mask;
    }
    ++res.feasible_count;
  });
  res.best_set = Subset::from_mask(inst.n, best_mask);
  return res;
}

// For every achievable (C1_S, P1_S) signature, the best value attaining it.
// Entries are sorted by (cover, pack).
template <SetFunction F>
std::vector<ParetoEntry> brute_pareto(const BasicInstance<F>& inst, int max_n = 18) {
  if (inst.n > max_n)
    throw BudgetError("brute_pareto: n=" + std::to_string(inst.n) + " exceeds limit " + std::to_string(max_n));
  const std::vector<Rational> ones_p(inst.packing.size(), Rational(1));
  const std::vector<Rational> ones_c(inst.covering.size(), Rational(1));
  const detail::ScaledRows pack(inst.packing, ones_p);
  const detail::ScaledRows cover(inst.covering, ones_c);
  struct Best {
    Rational value;
    std::uint64_t mask;
  };
  std::map<std::vector<std::int64_t>, Best> table;
  detail::gray_enumerate(inst, pack, cover, [&](std::uint64_t mask, const auto& ps, const auto& cs, auto&& value) {
    std::vector<std::int64_t> key(cs.begin(), cs.end());
    key.insert(key.end(), ps.begin(), ps.end());
    const Rational v = value();
    auto [it, inserted] = table.try_emplace(std::move(key), Best{v, mask});
    if (!inserted && (v > it->second.value || (v == it->second.value && detail::mask_lex_less(mask, it->second.mask))))
      it->second = Best{v, mask};
  });
  std::vector<ParetoEntry> out;
  const std::size_t c = inst.covering.size();
  for (const auto& [key, best] : table) {
    ParetoEntry e;
    for (std::size_t j = 0; j < c; ++j) e.cover.push_back(Rational(key[j], cover.scale[j]));
    for (std::size_t i = 0; i < inst.packing.size(); ++i) e.pack.push_back(Rational(key[c + i], pack.scale[i]));
    e.best_value = best.value;
    e.best_set = Subset::from_mask(inst.n, best.mask);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace pcsm
