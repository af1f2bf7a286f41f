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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/greedy_dp.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/oracle.hpp"

namespace pcsm {

// Best-ratio prefixes of the small elements. F_{p'} is the shortest prefix
// whose packing value reaches p - p'; when no prefix does, it is the whole
// order.
struct ForbiddenIndex {
  int n = 0;
  std::int64_t p = 0;
  std::vector<int> order;
  std::vector<std::int64_t> prefix_pack;   // size order.size() + 1
  std::vector<std::int64_t> prefix_cover;  // size order.size() + 1
  std::vector<std::size_t> prefix_len;     // indexed by p' in [0..p]
  std::vector<std::size_t> position;       // rank in order, or order.size() if absent

  std::size_t length(std::int64_t pp) const { return prefix_len.at(static_cast<std::size_t>(pp)); }
  Subset forbidden(std::int64_t pp) const {
    Subset s(n);
    for (std::size_t i = 0; i < length(pp); ++i) s.insert(order[i]);
    return s;
  }
  bool is_forbidden(int e, std::int64_t pp) const { return position[e] < length(pp); }
  std::int64_t pack_of(std::int64_t pp) const { return prefix_pack[length(pp)]; }
  std::int64_t cover_of(std::int64_t pp) const { return prefix_cover[length(pp)]; }
};

inline ForbiddenIndex make_forbidden_index(int n, const std::vector<std::int64_t>& C,
                                           const std::vector<std::int64_t>& P, std::int64_t p,
                                           std::vector<int> elements) {
  if (p < 0) throw InputError("forbidden index: negative packing bound");
  ForbiddenIndex idx;
  idx.n = n;
  idx.p = p;
  // Zero packing cost counts as an infinite ratio.
  std::sort(elements.begin(), elements.end(), [&](int a, int b) {
    const bool za = P[a] == 0, zb = P[b] == 0;
    if (za != zb) return za;
    if (!za) {
      const __int128 lhs = static_cast<__int128>(C[a]) * P[b];
      const __int128 rhs = static_cast<__int128>(C[b]) * P[a];
      if (lhs != rhs) return lhs > rhs;
    }
    return a < b;
  });
  idx.order = std::move(elements);
  idx.prefix_pack.assign(1, 0);
  idx.prefix_cover.assign(1, 0);
  for (int e : idx.order) {
    idx.prefix_pack.push_back(idx.prefix_pack.back() + P[e]);
    idx.prefix_cover.push_back(idx.prefix_cover.back() + C[e]);
  }
  for (std::int64_t pp = 0; pp <= p; ++pp) {
    const auto it = std::lower_bound(idx.prefix_pack.begin(), idx.prefix_pack.end(), p - pp);
    idx.prefix_len.push_back(it == idx.prefix_pack.end() ? idx.order.size()
                                                         : static_cast<std::size_t>(it - idx.prefix_pack.begin()));
  }
  idx.position.assign(n, idx.order.size());
  for (std::size_t i = 0; i < idx.order.size(); ++i) idx.position[idx.order[i]] = i;
  return idx;
}

namespace detail {

// Single packing row and at most one covering row, as integers.
struct OneRow {
  std::vector<std::int64_t> P, C;
  std::int64_t p = 0, c = 0;

  template <SetFunction F>
  explicit OneRow(const BasicInstance<F>& inst) {
    if (inst.num_packing() != 1 || inst.num_covering() > 1)
      throw InputError("expected exactly one packing row and at most one covering row");
    const IntData d(inst);
    P = d.P[0];
    p = d.p[0];
    if (d.C.empty()) {
      C.assign(inst.n, 0);
    } else {
      C = d.C[0];
      c = d.c[0];
    }
  }
};

}  // namespace detail

// Builds the index over `allowed` (all elements when omitted). Big elements are
// expected to be excluded by the caller.
template <SetFunction F>
ForbiddenIndex build_forbidden_index(const BasicInstance<F>& inst, const std::optional<Subset>& allowed = {}) {
  const detail::OneRow r(inst);
  std::vector<int> elems;
  for (int e = 0; e < inst.n; ++e)
    if (!allowed || allowed->contains(e)) elems.push_back(e);
  return make_forbidden_index(inst.n, r.C, r.P, r.p, std::move(elems));
}

struct ForbiddenOptions {
  double guess_budget = 1e6;
  bool exact_keys = false;
  // Called for every populated cell T[c', p'] with F_{p'} after the guess
  // finishes.
  std::function<void(std::int64_t cover, std::int64_t pack, const Subset& cell, const Subset& forbidden)> cell_visitor;
};

struct ForbiddenResult {
  bool found = false;
  Subset best;
  Rational value;
  std::int64_t cover = 0;
  std::int64_t pack = 0;
  Subset guess;
  std::size_t guesses = 0;
  std::size_t cells = 0;
};

namespace detail {

template <SetFunction F>
ForbiddenResult forbidden_core(const BasicInstance<F>& inst, const OneRow& r, const std::vector<int>& small,
                               const std::vector<Subset>& guesses, const ForbiddenOptions& opt) {
  const ForbiddenIndex idx = make_forbidden_index(inst.n, r.C, r.P, r.p, small);
  ForbiddenResult res;
  res.guesses = guesses.size();
  auto clamp = [&](std::int64_t v) { return opt.exact_keys ? v : std::min(v, r.c); };

  for (const Subset& g : guesses) {
    // Keyed by (p', c') so that std::map iteration visits predecessors first.
    std::map<std::pair<std::int64_t, std::int64_t>, DpCell> T;
    std::int64_t gp = 0, gc = 0;
    for (int e : g.elements()) {
      gp += r.P[e];
      gc += r.C[e];
    }
    T.emplace(std::make_pair(gp, clamp(gc)), DpCell{g, inst.objective.eval(g)});

    for (auto it = T.begin(); it != T.end(); ++it) {
      const auto [pp, cc] = it->first;
      // A zero-cost element may improve the current cell itself; repeat until
      // the cell is stable.
      for (bool changed = true; changed;) {
        changed = false;
        const DpCell cell = it->second;
        for (int l : small) {
          if (cell.set.contains(l)) continue;
          const std::int64_t p2 = pp + r.P[l];
          if (p2 > r.p || idx.is_forbidden(l, p2)) continue;
          const auto key = std::make_pair(p2, clamp(cc + r.C[l]));
          Subset cand = cell.set.with(l);
          Rational v = inst.objective.eval(cand);
          auto t = T.find(key);
          if (t == T.end()) {
            T.emplace(key, DpCell{std::move(cand), v});
          } else if (improves(v, cand, t->second.value, t->second.set)) {
            t->second = DpCell{std::move(cand), v};
            if (t == it) changed = true;
          }
        }
      }
    }

    res.cells += T.size();
    for (const auto& [key, cell] : T) {
      const auto [pp, cc] = key;
      const Subset forb = idx.forbidden(pp);
      if (opt.cell_visitor) opt.cell_visitor(cc, pp, cell.set, forb);
      if (cc + idx.cover_of(pp) < r.c) continue;
      Subset cand = cell.set | forb;
      Rational v = inst.objective.eval(cand);
      if (!res.found || improves(v, cand, res.value, res.best)) {
        res.found = true;
        res.best = std::move(cand);
        res.value = v;
        res.guess = g;
      }
    }
  }
  if (res.found) {
    for (int e : res.best.elements()) {
      res.cover += r.C[e];
      res.pack += r.P[e];
    }
  }
  return res;
}

inline double binomial_prefix(std::size_t b, std::size_t k) {
  double total = 0, term = 1;
  for (std::size_t i = 0; i <= std::min(k, b); ++i) {
    total += term;
    term = term * static_cast<double>(b - i) / static_cast<double>(i + 1);
  }
  return total;
}

}  // namespace detail

// Elements with P_l >= eps * p and P_l > 0.
template <SetFunction F>
std::vector<int> big_elements(const BasicInstance<F>& inst, const Rational& eps) {
  const detail::OneRow r(inst);
  std::vector<int> big;
  for (int e = 0; e < inst.n; ++e)
    if (r.P[e] > 0 && Rational(r.P[e]) >= eps * Rational(r.p)) big.push_back(e);
  return big;
}

// All subsets G of the big elements with |G| <= 1/eps and P1_G <= p, in
// lexicographic order.
template <SetFunction F>
std::vector<Subset> enumerate_big_guesses(const BasicInstance<F>& inst, const Rational& eps, double budget = 1e6) {
  const detail::OneRow r(inst);
  const auto big = big_elements(inst, eps);
  const auto kmax = static_cast<std::size_t>((Rational(1) / eps).floor());
  const double count = detail::binomial_prefix(big.size(), kmax);
  if (count > budget)
    throw BudgetError("forbidden_dp: " + std::to_string(count) + " candidate guesses exceed the guess budget");
  std::vector<Subset> out;
  std::vector<int> chosen;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t from, std::int64_t pack) {
    out.push_back(Subset::of(inst.n, chosen));
    if (chosen.size() == kmax) return;
    for (std::size_t i = from; i < big.size(); ++i) {
      if (pack + r.P[big[i]] > r.p) continue;
      chosen.push_back(big[i]);
      rec(i + 1, pack + r.P[big[i]]);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) { return lex_less(a, b); });
  return out;
}

// Greedy DP with guessing of big elements and forbidden best-ratio prefixes
// for one packing and one covering row.
template <SetFunction F>
ForbiddenResult forbidden_dp_solve(const BasicInstance<F>& inst, const Rational& eps,
                                   const ForbiddenOptions& opt = {}) {
  if (eps <= Rational(0)) throw InputError("forbidden_dp: epsilon must be positive");
  const detail::OneRow r(inst);
  const auto guesses = enumerate_big_guesses(inst, eps, opt.guess_budget);
  const auto big = big_elements(inst, eps);
  std::vector<int> small;
  for (int e = 0, b = 0; e < inst.n; ++e) {
    if (b < static_cast<int>(big.size()) && big[b] == e) ++b;
    else small.push_back(e);
  }
  return detail::forbidden_core(inst, r, small, guesses, opt);
}

// Cardinality version: the packing row must be all ones with bound k. No
// guessing; every element is small and F_{p'} is the k - p' best elements by
// covering value.
template <SetFunction F>
ForbiddenResult cardinality_solve(const BasicInstance<F>& inst, const ForbiddenOptions& opt = {}) {
  const detail::OneRow r(inst);
  for (auto x : r.P)
    if (x != 1) throw InputError("cardinality_solve: packing row must be all ones");
  std::vector<int> all(inst.n);
  for (int e = 0; e < inst.n; ++e) all[e] = e;
  return detail::forbidden_core(inst, r, all, {Subset(inst.n)}, opt);
}

struct PolyResult {
  bool found = false;
  Subset best;
  Rational value;
  RatioReport ratios;
  Rational K_c;
  Rational K_p;
  std::size_t guesses = 0;
  std::size_t cells = 0;
};

// Scales with eps, solves the scaled instance with eps / 2 and reports the
// violation ratios on the original data.
template <SetFunction F>
PolyResult solve_polynomial(const BasicInstance<F>& inst, const Rational& eps, const ForbiddenOptions& opt = {}) {
  if (inst.num_packing() != 1 || inst.num_covering() > 1)
    throw InputError("solve_polynomial: expected exactly one packing row and at most one covering row");
  const auto sc = scale_instance(inst, eps);
  const auto r = forbidden_dp_solve(sc.scaled, eps / Rational(2), opt);
  PolyResult out;
  out.K_p = sc.K_p[0];
  out.K_c = sc.K_c.empty() ? Rational(1) : sc.K_c[0];
  out.guesses = r.guesses;
  out.cells = r.cells;
  if (!r.found) return out;
  out.found = true;
  out.best = r.best;
  out.value = inst.objective.eval(r.best);
  out.ratios = ratio_report(inst, r.best);
  return out;
}

}  // namespace pcsm
