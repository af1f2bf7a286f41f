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
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/forbidden_dp.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/rational.hpp"
#include "pcsm/subset.hpp"

namespace pcsm {

// Capacitated k-median where every client-facility distance is a or b.
// a_pairs lists the (client, facility) pairs at distance a.
struct TwoDistInstance {
  std::vector<int> caps;
  int clients = 0;
  std::vector<std::pair<int, int>> a_pairs;
  Rational a{1};
  Rational b{3};
  int k = 0;

  int num_facilities() const { return static_cast<int>(caps.size()); }

  void validate() const {
    if (clients < 0) throw InputError("kmedian: negative client count");
    if (k < 0) throw InputError("kmedian: negative k");
    for (int u : caps)
      if (u < 1) throw InputError("kmedian: capacities must be positive integers");
    if (a < Rational(0) || b < a) throw InputError("kmedian: need 0 <= a <= b");
    for (const auto& [j, i] : a_pairs)
      if (j < 0 || j >= clients || i < 0 || i >= num_facilities()) throw InputError("kmedian: pair out of range");
  }
};

namespace detail {

class Dinic {
 public:
  explicit Dinic(int n) : g_(n), level_(n), it_(n) {}

  int add_edge(int u, int v, std::int64_t cap) {
    g_[u].push_back({v, static_cast<int>(g_[v].size()), cap});
    g_[v].push_back({u, static_cast<int>(g_[u].size()) - 1, 0});
    return static_cast<int>(g_[u].size()) - 1;
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  // Flow currently on edge `idx` out of u.
  std::int64_t flow_on(int u, int idx) const {
    const auto& e = g_[u][idx];
    return g_[e.to][e.rev].cap;
  }
  int target(int u, int idx) const { return g_[u][idx].to; }
  int degree(int u) const { return static_cast<int>(g_[u].size()); }

 private:
  struct Edge {
    int to, rev;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& e : g_[u])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(g_[u].size()); ++i) {
      Edge& e = g_[u][i];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      if (std::int64_t d = dfs(e.to, t, std::min(f, e.cap))) {
        e.cap -= d;
        g_[e.to][e.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> g_;
  std::vector<int> level_, it_;
};

struct Matching {
  int matched = 0;
  std::vector<int> facility_of;  // -1 when unmatched
};

inline Matching max_matching(const TwoDistInstance& inst, const Subset& open) {
  const int C = inst.clients, F = inst.num_facilities();
  const int s = C + F, t = s + 1;
  Dinic d(t + 1);
  for (int j = 0; j < C; ++j) d.add_edge(s, j, 1);
  for (const auto& [j, i] : inst.a_pairs)
    if (open.contains(i)) d.add_edge(j, C + i, 1);
  for (int i = 0; i < F; ++i)
    if (open.contains(i)) d.add_edge(C + i, t, inst.caps[i]);
  Matching m;
  m.matched = static_cast<int>(d.max_flow(s, t));
  m.facility_of.assign(C, -1);
  for (int j = 0; j < C; ++j)
    for (int idx = 0; idx < d.degree(j); ++idx) {
      const int v = d.target(j, idx);
      if (v >= C && v < C + F && d.flow_on(j, idx) > 0) m.facility_of[j] = v - C;
    }
  return m;
}

}  // namespace detail

// Maximum number of clients served at distance a by the open facilities.
inline int match_value(const TwoDistInstance& inst, const Subset& open) {
  if (open.universe() != inst.num_facilities()) throw InputError("match_value: facility set has wrong universe");
  return detail::max_matching(inst, open).matched;
}

// match_value as a set function over facilities.
struct MatchOracle {
  const TwoDistInstance* inst = nullptr;
  int ground_size() const { return inst->num_facilities(); }
  Rational eval(const Subset& s) const { return Rational(match_value(*inst, s)); }
};

struct KMedianResult {
  bool feasible = false;
  Subset open;
  std::vector<int> assignment;  // facility per client
  int matched = 0;
  Rational cost;
  std::string method;
};

// Cost of serving every client from `open`: matched clients at distance a,
// the rest at distance b using leftover capacity.
inline KMedianResult assign_clients(const TwoDistInstance& inst, const Subset& open) {
  KMedianResult res;
  res.open = open;
  std::int64_t cap = 0;
  for (int i : open.elements()) cap += inst.caps[i];
  if (cap < inst.clients) return res;
  const auto m = detail::max_matching(inst, open);
  std::vector<int> left(inst.num_facilities(), 0);
  for (int i : open.elements()) left[i] = inst.caps[i];
  for (int j = 0; j < inst.clients; ++j)
    if (m.facility_of[j] >= 0) --left[m.facility_of[j]];
  res.assignment = m.facility_of;
  std::size_t next = 0;
  const auto fac = open.elements();
  for (int j = 0; j < inst.clients; ++j) {
    if (res.assignment[j] >= 0) continue;
    while (left[fac[next]] == 0) ++next;
    res.assignment[j] = fac[next];
    --left[fac[next]];
  }
  res.feasible = true;
  res.matched = m.matched;
  res.cost = inst.b * Rational(inst.clients) - (inst.b - inst.a) * Rational(m.matched);
  return res;
}

namespace detail {

// The distance-a graph split into components, each of which must be complete
// bipartite. Returns nothing otherwise.
struct Cluster {
  int clients = 0;
  std::vector<int> facilities;  // sorted by capacity, largest first
};

inline std::optional<std::vector<Cluster>> complete_bipartite_clusters(const TwoDistInstance& inst) {
  const int C = inst.clients, F = inst.num_facilities();
  std::vector<int> parent(C + F);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::vector<char>> adj(C, std::vector<char>(F, 0));
  for (const auto& [j, i] : inst.a_pairs) {
    adj[j][i] = 1;
    parent[find(j)] = find(C + i);
  }
  std::vector<int> id(C + F, -1);
  std::vector<Cluster> out;
  std::vector<std::vector<int>> members_c;
  for (int v = 0; v < C + F; ++v) {
    const int r = find(v);
    if (id[r] < 0) {
      id[r] = static_cast<int>(out.size());
      out.emplace_back();
      members_c.emplace_back();
    }
    if (v < C) {
      ++out[id[r]].clients;
      members_c[id[r]].push_back(v);
    } else {
      out[id[r]].facilities.push_back(v - C);
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int j : members_c[k])
      for (int i : out[k].facilities)
        if (!adj[j][i]) return std::nullopt;
  for (auto& cl : out)
    std::stable_sort(cl.facilities.begin(), cl.facilities.end(),
                     [&](int x, int y) { return inst.caps[x] > inst.caps[y]; });
  return out;
}

// Exact knapsack over clusters: state (facilities used, capacity clamped at
// |C|) -> most clients matched. Within a cluster the t largest capacities are
// always the right choice.
inline Subset cluster_dp(const TwoDistInstance& inst, const std::vector<Cluster>& clusters) {
  const int K = inst.k, N = inst.clients;
  constexpr int kNone = -1;
  struct Cell {
    int matched = kNone;
    int from_t = 0, from_cap = 0, take = 0;
  };
  std::vector<std::vector<std::vector<Cell>>> dp(clusters.size() + 1,
                                                  std::vector<std::vector<Cell>>(K + 1, std::vector<Cell>(N + 1)));
  dp[0][0][0].matched = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& cl = clusters[c];
    for (int t = 0; t <= K; ++t)
      for (int cap = 0; cap <= N; ++cap) {
        if (dp[c][t][cap].matched == kNone) continue;
        int sum = 0;
        for (int take = 0; take <= static_cast<int>(cl.facilities.size()) && t + take <= K; ++take) {
          if (take > 0) sum += inst.caps[cl.facilities[take - 1]];
          const int nc = std::min(N, cap + sum);
          const int nm = dp[c][t][cap].matched + std::min(cl.clients, sum);
          Cell& dst = dp[c + 1][t + take][nc];
          if (nm > dst.matched) dst = Cell{nm, t, cap, take};
        }
      }
  }
  int bt = -1;
  for (int t = 0; t <= K; ++t)
    if (dp[clusters.size()][t][N].matched != kNone &&
        (bt < 0 || dp[clusters.size()][t][N].matched > dp[clusters.size()][bt][N].matched))
      bt = t;
  Subset open(inst.num_facilities());
  if (bt < 0) return open;
  int t = bt, cap = N;
  for (std::size_t c = clusters.size(); c-- > 0;) {
    const Cell& cell = dp[c + 1][t][cap];
    for (int x = 0; x < cell.take; ++x) open.insert(clusters[c].facilities[x]);
    t = cell.from_t;
    cap = cell.from_cap;
  }
  return open;
}

}  // namespace detail

// Builds the PCSM instance: one all-ones packing row with bound k, one
// covering row u with bound |C|, objective match_value.
inline BasicInstance<MatchOracle> kmedian_reduction(const TwoDistInstance& inst) {
  BasicInstance<MatchOracle> out;
  const int F = inst.num_facilities();
  out.n = F;
  out.packing = {std::vector<Rational>(F, Rational(1))};
  out.pack_bound = {Rational(inst.k)};
  std::vector<Rational> u;
  for (int c : inst.caps) u.emplace_back(c);
  out.covering = {u};
  out.cover_bound = {Rational(inst.clients)};
  out.objective = MatchOracle{&inst};
  return out;
}

inline bool kmedian_feasible(const TwoDistInstance& inst) {
  auto caps = inst.caps;
  std::sort(caps.rbegin(), caps.rend());
  std::int64_t sum = 0;
  for (int i = 0; i < std::min<int>(inst.k, static_cast<int>(caps.size())); ++i) sum += caps[i];
  return sum >= inst.clients;
}

inline KMedianResult solve_two_distance(const TwoDistInstance& inst) {
  inst.validate();
  KMedianResult none;
  none.open = Subset(inst.num_facilities());
  none.method = "infeasible";
  if (!kmedian_feasible(inst)) return none;

  if (inst.a == inst.b) {
    std::vector<int> ids(inst.num_facilities());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return inst.caps[x] > inst.caps[y]; });
    Subset open(inst.num_facilities());
    for (int i = 0; i < std::min<int>(inst.k, static_cast<int>(ids.size())); ++i) open.insert(ids[i]);
    auto res = assign_clients(inst, open);
    res.method = "uniform";
    return res;
  }
  if (inst.a == Rational(0) || inst.b > Rational(3) * inst.a) {
    if (const auto clusters = detail::complete_bipartite_clusters(inst)) {
      auto res = assign_clients(inst, detail::cluster_dp(inst, *clusters));
      res.method = "cluster_dp";
      return res;
    }
  }
  const auto red = kmedian_reduction(inst);
  const auto sol = cardinality_solve(red);
  if (!sol.found) return none;
  auto res = assign_clients(inst, sol.best);
  res.method = "reduction";
  return res;
}

// Optimal cost by enumerating facility sets with |S| <= k.
inline KMedianResult kmedian_brute(const TwoDistInstance& inst, int max_facilities = 16) {
  inst.validate();
  const int F = inst.num_facilities();
  if (F > max_facilities) throw BudgetError("kmedian_brute: too many facilities");
  KMedianResult best;
  best.open = Subset(F);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << F); ++mask) {
    const Subset s = Subset::from_mask(F, mask);
    if (s.size() > inst.k) continue;
    auto r = assign_clients(inst, s);
    if (!r.feasible) continue;
    if (!best.feasible || r.cost < best.cost) best = std::move(r);
  }
  best.method = "brute";
  return best;
}

}  // namespace pcsm
