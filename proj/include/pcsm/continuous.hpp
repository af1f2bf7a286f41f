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
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/instance.hpp"
#include "pcsm/lp.hpp"
#include "pcsm/oracle.hpp"

namespace pcsm {

struct ContinuousParams {
  BigRational epsilon = BigRational(1, 10);
  BigRational delta = BigRational(1, 5);
  BigRational alpha = BigRational(1, 5);
  BigRational beta = BigRational(1, 5);
  BigRational gamma = 2;
  // Upper limit on |E1|; -1 uses gamma + (p + c) / (alpha * delta).
  int max_e1 = -1;
  // Maximum number of (c', E1) pairs examined.
  std::size_t budget = 100000;
  int steps = 100;
  int samples = 200;
  int trials = 20;
  std::uint64_t seed = 0;

  void validate() const {
    if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie in (0, 1)");
    if (delta <= 0 || delta >= 1) throw InputError("delta must lie in (0, 1)");
    if (alpha <= 0 || alpha >= 1) throw InputError("alpha must lie in (0, 1)");
    if (beta <= 0 || beta >= 1) throw InputError("beta must lie in (0, 1)");
    if (gamma < 1) throw InputError("gamma must be at least 1");
    if (steps < 1 || samples < 1 || trials < 1) throw InputError("steps, samples and trials must be positive");
  }
};

// delta = min{1/(15b), eps/(30b^3+2)}/2, alpha = delta^3, beta = delta^2/(3b),
// gamma = 1/delta^3 with b = p + c.
inline ContinuousParams theory_params(const BigRational& eps, int p, int c) {
  const int b = std::max(1, p + c);
  ContinuousParams prm;
  prm.epsilon = eps;
  prm.delta = std::min(BigRational(1, 15 * b), eps / BigRational(30 * b * b * b + 2)) / 2;
  prm.alpha = prm.delta * prm.delta * prm.delta;
  prm.beta = prm.delta * prm.delta / (3 * b);
  prm.gamma = 1 / prm.alpha;
  return prm;
}

inline ContinuousParams relaxed_params(const BigRational& eps, const BigRational& delta = BigRational(1, 5)) {
  ContinuousParams prm;
  prm.epsilon = eps;
  prm.delta = delta;
  prm.alpha = delta;
  prm.beta = delta;
  prm.gamma = 2;
  return prm;
}

// The instance in the form the pipeline works with: every row divided by its
// bound and covering entries clamped at 1. Packing rows with bound 0 are
// removed and every element they charge is excluded up front.
class ResidualSpace {
 public:
  explicit ResidualSpace(const Instance& original) : original_(original), forced_out_(original.n) {
    original.validate();
    Instance w = original;
    Matrix pack;
    std::vector<Rational> pb;
    for (std::size_t i = 0; i < w.packing.size(); ++i) {
      if (w.pack_bound[i] == Rational(0)) {
        for (int e = 0; e < w.n; ++e)
          if (w.packing[i][e] > Rational(0)) forced_out_.insert(e);
        continue;
      }
      pack.push_back(w.packing[i]);
      pb.push_back(w.pack_bound[i]);
    }
    w.packing = std::move(pack);
    w.pack_bound = std::move(pb);
    w = normalized(std::move(w));
    for (auto& row : w.covering)
      for (auto& x : row) x = std::min(x, Rational(1));
    work_ = std::move(w);
    for (const auto& row : work_.packing) {
      P_.emplace_back();
      for (const auto& x : row) P_.back().push_back(to_big(x));
    }
    for (const auto& row : work_.covering) {
      C_.emplace_back();
      for (const auto& x : row) C_.back().push_back(to_big(x));
    }
  }

  const Instance& original() const { return original_; }
  const Instance& work() const { return work_; }
  const Subset& forced_out() const { return forced_out_; }
  int n() const { return work_.n; }
  int p() const { return static_cast<int>(P_.size()); }
  int c() const { return static_cast<int>(C_.size()); }
  const BigRational& P(int i, int e) const { return P_[i][e]; }
  const BigRational& C(int j, int e) const { return C_[j][e]; }

 private:
  Instance original_;
  Instance work_;
  Subset forced_out_;
  std::vector<std::vector<BigRational>> P_, C_;
};

struct Guess {
  Subset E0, E1;
  std::vector<BigRational> c_prime;
  std::vector<int> grid;  // exponents j with c'_j = (1 + delta)^j
  std::vector<BigRational> r, s;
  std::vector<int> Y, Z;  // critical packing / covering rows
  Subset residual;        // N minus (E0 union E1)
  Subset P_D, C_D, L_D;
};

// Fills the derived fields of D = (E0, E1, c').
inline Guess make_guess(const ResidualSpace& sp, const ContinuousParams& prm, Subset E0, Subset E1,
                        std::vector<BigRational> c_prime, std::vector<int> grid = {}) {
  const int n = sp.n();
  Guess g;
  g.E0 = std::move(E0);
  g.E1 = std::move(E1);
  g.c_prime = std::move(c_prime);
  g.grid = std::move(grid);
  if (static_cast<int>(g.c_prime.size()) != sp.c()) throw InputError("guess: c' has wrong length");
  const auto chosen = g.E1.elements();
  for (int i = 0; i < sp.p(); ++i) {
    BigRational r = 1;
    for (int e : chosen) r -= sp.P(i, e);
    g.r.push_back(r);
    if (r <= prm.delta) g.Y.push_back(i);
  }
  for (int j = 0; j < sp.c(); ++j) {
    BigRational s = g.c_prime[j];
    for (int e : chosen) s -= sp.C(j, e);
    if (s < 0) s = 0;
    g.s.push_back(s);
    if (s <= prm.delta * g.c_prime[j]) g.Z.push_back(j);
  }
  g.residual = Subset::full(n) - (g.E0 | g.E1);
  g.P_D = g.C_D = g.L_D = Subset(n);
  auto in = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
  for (int e : g.residual.elements()) {
    for (int i = 0; i < sp.p(); ++i) {
      if (!in(g.Y, i) && sp.P(i, e) >= prm.alpha * g.r[i]) g.P_D.insert(e);
      // A zero entry never harms a critical row, even one with no residual left.
      if (in(g.Y, i) && sp.P(i, e) > 0 && sp.P(i, e) >= prm.beta * g.r[i]) g.L_D.insert(e);
    }
    for (int j = 0; j < sp.c(); ++j)
      if (!in(g.Z, j) && sp.C(j, e) >= prm.alpha * g.s[j]) g.C_D.insert(e);
  }
  return g;
}

// The clauses of the consistency definition that fail, as short labels.
inline std::vector<std::string> consistency_violations(const ResidualSpace& sp, const Guess& g) {
  std::vector<std::string> out;
  if (!g.E0.disjoint(g.E1)) out.emplace_back("E0 and E1 intersect");
  for (const auto& x : g.c_prime)
    if (x < 1) {
      out.emplace_back("c' below 1");
      break;
    }
  for (int i = 0; i < sp.p(); ++i)
    if (g.r[i] < 0) {
      out.emplace_back("E1 exceeds a packing row");
      break;
    }
  if (!g.P_D.empty() || !g.C_D.empty()) out.emplace_back("large elements remain");
  return out;
}

inline bool is_consistent(const ResidualSpace& sp, const Guess& g) { return consistency_violations(sp, g).empty(); }

// Orders O so that each element has the largest marginal on its prefix
// (ties to the smaller index).
inline std::vector<int> greedy_order(const SubmodularOracle& f, const Subset& O) {
  std::vector<int> rest = O.elements(), out;
  Subset pre(O.universe());
  while (!rest.empty()) {
    std::size_t best = 0;
    Rational bv = marginal(f, pre, rest[0]);
    for (std::size_t k = 1; k < rest.size(); ++k) {
      const Rational v = marginal(f, pre, rest[k]);
      if (v > bv) {
        bv = v;
        best = k;
      }
    }
    out.push_back(rest[best]);
    pre.insert(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

// Correctness of a guess with respect to O (which must be feasible).
inline bool is_correct(const ResidualSpace& sp, const ContinuousParams& prm, const Guess& g, const Subset& O) {
  if (!g.E1.is_subset_of(O) || !g.E0.disjoint(O)) return false;
  const auto order = greedy_order(sp.work().objective, O);
  const auto top = static_cast<std::size_t>(std::min<BigRational>(prm.gamma, BigRational(order.size())).convert_to<double>());
  for (std::size_t k = 0; k < top; ++k)
    if (!g.E1.contains(order[k])) return false;
  const auto elems = O.elements();
  for (int j = 0; j < sp.c(); ++j) {
    BigRational cov = 0;
    for (int e : elems) cov += sp.C(j, e);
    if (cov < g.c_prime[j] || cov > (1 + prm.delta) * g.c_prime[j]) return false;
  }
  return true;
}

struct GuessList {
  std::vector<Guess> guesses;
  std::size_t examined = 0;
  bool truncated = false;
};

// Geometric grid 1 = g_0 < g_1 < ... for the covering guesses, with
// g_{k+1} <= (1 + delta) g_k and (1 + delta) g_J >= hi, so every value in
// [1, hi] lies in some [g_k, (1 + delta) g_k]. Exact powers of 1 + delta
// while their denominators stay small, then rounded down to multiples of
// 2^-40 (tiny delta would otherwise produce enormous fractions).
inline std::vector<BigRational> cover_grid(const BigRational& delta, int hi) {
  if (delta <= 0) throw InputError("cover_grid: delta must be positive");
  const BigRational step = 1 + delta;
  using boost::multiprecision::cpp_int;
  const cpp_int lattice = cpp_int(1) << 40;
  std::vector<BigRational> grid{BigRational(1)};
  while (grid.back() * step < hi) {
    BigRational next = grid.back() * step;
    if (boost::multiprecision::msb(denominator(next)) > 62) {
      next = BigRational(cpp_int(numerator(next) * lattice / denominator(next)), lattice);
      if (next <= grid.back()) throw NumericError("cover_grid: delta below the grid resolution");
    }
    grid.push_back(std::move(next));
  }
  return grid;
}

inline int e1_limit(const ResidualSpace& sp, const ContinuousParams& prm) {
  if (prm.max_e1 >= 0) return std::min(prm.max_e1, sp.n());
  const BigRational bound = prm.gamma + BigRational(sp.p() + sp.c()) / (prm.alpha * prm.delta);
  if (bound >= sp.n()) return sp.n();
  return static_cast<int>(bound.convert_to<double>());
}

// Preprocessing: iterate c' over the geometric grid and E1 over small subsets
// (by size, then lexicographically), derive E0, keep consistent guesses.
inline GuessList enumerate_guesses(const ResidualSpace& sp, const ContinuousParams& prm) {
  prm.validate();
  const int n = sp.n();
  const auto& f = sp.work().objective;
  const std::vector<BigRational> grid = cover_grid(prm.delta, sp.c() > 0 ? n : 1);
  const int J = static_cast<int>(grid.size()) - 1;
  const int kmax = e1_limit(sp, prm);

  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int from, int size) {
      if (static_cast<int>(cur.size()) == size) {
        subsets.push_back(cur);
        return;
      }
      for (int e = from; e < n; ++e) {
        cur.push_back(e);
        rec(e + 1, size);
        cur.pop_back();
      }
    };
    for (int size = 0; size <= kmax; ++size) {
      rec(0, size);
      if (subsets.size() > prm.budget) break;
    }
  }

  GuessList out;
  std::vector<int> exps(sp.c(), 0);
  for (;;) {
    std::vector<BigRational> cp;
    for (int x : exps) cp.push_back(grid[x]);
    for (const auto& e1v : subsets) {
      if (out.examined >= prm.budget) {
        out.truncated = true;
        return out;
      }
      ++out.examined;
      const Subset E1 = Subset::of(n, e1v);
      if (!E1.disjoint(sp.forced_out())) continue;
      const Guess H = make_guess(sp, prm, sp.forced_out() - E1, E1, cp, exps);
      Subset E0 = H.P_D | H.C_D | (sp.forced_out() - E1);
      const Rational fE1 = f.eval(E1);
      for (int e = 0; e < n; ++e) {
        if (E1.contains(e)) continue;
        if (to_big(marginal(f, E1, e)) * prm.gamma > to_big(fE1)) E0.insert(e);
      }
      Guess D = make_guess(sp, prm, E0, E1, cp, exps);
      if (!is_consistent(sp, D)) continue;
      out.guesses.push_back(std::move(D));
    }
    int k = 0;
    while (k < sp.c() && exps[k] == J) exps[k++] = 0;
    if (k == sp.c()) break;
    ++exps[k];
  }
  return out;
}

// g^D(T) = f(T u E1) - f(E1).
inline Rational residual_objective(const ResidualSpace& sp, const Guess& g, const Subset& T) {
  if (!T.disjoint(g.E0 | g.E1)) throw InputError("residual_objective: T must avoid E0 and E1");
  const auto& f = sp.work().objective;
  return f.eval(T | g.E1) - f.eval(g.E1);
}

namespace detail {

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// Uniform in [0, 1) from the top 53 bits; portable across standard libraries.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Monte-Carlo estimate of the multilinear extension F(x) = E[f(R)].
template <SetFunction F>
Estimate multilinear_estimate(const F& f, const std::vector<double>& x, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("multilinear_estimate: samples must be positive");
  if (static_cast<int>(x.size()) != f.ground_size()) throw InputError("multilinear_estimate: wrong dimension");
  auto rng = detail::make_rng(seed);
  double sum = 0, sq = 0;
  for (int t = 0; t < samples; ++t) {
    Subset R(f.ground_size());
    for (int e = 0; e < f.ground_size(); ++e)
      if (detail::uniform01(rng) < x[e]) R.insert(e);
    const double v = f.eval(R).to_double();
    sum += v;
    sq += v * v;
  }
  Estimate est;
  est.mean = sum / samples;
  if (samples > 1) {
    const double var = std::max(0.0, (sq - samples * est.mean * est.mean) / (samples - 1));
    est.stderr_ = std::sqrt(var / samples);
  }
  // Integral points are deterministic.
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0 || v == 1.0; })) est.stderr_ = 0.0;
  return est;
}

// Residual polytope data over the elements of N~ in increasing order.
struct ResidualPolytope {
  std::vector<int> elements;
  std::vector<std::vector<double>> P, C;
  std::vector<double> r, s;
};

inline ResidualPolytope residual_polytope(const ResidualSpace& sp, const Guess& g) {
  ResidualPolytope poly;
  poly.elements = g.residual.elements();
  for (int i = 0; i < sp.p(); ++i) {
    poly.P.emplace_back();
    for (int e : poly.elements) poly.P.back().push_back(static_cast<double>(sp.P(i, e)));
    poly.r.push_back(static_cast<double>(g.r[i]));
  }
  for (int j = 0; j < sp.c(); ++j) {
    poly.C.emplace_back();
    for (int e : poly.elements) poly.C.back().push_back(static_cast<double>(sp.C(j, e)));
    poly.s.push_back(static_cast<double>(g.s[j]));
  }
  return poly;
}

inline bool polytope_nonempty(const ResidualPolytope& poly) {
  const std::vector<double> zero(poly.elements.size(), 0.0);
  return linear_max_over_polytope(zero, poly.P, poly.r, poly.C, poly.s).status == LpStatus::kOptimal;
}

// Discretized continuous greedy on max G(x) over the residual polytope. The
// returned vector is indexed like residual_polytope(...).elements. Returns
// nothing when the polytope is empty.
inline std::optional<std::vector<double>> continuous_greedy(const ResidualSpace& sp, const Guess& g, int steps,
                                                            int samples, std::uint64_t seed) {
  if (steps < 1 || samples < 1) throw InputError("continuous_greedy: steps and samples must be positive");
  const auto poly = residual_polytope(sp, g);
  const std::size_t k = poly.elements.size();
  std::vector<double> x(k, 0.0);
  auto rng = detail::make_rng(seed, 0x9e3779b97f4a7c15ULL);
  const auto e1 = g.E1.elements();
  for (int t = 0; t < steps; ++t) {
    std::vector<double> w(k, 0.0);
    for (int smp = 0; smp < samples; ++smp) {
      IncrementalEvaluator ev(sp.work().objective);
      for (int e : e1) ev.add(e);
      std::vector<char> in(k, 0);
      for (std::size_t a = 0; a < k; ++a)
        if (detail::uniform01(rng) < x[a]) {
          in[a] = 1;
          ev.add(poly.elements[a]);
        }
      const double base = ev.value().to_double();
      // Partial derivative of the multilinear extension: f(R + a) - f(R - a).
      for (std::size_t a = 0; a < k; ++a) {
        if (in[a]) {
          ev.remove(poly.elements[a]);
          w[a] += base - ev.value().to_double();
          ev.add(poly.elements[a]);
        } else {
          ev.add(poly.elements[a]);
          w[a] += ev.value().to_double() - base;
          ev.remove(poly.elements[a]);
        }
      }
    }
    for (auto& v : w) v /= samples;
    const auto dir = linear_max_over_polytope(w, poly.P, poly.r, poly.C, poly.s);
    if (dir.status != LpStatus::kOptimal) return std::nullopt;
    for (std::size_t a = 0; a < k; ++a) x[a] += dir.x[a] / steps;
  }
  for (auto& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

struct RoundResult {
  Subset R, R_prime, S;
};

// Independent rounding of x_bar (indexed like the residual elements) followed
// by removal of L_D. S = E1 u R'.
inline RoundResult round_and_filter(const Guess& g, const std::vector<int>& elements, const std::vector<double>& x_bar,
                                    std::mt19937_64& rng) {
  if (elements.size() != x_bar.size()) throw InputError("round_and_filter: dimension mismatch");
  RoundResult out{Subset(g.E1.universe()), Subset(g.E1.universe()), g.E1};
  for (std::size_t a = 0; a < elements.size(); ++a)
    if (detail::uniform01(rng) < x_bar[a]) out.R.insert(elements[a]);
  out.R_prime = out.R - g.L_D;
  out.S = g.E1 | out.R_prime;
  return out;
}

struct GuessDiagnostics {
  Subset E1;
  int E0_size = 0;
  std::vector<int> grid;
  std::vector<int> Y, Z;
  int L_size = 0;
  bool polytope_feasible = false;
  int passed = 0;
  int failed = 0;
  double best_value = 0.0;
};

struct MainResult {
  bool found = false;
  Subset S_alg;
  Rational value;
  RatioReport ratios;
  std::size_t guesses = 0;
  std::size_t distinct = 0;  // guesses with a residual problem not seen before
  std::size_t examined = 0;
  bool truncated = false;
  int trials = 0;
  std::vector<GuessDiagnostics> diagnostics;
};

// Exact check of the final filter on the original instance:
// P 1_S <= p and C 1_S >= (1 - eps) c.
inline bool passes_filter(const Instance& inst, const Subset& S, const BigRational& eps) {
  const auto pv = pack_vector(inst, S);
  const auto cv = cover_vector(inst, S);
  for (std::size_t i = 0; i < pv.size(); ++i)
    if (pv[i] > inst.pack_bound[i]) return false;
  for (std::size_t j = 0; j < cv.size(); ++j)
    if (to_big(cv[j]) < (1 - eps) * to_big(inst.cover_bound[j])) return false;
  return true;
}

// Guess enumeration, continuous greedy, scaled independent rounding and
// post-processing; the best set passing the filter wins.
inline MainResult solve_main(const Instance& inst, const ContinuousParams& prm) {
  prm.validate();
  const ResidualSpace sp(inst);
  const GuessList list = enumerate_guesses(sp, prm);
  MainResult res;
  res.guesses = list.guesses.size();
  res.examined = list.examined;
  res.truncated = list.truncated;
  const auto& f = inst.objective;
  const double shrink = 1.0 / (1.0 + static_cast<double>(prm.delta));
  // Guesses with the same (E0, E1, s_D) pose the same residual problem.
  std::set<std::tuple<std::vector<int>, std::vector<int>, std::vector<BigRational>>> seen;
  for (std::size_t gi = 0; gi < list.guesses.size(); ++gi) {
    const Guess& g = list.guesses[gi];
    if (!seen.emplace(g.E0.elements(), g.E1.elements(), g.s).second) continue;
    ++res.distinct;
    GuessDiagnostics diag;
    diag.E1 = g.E1;
    diag.E0_size = g.E0.size();
    diag.grid = g.grid;
    diag.Y = g.Y;
    diag.Z = g.Z;
    diag.L_size = g.L_D.size();
    const auto poly = residual_polytope(sp, g);
    diag.polytope_feasible = polytope_nonempty(poly);
    if (diag.polytope_feasible) {
      const auto x = continuous_greedy(sp, g, prm.steps, prm.samples, prm.seed ^ (gi * 0x9e3779b97f4a7c15ULL));
      if (x) {
        std::vector<double> xb = *x;
        for (auto& v : xb) v *= shrink;
        for (int t = 0; t < prm.trials; ++t) {
          auto rng = detail::make_rng(prm.seed, gi, static_cast<std::uint64_t>(t));
          const auto rr = round_and_filter(g, poly.elements, xb, rng);
          ++res.trials;
          if (!passes_filter(inst, rr.S, prm.epsilon)) {
            ++diag.failed;
            continue;
          }
          ++diag.passed;
          const Rational v = f.eval(rr.S);
          diag.best_value = std::max(diag.best_value, v.to_double());
          if (!res.found || v > res.value || (v == res.value && lex_less(rr.S, res.S_alg))) {
            res.found = true;
            res.S_alg = rr.S;
            res.value = v;
          }
        }
      } else {
        diag.polytope_feasible = false;
      }
    }
    res.diagnostics.push_back(std::move(diag));
  }
  if (res.found) res.ratios = ratio_report(inst, res.S_alg);
  return res;
}

}  // namespace pcsm
