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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pcsm/brute.hpp"
#include "pcsm/continuous.hpp"
#include "pcsm/generate.hpp"

namespace {

using namespace pcsm;
using testing_util::row;

ContinuousParams relaxed(int delta_den = 5) { return relaxed_params(BigRational(1, 10), BigRational(1, delta_den)); }

Instance random_instance(std::uint64_t seed, int n, int p = 1, int c = 1) {
  return generate_instance(testing_util::spec(n, p, c, seed));
}

// g^D(T) for T given as residual-element positions.
double residual_value(const Instance& inst, const Guess& g, const std::vector<int>& elements,
                      const std::vector<int>& picked) {
  std::vector<int> with = g.E1.elements();
  for (int a : picked) with.push_back(elements[a]);
  std::sort(with.begin(), with.end());
  return (oracle::value(inst.objective, with) - oracle::value(inst.objective, g.E1.elements())).to_double();
}

TEST(ResidualSpace, NormalizesAndClamps) {
  Instance inst;
  inst.n = 3;
  inst.objective = testing_util::linear({1, 1, 1});
  inst.packing = {row({2, 4, 0}), row({1, 0, 0})};
  inst.pack_bound = row({4, 0});
  inst.covering = {row({6, 1, 2})};
  inst.cover_bound = row({2});
  const ResidualSpace sp(inst);
  EXPECT_EQ(sp.p(), 1);
  EXPECT_EQ(sp.P(0, 0), BigRational(1, 2));
  EXPECT_EQ(sp.P(0, 1), BigRational(1));
  EXPECT_EQ(sp.C(0, 0), BigRational(1));
  EXPECT_EQ(sp.C(0, 1), BigRational(1, 2));
  EXPECT_EQ(sp.forced_out(), Subset(3, {0}));
}

TEST(Guess, DerivedQuantities) {
  const auto inst = testing_util::one_row(testing_util::linear({1, 1, 1}), row({2, 1, 1}), Rational(4), row({1, 1, 1}),
                                          Rational(2));
  const ResidualSpace sp(inst);
  const auto prm = relaxed(2);
  const Guess g = make_guess(sp, prm, Subset(3), Subset(3, {0}), {BigRational(1)});
  EXPECT_EQ(g.r[0], BigRational(1, 2));
  EXPECT_EQ(g.s[0], BigRational(1, 2));
  EXPECT_EQ(g.Y, std::vector<int>{0});
  EXPECT_EQ(g.Z, std::vector<int>{0});
  EXPECT_EQ(g.residual, Subset(3, {1, 2}));
  EXPECT_EQ(g.L_D, Subset(3, {1, 2}));
  EXPECT_TRUE(g.P_D.empty());
  const Guess over = make_guess(sp, prm, Subset(3), Subset(3, {0}), {BigRational(1, 4)});
  EXPECT_EQ(over.s[0], BigRational(0));
}

TEST(Guess, InconsistencyIsReported) {
  const auto inst = testing_util::one_row(testing_util::linear({1, 1}), row({3, 3}), Rational(4));
  const ResidualSpace sp(inst);
  const Guess g = make_guess(sp, relaxed(), Subset(2, {0}), Subset(2, {0, 1}), {});
  const auto v = consistency_violations(sp, g);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_FALSE(is_consistent(sp, g));
}

TEST(CoverGrid, CoversTheRangeWithBoundedSteps) {
  for (const BigRational& d : {BigRational(1, 5), BigRational(1, 20), BigRational(1, 4840)}) {
    const auto grid = cover_grid(d, 12);
    ASSERT_EQ(grid.front(), 1);
    for (std::size_t k = 1; k < grid.size(); ++k) {
      ASSERT_GT(grid[k], grid[k - 1]);
      ASSERT_LE(grid[k], (1 + d) * grid[k - 1]);
    }
    EXPECT_GE((1 + d) * grid.back(), 12);
    EXPECT_LT(grid.back(), 12);
  }
  EXPECT_EQ(cover_grid(BigRational(1, 5), 1).size(), 1u);
  EXPECT_EQ(cover_grid(BigRational(1, 5), 2)[1], BigRational(6, 5));
  EXPECT_THROW(cover_grid(BigRational(0), 3), InputError);
}

TEST(Enumeration, EveryGuessConsistentAndSound) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = random_instance(seed, 7, 1 + seed % 2, 1 + seed % 2);
    const ResidualSpace sp(inst);
    const auto prm = relaxed();
    const auto list = enumerate_guesses(sp, prm);
    ASSERT_FALSE(list.guesses.empty());
    for (const auto& g : list.guesses) {
      ASSERT_TRUE(is_consistent(sp, g));
      ASSERT_TRUE(g.E0.disjoint(g.E1));
      for (int i = 0; i < sp.p(); ++i) {
        BigRational used = 0;
        for (int e : g.E1.elements()) used += sp.P(i, e);
        ASSERT_LE(used, 1);
      }
      for (const auto& s : g.s) ASSERT_GE(s, 0);
      for (int e : g.L_D.elements()) {
        bool why = false;
        for (int i : g.Y) why = why || (sp.P(i, e) > 0 && sp.P(i, e) >= prm.beta * g.r[i]);
        ASSERT_TRUE(why);
      }
      for (int e : g.residual.elements()) {
        for (int i = 0; i < sp.p(); ++i) {
          if (std::find(g.Y.begin(), g.Y.end(), i) == g.Y.end()) {
            ASSERT_LT(sp.P(i, e), prm.alpha * g.r[i]);
          }
        }
        for (int j = 0; j < sp.c(); ++j) {
          if (std::find(g.Z.begin(), g.Z.end(), j) == g.Z.end()) {
            ASSERT_LT(sp.C(j, e), prm.alpha * g.s[j]);
          }
        }
      }
    }
  }
}

TEST(Enumeration, ContainsACorrectGuess) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = random_instance(seed + 50, 7, 1, 1);
    const auto O = brute_optimum(inst).best_set;
    const ResidualSpace sp(inst);
    const auto prm = relaxed(2);
    const auto list = enumerate_guesses(sp, prm);
    ASSERT_FALSE(list.truncated);
    const bool any = std::any_of(list.guesses.begin(), list.guesses.end(),
                                 [&](const Guess& g) { return is_correct(sp, prm, g, O); });
    EXPECT_TRUE(any) << "seed " << seed;
  }
}

TEST(Enumeration, BudgetTruncates) {
  const auto inst = random_instance(3, 8);
  auto prm = relaxed();
  prm.budget = 10;
  const auto list = enumerate_guesses(ResidualSpace(inst), prm);
  EXPECT_TRUE(list.truncated);
  EXPECT_EQ(list.examined, 10u);
}

TEST(ResidualObjective, BasicIdentities) {
  const auto inst = random_instance(21, 8);
  const ResidualSpace sp(inst);
  const auto prm = relaxed();
  const std::vector<BigRational> ones(sp.c(), BigRational(1));
  const Guess none = make_guess(sp, prm, Subset(8), Subset(8), ones);
  EXPECT_EQ(residual_objective(sp, none, Subset(8)), Rational(0));
  const Subset T(8, {1, 4});
  EXPECT_EQ(residual_objective(sp, none, T), inst.objective.eval(T) - inst.objective.eval(Subset(8)));
  const Guess some = make_guess(sp, prm, Subset(8), Subset(8, {1}), ones);
  EXPECT_THROW(residual_objective(sp, some, T), InputError);
}

TEST(ResidualObjective, SampledSubmodularity) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = random_instance(seed + 30, 10);
    const ResidualSpace sp(inst);
    const auto list = enumerate_guesses(sp, relaxed());
    for (std::size_t k = 0; k < list.guesses.size(); k += 1 + list.guesses.size() / 20) {
      const Guess& g = list.guesses[k];
      const auto res = g.residual.elements();
      if (res.empty()) continue;
      for (int t = 0; t < 30; ++t) {
        Subset A(10), B(10);
        for (int e : res) {
          const auto r = rng() % 3;
          if (r == 0) A.insert(e);
          if (r <= 1) B.insert(e);
        }
        const int x = res[rng() % res.size()];
        ASSERT_LE(residual_objective(sp, g, A), residual_objective(sp, g, B));
        if (B.contains(x)) continue;
        ASSERT_GE(residual_objective(sp, g, A.with(x)) - residual_objective(sp, g, A),
                  residual_objective(sp, g, B.with(x)) - residual_objective(sp, g, B));
      }
    }
  }
}

TEST(Multilinear, IntegralPointsAreExact) {
  const auto inst = random_instance(5, 9);
  const auto zero = multilinear_estimate(inst.objective, std::vector<double>(9, 0.0), 50, 1);
  EXPECT_EQ(zero.mean, inst.objective.eval(Subset(9)).to_double());
  EXPECT_EQ(zero.stderr_, 0.0);
  std::vector<double> ind(9, 0.0);
  ind[2] = ind[5] = 1.0;
  EXPECT_EQ(multilinear_estimate(inst.objective, ind, 50, 1).mean, inst.objective.eval(Subset(9, {2, 5})).to_double());
}

TEST(Multilinear, LinearOracleWithinThreeSigma) {
  const SubmodularOracle f = testing_util::linear({3, 1, 4, 1, 5});
  const std::vector<double> x{0.2, 0.9, 0.5, 0.1, 0.7};
  const auto est = multilinear_estimate(f, x, 4000, 2);
  const double exact = 3 * 0.2 + 0.9 + 4 * 0.5 + 0.1 + 5 * 0.7;
  EXPECT_GT(est.stderr_, 0.0);
  EXPECT_NEAR(est.mean, exact, 3 * est.stderr_);
}

TEST(Multilinear, MatchesFullExpansion) {
  std::mt19937_64 rng(4);
  for (int fam = 0; fam < 3; ++fam) {
    const int n = 10;
    const auto inst = random_instance(90 + fam, n);
    std::vector<double> x(n);
    for (auto& v : x) v = static_cast<double>(rng() % 1000) / 1000.0;
    const auto est = multilinear_estimate(inst.objective, x, 100000, 3 + fam);
    const double exact = oracle::multilinear_exact(n, x, [&](const std::vector<int>& s) {
      return oracle::value(inst.objective, s).to_double();
    });
    EXPECT_NEAR(est.mean, exact, 4 * est.stderr_) << "family " << fam;
  }
}

TEST(ContinuousGreedy, LinearObjectiveFollowsTheLpOptimum) {
  Instance inst;
  inst.n = 4;
  inst.objective = testing_util::linear({3, 2, 2, 1});
  inst.packing = {row({2, 1, 2, 1})};
  inst.pack_bound = row({3});
  inst.covering = {row({1, 2, 0, 1})};
  inst.cover_bound = row({2});
  const ResidualSpace sp(inst);
  const Guess g = make_guess(sp, relaxed(), Subset(4), Subset(4), {BigRational(1)});
  const auto x = continuous_greedy(sp, g, 20, 5, 1);
  ASSERT_TRUE(x.has_value());
  const auto poly = residual_polytope(sp, g);
  const std::vector<double> w{3, 2, 2, 1};
  const auto best = oracle::vertex_max(w, poly.P, poly.r, poly.C, poly.s);
  ASSERT_TRUE(best.has_value());
  double got = 0;
  for (int e = 0; e < 4; ++e) got += w[e] * (*x)[e];
  EXPECT_NEAR(got, *best, 1e-6);
  // Every step takes the same direction, so one step lands on the same point.
  const auto once = continuous_greedy(sp, g, 1, 5, 2);
  ASSERT_TRUE(once.has_value());
  for (int e = 0; e < 4; ++e) EXPECT_NEAR((*once)[e], (*x)[e], 1e-9);
}

TEST(ContinuousGreedy, OutputLiesInThePolytope) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = random_instance(seed + 110, 9, 2, 1);
    const ResidualSpace sp(inst);
    const auto list = enumerate_guesses(sp, relaxed());
    int checked = 0;
    for (std::size_t k = 0; k < list.guesses.size() && checked < 5; ++k) {
      const auto& g = list.guesses[k];
      const auto poly = residual_polytope(sp, g);
      if (poly.elements.empty() || !polytope_nonempty(poly)) continue;
      const auto x = continuous_greedy(sp, g, 10, 10, seed);
      ASSERT_TRUE(x.has_value());
      ++checked;
      for (double v : *x) ASSERT_TRUE(v >= 0.0 && v <= 1.0);
      for (std::size_t i = 0; i < poly.P.size(); ++i) {
        double t = 0;
        for (std::size_t a = 0; a < x->size(); ++a) t += poly.P[i][a] * (*x)[a];
        ASSERT_LE(t, poly.r[i] + 1e-9);
      }
      for (std::size_t j = 0; j < poly.C.size(); ++j) {
        double t = 0;
        for (std::size_t a = 0; a < x->size(); ++a) t += poly.C[j][a] * (*x)[a];
        ASSERT_GE(t, poly.s[j] - 1e-9);
      }
    }
  }
}

// For the correct guess with the smallest E1, the scaled point keeps the
// promised fraction of f(O), measured exactly by full expansion.
TEST(ContinuousGreedy, CorrectGuessValueOnCoverage) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30 && checked < 4; ++seed) {
    GenSpec gs = testing_util::spec(10, 1, 1, 1200 + seed);
    gs.family = "coverage";
    const auto inst = generate_instance(gs);
    const auto O = brute_optimum(inst).best_set;
    const ResidualSpace sp(inst);
    // gamma = 1 keeps the smallest correct E1 to a single element, so the
    // bound below is not vacuous.
    auto prm = relaxed(20);
    prm.alpha = prm.beta = BigRational(9, 10);
    prm.gamma = 1;
    prm.max_e1 = 2;
    const auto list = enumerate_guesses(sp, prm);
    const Guess* pick = nullptr;
    for (const auto& g : list.guesses)
      if (is_correct(sp, prm, g, O) && (!pick || g.E1.size() < pick->E1.size())) pick = &g;
    ASSERT_NE(pick, nullptr) << "seed " << seed;
    const double fO = inst.objective.eval(O).to_double();
    const double fE1 = inst.objective.eval(pick->E1).to_double();
    const double bound = (1 - std::exp(-1.0) - 0.05) * fO - fE1;
    if (bound <= 0) continue;
    ++checked;
    const auto poly = residual_polytope(sp, *pick);
    double mean = 0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      auto x = continuous_greedy(sp, *pick, 100, 200, s);
      ASSERT_TRUE(x.has_value());
      for (auto& v : *x) v /= 1.0 + static_cast<double>(prm.delta);
      const int k = static_cast<int>(poly.elements.size());
      mean += oracle::multilinear_exact(k, *x, [&](const std::vector<int>& picked) {
        return residual_value(inst, *pick, poly.elements, picked);
      });
    }
    EXPECT_GE(mean / 3, bound) << "seed " << seed;
  }
  EXPECT_GT(checked, 0);
}

TEST(Rounding, ZeroPointKeepsE1) {
  const auto inst = random_instance(13, 6);
  const ResidualSpace sp(inst);
  const Guess g = make_guess(sp, relaxed(), Subset(6), Subset(6, {1, 3}), {BigRational(1)});
  auto rng = detail::make_rng(1);
  const auto poly = residual_polytope(sp, g);
  const auto rr = round_and_filter(g, poly.elements, std::vector<double>(poly.elements.size(), 0.0), rng);
  EXPECT_EQ(rr.S, g.E1);
  EXPECT_TRUE(rr.R.empty());
}

TEST(Rounding, NothingRemovedWithoutCriticalLargeElements) {
  const auto inst = random_instance(14, 6);
  const ResidualSpace sp(inst);
  const Guess g = make_guess(sp, relaxed(), Subset(6), Subset(6), {BigRational(1)});
  ASSERT_TRUE(g.L_D.empty());
  auto rng = detail::make_rng(2);
  const auto poly = residual_polytope(sp, g);
  for (int t = 0; t < 50; ++t) {
    const auto rr = round_and_filter(g, poly.elements, std::vector<double>(poly.elements.size(), 0.5), rng);
    ASSERT_EQ(rr.R, rr.R_prime);
  }
}

TEST(Rounding, InclusionFrequenciesAndRowMeans) {
  const auto inst = random_instance(15, 12, 2, 2);
  const ResidualSpace sp(inst);
  const auto prm = relaxed();
  const auto list = enumerate_guesses(sp, prm);
  const Guess* pick = nullptr;
  for (const auto& g : list.guesses) {
    const auto poly = residual_polytope(sp, g);
    if (poly.elements.size() >= 4 && polytope_nonempty(poly)) {
      pick = &g;
      break;
    }
  }
  ASSERT_NE(pick, nullptr);
  const auto poly = residual_polytope(sp, *pick);
  auto x = continuous_greedy(sp, *pick, 20, 20, 1);
  ASSERT_TRUE(x.has_value());
  for (auto& v : *x) v /= 1.0 + static_cast<double>(prm.delta);
  const int trials = 10000;
  const std::size_t k = x->size();
  std::vector<int> hits(k, 0);
  std::vector<double> psum(poly.P.size(), 0), psq(poly.P.size(), 0);
  auto rng = detail::make_rng(99);
  for (int t = 0; t < trials; ++t) {
    const auto rr = round_and_filter(*pick, poly.elements, *x, rng);
    for (std::size_t a = 0; a < k; ++a) hits[a] += rr.R.contains(poly.elements[a]);
    for (std::size_t i = 0; i < poly.P.size(); ++i) {
      double v = 0;
      for (std::size_t a = 0; a < k; ++a) v += rr.R.contains(poly.elements[a]) ? poly.P[i][a] : 0.0;
      psum[i] += v;
      psq[i] += v * v;
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    const double p = (*x)[a];
    EXPECT_NEAR(hits[a] / static_cast<double>(trials), p, 4 * std::sqrt(p * (1 - p) / trials) + 1e-12);
  }
  for (std::size_t i = 0; i < poly.P.size(); ++i) {
    double exact = 0;
    for (std::size_t a = 0; a < k; ++a) exact += poly.P[i][a] * (*x)[a];
    EXPECT_LE(exact, poly.r[i] / (1.0 + static_cast<double>(prm.delta)) + 1e-9);
    const double mean = psum[i] / trials;
    const double sd = std::sqrt(std::max(0.0, psq[i] / trials - mean * mean) / trials);
    EXPECT_NEAR(mean, exact, 4 * sd + 1e-12);
  }
}

TEST(SolveMain, EmptySetFeasible) {
  auto inst = random_instance(16, 7);
  inst.cover_bound[0] = Rational(0);
  auto prm = relaxed();
  prm.steps = 10;
  prm.samples = 10;
  prm.trials = 3;
  const auto r = solve_main(inst, prm);
  ASSERT_TRUE(r.found);
  EXPECT_GE(r.value, inst.objective.eval(Subset(7)));
}

TEST(SolveMain, FilterIsHard) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = random_instance(seed + 140, 6 + static_cast<int>(seed % 5), 1 + seed % 2, 1 + seed % 2);
    auto prm = relaxed();
    prm.steps = 10;
    prm.samples = 20;
    prm.trials = 5;
    prm.seed = seed;
    const auto r = solve_main(inst, prm);
    if (!r.found) continue;
    const auto pv = pack_vector(inst, r.S_alg), cv = cover_vector(inst, r.S_alg);
    for (std::size_t i = 0; i < pv.size(); ++i) EXPECT_LE(pv[i], inst.pack_bound[i]);
    for (std::size_t j = 0; j < cv.size(); ++j) EXPECT_GE(cv[j] * Rational(10), inst.cover_bound[j] * Rational(9));
    EXPECT_EQ(r.value, inst.objective.eval(r.S_alg));
  }
}

TEST(SolveMain, SameSeedSameAnswer) {
  const auto inst = random_instance(17, 8);
  auto prm = relaxed();
  prm.steps = 10;
  prm.samples = 10;
  prm.trials = 4;
  prm.seed = 5;
  const auto a = solve_main(inst, prm), b = solve_main(inst, prm);
  EXPECT_EQ(a.S_alg, b.S_alg);
  EXPECT_EQ(a.trials, b.trials);
}

TEST(Params, TheoryScheduleAndValidation) {
  const auto prm = theory_params(BigRational(1, 10), 1, 1);
  EXPECT_LT(prm.delta, BigRational(1, 30));
  EXPECT_EQ(prm.alpha, prm.delta * prm.delta * prm.delta);
  EXPECT_EQ(prm.gamma, 1 / prm.alpha);
  auto bad = relaxed();
  bad.gamma = BigRational(1, 2);
  EXPECT_THROW(bad.validate(), InputError);
  bad = relaxed();
  bad.epsilon = 1;
  EXPECT_THROW(bad.validate(), InputError);
}

}  // namespace
