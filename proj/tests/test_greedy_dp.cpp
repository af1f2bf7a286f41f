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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pcsm/brute.hpp"
#include "pcsm/generate.hpp"
#include "pcsm/greedy_dp.hpp"

namespace {

using namespace pcsm;
using testing_util::row;

TEST(VanillaDp, SingleElement) {
  const auto inst = testing_util::one_row(testing_util::linear({5}), row({1}), Rational(1), row({1}), Rational(1));
  const auto r = vanilla_dp(inst);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.best, Subset(1, {0}));
}

TEST(VanillaDp, RejectsFractionalData) {
  const auto inst = testing_util::one_row(testing_util::linear({5}), {Rational(1, 2)}, Rational(1));
  EXPECT_THROW(vanilla_dp(inst), InputError);
}

TEST(VanillaDp, RefusesOverBudget) {
  const auto inst = generate_instance(testing_util::spec(10, 2, 2, 3));
  DpOptions opt;
  opt.cell_budget = 10;
  EXPECT_THROW(vanilla_dp(inst, opt), BudgetError);
}

TEST(VanillaDp, CellsMatchTheirKeys) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = generate_instance(testing_util::spec(9, 1 + seed % 2, 1 + seed % 2, seed));
    for (bool exact : {false, true}) {
      DpOptions opt;
      opt.exact_keys = exact;
      opt.cell_budget = 1e12;  // the table itself stays sparse
      const auto r = vanilla_dp(inst, opt);
      for (const auto& [key, cell] : r.table) {
        ASSERT_EQ(cell.set.size(), key.q);
        ASSERT_EQ(cell.value, inst.objective.eval(cell.set));
        const auto pv = pack_vector(inst, cell.set);
        const auto cv = cover_vector(inst, cell.set);
        for (std::size_t i = 0; i < pv.size(); ++i) ASSERT_EQ(pv[i], Rational(key.pack[i]));
        for (std::size_t j = 0; j < cv.size(); ++j) {
          const Rational want = exact ? cv[j] : std::min(cv[j], inst.cover_bound[j]);
          ASSERT_EQ(want, Rational(key.cover[j]));
        }
      }
    }
  }
}

TEST(VanillaDp, DeterministicReplay) {
  const auto inst = generate_instance(testing_util::spec(9, 2, 1, 17));
  const auto a = vanilla_dp(inst), b = vanilla_dp(inst);
  ASSERT_EQ(a.table.size(), b.table.size());
  auto it = b.table.begin();
  for (const auto& [key, cell] : a.table) {
    ASSERT_EQ(key, it->first);
    ASSERT_EQ(cell.set, it->second.set);
    ++it;
  }
}

TEST(VanillaDp, QuarterOfOptimumWithHalfCovering) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = generate_instance(testing_util::spec(5 + seed % 6, 1 + seed % 2, 1 + seed % 2, 200 + seed));
    const auto opt = brute_optimum(inst);
    if (opt.feasible_count == 0) continue;
    const auto r = vanilla_dp(inst);
    ASSERT_TRUE(r.found);
    EXPECT_GE(r.value * Rational(4), opt.best_value) << "seed " << seed;
    const auto pv = pack_vector(inst, r.best), cv = cover_vector(inst, r.best);
    for (std::size_t i = 0; i < pv.size(); ++i) EXPECT_LE(pv[i], inst.pack_bound[i]);
    for (std::size_t j = 0; j < cv.size(); ++j) EXPECT_GE(cv[j] * Rational(2), inst.cover_bound[j]);
  }
}

// For any order of O and any S within O, f(S) dominates the sum of the
// marginals the elements of S had when O was built in that order.
TEST(VanillaDp, PrefixMarginalsUnderestimate) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = generate_instance(testing_util::spec(10, 1, 1, 300 + seed));
    const auto O = brute_optimum(inst).best_set.elements();
    for (int t = 0; t < 20; ++t) {
      auto order = O;
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<Rational> g(inst.n);
      Subset pre(inst.n);
      for (int e : order) {
        g[e] = marginal(inst.objective, pre, e);
        pre.insert(e);
      }
      Subset S(inst.n);
      Rational gs;
      for (int e : order)
        if (rng() & 1) {
          S.insert(e);
          gs += g[e];
        }
      ASSERT_GE(inst.objective.eval(S), gs);
    }
  }
}

TEST(Completion, EmptySetAlreadyFeasible) {
  const auto inst = testing_util::one_row(testing_util::linear({0, 0}), row({1, 1}), Rational(0), row({1, 1}), Rational(0));
  const auto r = dp_with_completion(inst);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(r.support.empty());
  EXPECT_TRUE(is_feasible(inst, r.support).feasible);
}

TEST(Completion, NoCoveringSetMeansNoSolution) {
  const auto inst = testing_util::one_row(testing_util::linear({1, 1}), row({1, 1}), Rational(2), row({1, 1}), Rational(3));
  const auto r = dp_with_completion(inst);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.valid_cells, 0u);
}

TEST(Completion, MultisetSatisfiesBothSides) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = generate_instance(testing_util::spec(4 + seed % 7, 1 + seed % 2, 1 + seed % 2, 400 + seed));
    if (brute_optimum(inst).feasible_count == 0) continue;
    const auto r = dp_with_completion(inst);
    ASSERT_TRUE(r.found);
    std::vector<Rational> cv(inst.num_covering()), pv(inst.num_packing());
    for (int e = 0; e < inst.n; ++e) {
      ASSERT_LE(r.multiplicity[e], 2);
      ASSERT_EQ(r.multiplicity[e] > 0, r.support.contains(e));
      for (int j = 0; j < inst.num_covering(); ++j) cv[j] += inst.covering[j][e] * Rational(r.multiplicity[e]);
      for (int i = 0; i < inst.num_packing(); ++i) pv[i] += inst.packing[i][e] * Rational(r.multiplicity[e]);
    }
    EXPECT_EQ(cv, r.cover_vec);
    EXPECT_EQ(pv, r.pack_vec);
    for (int j = 0; j < inst.num_covering(); ++j) EXPECT_GE(cv[j], inst.cover_bound[j]);
    for (int i = 0; i < inst.num_packing(); ++i) EXPECT_LE(pv[i], inst.pack_bound[i]);
    EXPECT_EQ(r.value, inst.objective.eval(r.support));
  }
}

TEST(ScaleInstance, SingleElementFormula) {
  const auto inst = testing_util::one_row(testing_util::linear({1}), row({1}), Rational(1), row({4}), Rational(4));
  const auto sc = scale_instance(inst, Rational(1));
  EXPECT_EQ(sc.K_c[0], Rational(4));
  EXPECT_EQ(sc.scaled.covering[0][0], Rational(1));
  EXPECT_EQ(sc.scaled.cover_bound[0], Rational(1));
}

TEST(ScaleInstance, RejectsBadEpsilon) {
  const auto inst = testing_util::one_row(testing_util::linear({1}), row({1}), Rational(1));
  EXPECT_THROW(scale_instance(inst, Rational(0)), InputError);
  EXPECT_THROW(scale_instance(inst, Rational(3, 2)), InputError);
}

TEST(ScaleInstance, OptimumSurvivesAndViolationsStayBounded) {
  for (const Rational eps : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const auto inst = generate_instance(testing_util::spec(8, 1 + seed % 2, 1 + seed % 2, 500 + seed, seed % 2 == 0));
      const auto sc = scale_instance(inst, eps);
      const auto opt = brute_optimum(inst);
      ASSERT_GT(opt.feasible_count, 0);
      EXPECT_TRUE(is_feasible(sc.scaled, opt.best_set).feasible);
      for (std::uint64_t mask = 0; mask < 256; ++mask) {
        const auto s = Subset::from_mask(8, mask);
        if (!is_feasible(sc.scaled, s).feasible) continue;
        const auto pv = pack_vector(inst, s), cv = cover_vector(inst, s);
        for (std::size_t i = 0; i < pv.size(); ++i) ASSERT_LE(pv[i], (Rational(1) + eps) * inst.pack_bound[i]);
        for (std::size_t j = 0; j < cv.size(); ++j) ASSERT_GE(cv[j], (Rational(1) - eps) * inst.cover_bound[j]);
      }
    }
  }
}

}  // namespace
