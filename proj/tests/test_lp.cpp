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

#include "oracles.hpp"
#include "pcsm/lp.hpp"

namespace {

using namespace pcsm;

double closed_form(int m) { return std::pow(1.0 - 1.0 / m, m); }

TEST(Simplex, SingleBoundedVariable) {
  BasicLinearProgram<double> lp(Sense::kMaximize);
  const int x = lp.add_variable("x", 1.0);
  lp.add_constraint({{x, 1.0}}, Relation::kLessEq, 1.0);
  const auto sol = simplex_solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  BasicLinearProgram<double> bad(Sense::kMinimize);
  const int x = bad.add_variable("x", 1.0);
  bad.add_constraint({{x, 1.0}}, Relation::kLessEq, 1.0);
  bad.add_constraint({{x, 1.0}}, Relation::kGreaterEq, 2.0);
  EXPECT_EQ(simplex_solve(bad).status, LpStatus::kInfeasible);

  BasicLinearProgram<double> open(Sense::kMaximize);
  const int y = open.add_variable("y", 1.0);
  open.add_constraint({{y, 1.0}}, Relation::kGreaterEq, 1.0);
  EXPECT_EQ(simplex_solve(open).status, LpStatus::kUnbounded);
}

TEST(Simplex, EqualityAndNegativeRightHandSide) {
  // min x + 2y  s.t.  x + y = 3,  -x <= -1  ->  x = 3, y = 0.
  BasicLinearProgram<double> lp(Sense::kMinimize);
  const int x = lp.add_variable("x", 1.0), y = lp.add_variable("y", 2.0);
  lp.add_constraint({{x, 1.0}, {y, 1.0}}, Relation::kEqual, 3.0);
  lp.add_constraint({{x, -1.0}}, Relation::kLessEq, -1.0);
  const auto sol = simplex_solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 3.0, 1e-9);
  EXPECT_NEAR(sol.x[x], 3.0, 1e-9);
}

TEST(Simplex, RejectsUnknownVariables) {
  BasicLinearProgram<double> lp;
  EXPECT_THROW(lp.add_constraint({{0, 1.0}}, Relation::kLessEq, 1.0), InputError);
  lp.add_variable("x");
  EXPECT_THROW(lp.add_variable("x"), InputError);
  EXPECT_THROW(lp.var("z"), InputError);
}

TEST(Simplex, PivotRulesAgree) {
  SimplexOptions dantzig;
  dantzig.rule = PivotRule::kDantzig;
  for (int m : {3, 10, 25}) {
    const auto lp = build_lp_f(m);
    EXPECT_NEAR(simplex_solve(lp).objective, simplex_solve(lp, dantzig).objective, 1e-9);
  }
}

TEST(LpF, SmallTableEntries) {
  EXPECT_NEAR(simplex_solve(build_lp_f(2)).objective, 0.25, 1e-6);
  EXPECT_NEAR(simplex_solve(build_lp_f(5)).objective, 0.31727598, 1e-6);
  EXPECT_NEAR(simplex_solve(build_lp_f(50)).objective, 0.34990649, 1e-6);
}

TEST(LpF, OptimaIncreaseWithM) {
  double prev = 0;
  for (int m : {2, 3, 5, 8, 10, 20, 30}) {
    const double v = simplex_solve(build_lp_f(m)).objective;
    EXPECT_GE(v, prev - 1e-12) << "m=" << m;
    prev = v;
  }
}

TEST(LpF, NeverAboveThePlainProgram) {
  for (int m : {1, 2, 5, 10, 30})
    EXPECT_LE(simplex_solve(build_lp_f(m)).objective, simplex_solve(build_lp(m)).objective + 1e-9);
}

TEST(PlainLp, ClosedForm) {
  for (int m : {1, 2, 3, 5, 10}) {
    const auto sol = simplex_solve(build_lp(m));
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    EXPECT_NEAR(sol.objective, closed_form(m), 1e-7) << "m=" << m;
  }
  EXPECT_NEAR(simplex_solve(build_lp(10)).objective, 0.34867844, 1e-7);
}

TEST(PlainLp, StrongDuality) {
  for (int m : {1, 2, 3, 7, 15, 30, 50})
    EXPECT_NEAR(simplex_solve(build_lp(m)).objective, simplex_solve(build_dual(m)).objective, 1e-7) << "m=" << m;
}

// The witnesses are rebuilt here from the formulas and checked exactly.
TEST(PlainLp, AnalyticPointsAreExact) {
  for (int m : {1, 2, 3, 5, 10, 50}) {
    const BigRational q = BigRational(m - 1) / m;
    auto pw = [&](int e) {
      BigRational r = 1;
      for (int k = 0; k < e; ++k) r *= q;
      return r;
    };
    const auto lp = build_lp(m);
    std::vector<BigRational> x(lp.num_variables());
    BigRational used = 0;
    for (int i = 1; i <= m; ++i) {
      x[lp.var("a_" + std::to_string(i))] = BigRational(i) / m * pw(i);
      if (i < m) {
        x[lp.var("o_" + std::to_string(i))] = pw(i - 1) / m;
        used += pw(i - 1) / m;
      }
    }
    x[lp.var("o_" + std::to_string(m))] = 1 - used;
    const auto primal = check_exact(lp, x);
    EXPECT_TRUE(primal.feasible) << "m=" << m;
    EXPECT_EQ(primal.objective, pw(m));
    EXPECT_EQ(x, lp_primal_witness(lp, m));

    const auto dual = build_dual(m);
    std::vector<BigRational> y(dual.num_variables());
    for (int i = 1; i <= m; ++i) {
      y[dual.var("x_" + std::to_string(i))] = pw(m - i);
      y[dual.var("y_" + std::to_string(i))] = i < m ? pw(m - i - 1) / m : BigRational(0);
    }
    const auto dc = check_exact(dual, y);
    EXPECT_TRUE(dc.feasible) << "m=" << m;
    EXPECT_EQ(dc.objective, pw(m));
    EXPECT_EQ(y, dual_witness(dual, m));
  }
}

TEST(UpperBound, FeasibleAndBelowThreshold) {
  for (int m : {10, 50, 100}) {
    const auto rep = verify_upper_bound_construction(m);
    EXPECT_TRUE(rep.feasible) << "m=" << m;
    EXPECT_EQ(rep.exact_value, rep.closed_form_value);
    EXPECT_LT(rep.value, 0.3647);
    EXPECT_LE(rep.value, rep.formula_value);
    EXPECT_LE(simplex_solve(build_lp_f(m)).objective, rep.value + 1e-9);
  }
}

// Keeping o'_i = o_i above the midpoint overshoots the last budget row.
TEST(UpperBound, LiteralPerturbationBreaksTheBudget) {
  const auto rep = verify_upper_bound_construction(10, UpperBoundMode::kLiteral);
  EXPECT_FALSE(rep.feasible);
  ASSERT_FALSE(rep.violated.empty());
  EXPECT_EQ(rep.violated.front(), "budget_10");
}

TEST(UpperBound, RejectsOddM) { EXPECT_THROW(verify_upper_bound_construction(7), InputError); }

TEST(Direction, NoConstraintsTakesEverything) {
  const auto r = linear_max_over_polytope({1, 2, 0.5}, {}, {}, {}, {});
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  for (double v : r.x) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Direction, SinglePackingRow) {
  const auto r = linear_max_over_polytope({2, 1}, {{1, 1}}, {1}, {}, {});
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 0.0, 1e-12);
}

TEST(Direction, MatchesVertexEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int feasible = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int p = static_cast<int>(rng() % 3), c = static_cast<int>(rng() % 3);
    std::vector<double> w(n);
    for (auto& x : w) x = u(rng) * 2 - 0.5;
    std::vector<std::vector<double>> P(p, std::vector<double>(n)), C(c, std::vector<double>(n));
    std::vector<double> r(p), s(c);
    for (auto& row : P)
      for (auto& x : row) x = u(rng) < 0.3 ? 0.0 : u(rng);
    for (auto& row : C)
      for (auto& x : row) x = u(rng) < 0.3 ? 0.0 : u(rng);
    for (auto& x : r) x = u(rng) * 1.5;
    for (auto& x : s) x = u(rng) * 1.2;
    const auto want = oracle::vertex_max(w, P, r, C, s);
    const auto got = linear_max_over_polytope(w, P, r, C, s);
    if (!want) {
      EXPECT_EQ(got.status, LpStatus::kInfeasible) << "trial " << t;
      continue;
    }
    ++feasible;
    ASSERT_EQ(got.status, LpStatus::kOptimal) << "trial " << t;
    EXPECT_NEAR(got.value, *want, 1e-7) << "trial " << t;
  }
  EXPECT_GT(feasible, 100);
}

}  // namespace
