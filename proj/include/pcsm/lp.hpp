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
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pcsm/errors.hpp"
#include "pcsm/rational.hpp"

namespace pcsm {

using BigRational = boost::multiprecision::cpp_rational;

inline BigRational to_big(const Rational& r) { return BigRational(r.num()) / BigRational(r.den()); }

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEq, kGreaterEq, kEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

template <class T>
struct LpConstraint {
  std::vector<std::pair<int, T>> coeffs;
  Relation rel = Relation::kLessEq;
  T rhs{};
  std::string name;
};

// min/max c'x subject to linear rows and x >= 0. The coefficient type is
// Rational for the factor-revealing programs (so witnesses can be checked
// exactly) and double for the direction oracle.
template <class T>
class BasicLinearProgram {
 public:
  explicit BasicLinearProgram(Sense sense = Sense::kMinimize) : sense_(sense) {}

  int add_variable(const std::string& name, T cost = T{}) {
    if (index_.count(name)) throw InputError("lp: duplicate variable " + name);
    index_.emplace(name, static_cast<int>(names_.size()));
    names_.push_back(name);
    objective_.push_back(cost);
    return static_cast<int>(names_.size()) - 1;
  }

  void add_constraint(std::vector<std::pair<int, T>> coeffs, Relation rel, T rhs, std::string name = {}) {
    for (const auto& [v, c] : coeffs)
      if (v < 0 || v >= num_variables()) throw InputError("lp: constraint references undeclared variable");
    if (name.empty()) name = "row" + std::to_string(constraints_.size());
    constraints_.push_back({std::move(coeffs), rel, rhs, std::move(name)});
  }

  void set_cost(int v, T cost) { objective_.at(v) = cost; }

  int var(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw InputError("lp: unknown variable " + name);
    return it->second;
  }

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<T>& objective() const { return objective_; }
  const std::vector<LpConstraint<T>>& constraints() const { return constraints_; }

 private:
  Sense sense_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<T> objective_;
  std::vector<LpConstraint<T>> constraints_;
};

using LinearProgram = BasicLinearProgram<Rational>;

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> residuals;  // lhs - rhs per constraint
  int pivots = 0;
};

enum class PivotRule { kBland, kDantzig };

struct SimplexOptions {
  double tol_feas = 1e-9;
  double tol_opt = 1e-9;
  PivotRule rule = PivotRule::kBland;
  int max_pivots = 1000000;
};

namespace detail {

inline double as_double(double v) { return v; }
inline double as_double(const Rational& v) { return v.to_double(); }

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows + 1) * (cols + 1), 0.0) {}
  double& at(int r, int c) { return a_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  double at(int r, int c) const { return a_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double& cost(int c) { return at(rows_, c); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int r, int c) {
    const int w = cols_ + 1;
    double* pr = &a_[static_cast<std::size_t>(r) * w];
    const double inv = 1.0 / pr[c];
    for (int j = 0; j < w; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* pi = &a_[static_cast<std::size_t>(i) * w];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (int j = 0; j < w; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
  }

 private:
  int rows_, cols_;
  std::vector<double> a_;
};

// Runs primal simplex iterations on the cost row. Columns with allowed[c] ==
// false never enter. Returns false when unbounded.
inline bool run_simplex(Tableau& t, std::vector<int>& basis, const std::vector<char>& allowed,
                        const SimplexOptions& opt, int& pivots) {
  int degenerate_run = 0;
  for (;;) {
    const bool bland = opt.rule == PivotRule::kBland || degenerate_run > 50;
    int enter = -1;
    double best = -opt.tol_opt;
    for (int c = 0; c < t.cols(); ++c) {
      if (!allowed[c]) continue;
      const double d = t.cost(c);
      if (d < best) {
        enter = c;
        if (bland) break;
        best = d;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double ratio = 0;
    for (int r = 0; r < t.rows(); ++r) {
      const double v = t.at(r, enter);
      if (v <= opt.tol_feas) continue;
      const double q = t.rhs(r) / v;
      if (leave < 0 || q < ratio - 1e-12 || (q <= ratio + 1e-12 && basis[r] < basis[leave])) {
        leave = r;
        ratio = q;
      }
    }
    if (leave < 0) return false;
    degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
    t.pivot(leave, enter);
    basis[leave] = enter;
    if (++pivots > opt.max_pivots) throw NumericError("simplex: pivot limit exceeded");
  }
}

}  // namespace detail

// Dense two-phase tableau simplex.
template <class T>
LpSolution simplex_solve(const BasicLinearProgram<T>& lp, const SimplexOptions& opt = {}) {
  const int n = lp.num_variables();
  const auto& cons = lp.constraints();
  const int m = static_cast<int>(cons.size());

  // Normalize rows to a non-negative right-hand side.
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    Relation rel;
    double rhs;
  };
  std::vector<Row> rows;
  int slacks = 0, artificials = 0;
  for (const auto& c : cons) {
    Row r{{}, c.rel, detail::as_double(c.rhs)};
    for (const auto& [v, x] : c.coeffs) r.coeffs.emplace_back(v, detail::as_double(x));
    if (r.rhs < 0 || (r.rhs == 0 && r.rel == Relation::kGreaterEq)) {
      r.rhs = -r.rhs;
      for (auto& [v, x] : r.coeffs) x = -x;
      if (r.rel == Relation::kLessEq) r.rel = Relation::kGreaterEq;
      else if (r.rel == Relation::kGreaterEq) r.rel = Relation::kLessEq;
    }
    if (r.rel != Relation::kEqual) ++slacks;
    if (r.rel != Relation::kLessEq) ++artificials;
    rows.push_back(std::move(r));
  }

  const int cols = n + slacks + artificials;
  detail::Tableau t(m, cols);
  std::vector<int> basis(m, -1);
  std::vector<char> is_art(cols, 0);
  int next_slack = n, next_art = n + slacks;
  for (int i = 0; i < m; ++i) {
    for (const auto& [v, x] : rows[i].coeffs) t.at(i, v) += x;
    t.rhs(i) = rows[i].rhs;
    if (rows[i].rel == Relation::kLessEq) {
      t.at(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else {
      if (rows[i].rel == Relation::kGreaterEq) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      is_art[next_art] = 1;
      basis[i] = next_art++;
    }
  }

  LpSolution sol;
  std::vector<char> allowed(cols, 1);

  // Phase 1: minimize the sum of artificials.
  if (artificials > 0) {
    for (int c = 0; c < cols; ++c)
      if (is_art[c]) t.cost(c) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (!is_art[basis[i]]) continue;
      for (int c = 0; c <= cols; ++c) t.at(m, c) -= t.at(i, c);
    }
    detail::run_simplex(t, basis, allowed, opt, sol.pivots);
    double scale = 1.0;
    for (const auto& r : rows) scale = std::max(scale, std::abs(r.rhs));
    if (-t.rhs(m) > opt.tol_feas * scale * 10) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (!is_art[basis[i]]) continue;
      int best = -1;
      for (int c = 0; c < cols; ++c)
        if (!is_art[c] && std::abs(t.at(i, c)) > 1e-9 && (best < 0 || std::abs(t.at(i, c)) > std::abs(t.at(i, best))))
          best = c;
      if (best >= 0) {
        t.pivot(i, best);
        basis[i] = best;
      }
    }
    for (int c = 0; c < cols; ++c)
      if (is_art[c]) allowed[c] = 0;
  }

  // Phase 2 cost row.
  const double sign = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  for (int c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
  for (int v = 0; v < n; ++v) t.at(m, v) = sign * detail::as_double(lp.objective()[v]);
  for (int i = 0; i < m; ++i) {
    const double cb = basis[i] < n ? t.at(m, basis[i]) : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c <= cols; ++c) t.at(m, c) -= cb * t.at(i, c);
    t.at(m, basis[i]) = 0.0;
  }
  for (int i = 0; i < m; ++i) t.at(m, basis[i]) = 0.0;
  if (!detail::run_simplex(t, basis, allowed, opt, sol.pivots)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, t.rhs(i));
  sol.objective = 0;
  for (int v = 0; v < n; ++v) sol.objective += detail::as_double(lp.objective()[v]) * sol.x[v];
  double worst = 0;
  for (const auto& c : cons) {
    double lhs = 0, mag = 1;
    for (const auto& [v, x] : c.coeffs) {
      lhs += detail::as_double(x) * sol.x[v];
      mag = std::max(mag, std::abs(detail::as_double(x) * sol.x[v]));
    }
    const double res = lhs - detail::as_double(c.rhs);
    sol.residuals.push_back(res);
    double viol = 0;
    if (c.rel != Relation::kGreaterEq) viol = std::max(viol, res);
    if (c.rel != Relation::kLessEq) viol = std::max(viol, -res);
    worst = std::max(worst, viol / mag);
  }
  if (worst > std::max(opt.tol_feas, 1e-7)) throw NumericError("simplex: solution violates constraints by " + std::to_string(worst));
  return sol;
}

// Exact evaluation of a candidate point on a rational LP.
struct ExactCheck {
  bool feasible = true;
  BigRational objective;
  std::vector<BigRational> residuals;  // lhs - rhs
  std::vector<std::string> violated;
};

inline ExactCheck check_exact(const LinearProgram& lp, const std::vector<BigRational>& x) {
  if (static_cast<int>(x.size()) != lp.num_variables()) throw InputError("check_exact: point has wrong dimension");
  ExactCheck out;
  for (int v = 0; v < lp.num_variables(); ++v) {
    out.objective += to_big(lp.objective()[v]) * x[v];
    if (x[v] < 0) {
      out.feasible = false;
      out.violated.push_back(lp.names()[v] + ">=0");
    }
  }
  for (const auto& c : lp.constraints()) {
    BigRational lhs = 0;
    for (const auto& [v, coef] : c.coeffs) lhs += to_big(coef) * x[v];
    const BigRational res = lhs - to_big(c.rhs);
    const bool ok = c.rel == Relation::kLessEq ? res <= 0 : c.rel == Relation::kGreaterEq ? res >= 0 : res == 0;
    if (!ok) {
      out.feasible = false;
      out.violated.push_back(c.name);
    }
    out.residuals.push_back(res);
  }
  return out;
}

inline std::string idx_name(const char* base, int i) { return std::string(base) + "_" + std::to_string(i); }

// min a_m over a_i, o_i >= 0 (i = 1..m).
inline LinearProgram build_lp(int m) {
  if (m < 1) throw InputError("build_lp: m must be at least 1");
  LinearProgram lp(Sense::kMinimize);
  for (int i = 1; i <= m; ++i) lp.add_variable(idx_name("a", i), i == m ? Rational(1) : Rational(0));
  for (int i = 1; i <= m; ++i) lp.add_variable(idx_name("o", i));
  auto a = [&](int i) { return lp.var(idx_name("a", i)); };
  auto o = [&](int i) { return lp.var(idx_name("o", i)); };
  const Rational M(m);
  for (int i = 1; i <= m; ++i) {
    std::vector<std::pair<int, Rational>> row{{a(i), Rational(1)}, {o(i), -(Rational(1) - Rational(i) / M)}};
    if (i > 1) row.emplace_back(a(i - 1), Rational(-1));
    lp.add_constraint(std::move(row), Relation::kGreaterEq, Rational(0), idx_name("greedy", i));
  }
  for (int i = 1; i <= m; ++i) {
    std::vector<std::pair<int, Rational>> row{{a(i), Rational(1)}};
    for (int j = 1; j <= i; ++j) row.emplace_back(o(j), Rational(i) / M);
    lp.add_constraint(std::move(row), Relation::kGreaterEq, Rational(i) / M, idx_name("cover", i));
  }
  return lp;
}

// max sum (i/m) y_i over x_i, y_i >= 0.
inline LinearProgram build_dual(int m) {
  if (m < 1) throw InputError("build_dual: m must be at least 1");
  LinearProgram lp(Sense::kMaximize);
  const Rational M(m);
  for (int i = 1; i <= m; ++i) lp.add_variable(idx_name("x", i));
  for (int i = 1; i <= m; ++i) lp.add_variable(idx_name("y", i), Rational(i) / M);
  auto x = [&](int i) { return lp.var(idx_name("x", i)); };
  auto y = [&](int i) { return lp.var(idx_name("y", i)); };
  for (int i = 1; i < m; ++i)
    lp.add_constraint({{x(i), Rational(1)}, {y(i), Rational(1)}, {x(i + 1), Rational(-1)}}, Relation::kLessEq,
                      Rational(0), idx_name("a", i));
  lp.add_constraint({{x(m), Rational(1)}, {y(m), Rational(1)}}, Relation::kLessEq, Rational(1), idx_name("a", m));
  for (int i = 1; i <= m; ++i) {
    std::vector<std::pair<int, Rational>> row;
    for (int j = i; j <= m; ++j) row.emplace_back(y(j), Rational(j) / M);
    row.emplace_back(x(i), -(Rational(1) - Rational(i) / M));
    lp.add_constraint(std::move(row), Relation::kLessEq, Rational(0), idx_name("o", i));
  }
  return lp;
}

// min c over c, a_i, b_i, o_i, f_i, g_i >= 0 for i = 0..m.
inline LinearProgram build_lp_f(int m) {
  if (m < 1) throw InputError("build_lp_f: m must be at least 1");
  LinearProgram lp(Sense::kMinimize);
  const int c = lp.add_variable("c", Rational(1));
  for (const char* base : {"a", "b", "o", "f", "g"})
    for (int i = 0; i <= m; ++i) lp.add_variable(idx_name(base, i));
  auto v = [&](const char* base, int i) { return lp.var(idx_name(base, i)); };
  const Rational M(m), one(1);
  lp.add_constraint({{v("a", 0), one}, {v("o", 0), -one}}, Relation::kLessEq, Rational(0), "a0=o0:le");
  lp.add_constraint({{v("a", 0), one}, {v("o", 0), -one}}, Relation::kGreaterEq, Rational(0), "a0=o0:ge");
  for (int i = 1; i <= m; ++i)
    lp.add_constraint({{v("a", i), one}, {v("a", i - 1), -one}, {v("o", i), -(one - Rational(i) / M)}},
                      Relation::kGreaterEq, Rational(0), idx_name("greedy", i));
  for (int i = 0; i <= m; ++i)
    lp.add_constraint({{v("b", i), one}, {v("a", i), -one}, {v("g", i), -one}}, Relation::kGreaterEq, Rational(0),
                      idx_name("b>=a+g", i));
  for (int i = 0; i <= m; ++i) {
    // a_i >= (i/m)(1 - f_i - sum_{j<=i} o_j) + f_i - g_i
    const Rational t = Rational(i) / M;
    std::vector<std::pair<int, Rational>> row{{v("a", i), one}, {v("f", i), t - one}, {v("g", i), one}};
    for (int j = 0; j <= i; ++j) row.emplace_back(v("o", j), t);
    lp.add_constraint(std::move(row), Relation::kGreaterEq, t, idx_name("cover", i));
  }
  for (int i = 0; i <= m; ++i)
    lp.add_constraint({{v("b", i), one}, {v("f", i), -one}}, Relation::kGreaterEq, Rational(0), idx_name("b>=f", i));
  for (int i = 1; i <= m; ++i)
    lp.add_constraint({{v("f", i), one}, {v("f", i - 1), -one}}, Relation::kLessEq, Rational(0),
                      idx_name("f<=f_prev", i));
  for (int i = 0; i <= m; ++i)
    lp.add_constraint({{v("g", i), one}, {v("f", i), -one}}, Relation::kLessEq, Rational(0), idx_name("g<=f", i));
  for (int j = 0; j <= m; ++j) {
    std::vector<std::pair<int, Rational>> row{{v("f", j), one}};
    for (int i = 0; i <= j; ++i) row.emplace_back(v("o", i), one);
    lp.add_constraint(std::move(row), Relation::kLessEq, one, idx_name("budget", j));
  }
  for (int i = 0; i <= m; ++i)
    lp.add_constraint({{c, one}, {v("b", i), -one}}, Relation::kGreaterEq, Rational(0), idx_name("c>=b", i));
  return lp;
}

inline BigRational big_pow(const BigRational& base, int e) {
  BigRational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// (1 - 1/m)^m as an exact rational.
inline BigRational lp_closed_form(int m) { return big_pow(BigRational(m - 1) / m, m); }

// a_i = (i/m)(1-1/m)^i, o_i = (1/m)(1-1/m)^{i-1} for i < m, o_m = 1 - sum.
inline std::vector<BigRational> lp_primal_witness(const LinearProgram& lp, int m) {
  std::vector<BigRational> x(lp.num_variables());
  const BigRational q = BigRational(m - 1) / m;
  BigRational sum = 0;
  for (int i = 1; i <= m; ++i) {
    x[lp.var(idx_name("a", i))] = BigRational(i) / m * big_pow(q, i);
    if (i < m) {
      const BigRational oi = big_pow(q, i - 1) / m;
      x[lp.var(idx_name("o", i))] = oi;
      sum += oi;
    }
  }
  x[lp.var(idx_name("o", m))] = 1 - sum;
  return x;
}

// x_i = (1-1/m)^{m-i}, y_i = (1/m)(1-1/m)^{m-i-1} for i < m, y_m = 0.
inline std::vector<BigRational> dual_witness(const LinearProgram& lp, int m) {
  std::vector<BigRational> x(lp.num_variables());
  const BigRational q = BigRational(m - 1) / m;
  for (int i = 1; i <= m; ++i) {
    x[lp.var(idx_name("x", i))] = big_pow(q, m - i);
    x[lp.var(idx_name("y", i))] = i < m ? big_pow(q, m - i - 1) / m : BigRational(0);
  }
  return x;
}

enum class UpperBoundMode {
  // o'_m absorbs the slack so that f_m + sum o' <= 1 holds.
  kResidual,
  // o'_i = o_i for every i > m/2, exactly as listed.
  kLiteral,
};

struct UpperBoundReport {
  bool feasible = false;
  double value = 0.0;
  BigRational exact_value;
  // 1/e - beta(alpha - 1/2)/2 + 3 beta/(4m)
  double formula_value = 0.0;
  // The same expression with (1 - 1/m)^m in place of 1/e.
  BigRational closed_form_value;
  std::vector<std::string> violated;
  std::vector<BigRational> point;
};

// Perturbs the optimal (LP) point with alpha = 0.625, beta = 0.0517,
// gamma = 0.0647 and checks the result exactly against build_lp_f(m).
inline UpperBoundReport verify_upper_bound_construction(int m, UpperBoundMode mode = UpperBoundMode::kResidual) {
  if (m <= 2 || m % 2 != 0) throw InputError("upper bound construction needs an even m > 2");
  const LinearProgram lp = build_lp_f(m);
  const BigRational alpha(BigRational(5) / 8), beta(BigRational(517) / 10000), gamma(BigRational(647) / 10000);
  const BigRational q = BigRational(m - 1) / m;
  const int h = m / 2;

  std::vector<BigRational> a(m + 1), o(m + 1);
  BigRational sum = 0;
  for (int i = 1; i <= m; ++i) {
    a[i] = BigRational(i) / m * big_pow(q, i);
    if (i < m) {
      o[i] = big_pow(q, i - 1) / m;
      sum += o[i];
    }
  }
  o[m] = 1 - sum;

  std::vector<BigRational> a2(m + 1), b2(m + 1), o2(m + 1), f2(m + 1), g2(m + 1);
  f2[0] = g2[0] = gamma;
  b2[0] = gamma;
  const BigRational shift = -beta * (alpha - BigRational(1, 2)) / 2 + 3 * beta / (4 * m);
  BigRational drop = 0;
  for (int i = 1; i <= m; ++i) {
    if (i < h) {
      f2[i] = g2[i] = gamma;
      o2[i] = o[i] - beta / m;
      drop += 1 - BigRational(i) / m;
      a2[i] = a[i] - beta / m * drop;
      b2[i] = a2[i] + gamma;
    } else {
      o2[i] = i == h ? o[i] + alpha * beta : o[i];
      a2[i] = a[i] + shift;
      b2[i] = a2[i];
    }
  }
  if (mode == UpperBoundMode::kResidual) {
    BigRational rest = 0;
    for (int i = 1; i < m; ++i) rest += o2[i];
    o2[m] = 1 - rest;
  }

  UpperBoundReport rep;
  rep.point.assign(lp.num_variables(), 0);
  BigRational cval = b2[0];
  for (int i = 0; i <= m; ++i) cval = std::max(cval, b2[i]);
  rep.point[lp.var("c")] = cval;
  for (int i = 0; i <= m; ++i) {
    rep.point[lp.var(idx_name("a", i))] = a2[i];
    rep.point[lp.var(idx_name("b", i))] = b2[i];
    rep.point[lp.var(idx_name("o", i))] = o2[i];
    rep.point[lp.var(idx_name("f", i))] = f2[i];
    rep.point[lp.var(idx_name("g", i))] = g2[i];
  }
  const ExactCheck chk = check_exact(lp, rep.point);
  rep.feasible = chk.feasible;
  rep.violated = chk.violated;
  rep.exact_value = cval;
  rep.value = static_cast<double>(cval);
  rep.closed_form_value = lp_closed_form(m) + shift;
  rep.formula_value = std::exp(-1.0) + static_cast<double>(shift);
  return rep;
}

struct DirectionResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double value = 0.0;
};

// argmax w.x over x in [0,1]^n with pack x <= r and cover x >= s.
inline DirectionResult linear_max_over_polytope(const std::vector<double>& w,
                                                const std::vector<std::vector<double>>& pack,
                                                const std::vector<double>& r,
                                                const std::vector<std::vector<double>>& cover,
                                                const std::vector<double>& s, const SimplexOptions& opt = {}) {
  const int n = static_cast<int>(w.size());
  if (pack.size() != r.size() || cover.size() != s.size()) throw InputError("polytope: bound length mismatch");
  BasicLinearProgram<double> lp(Sense::kMaximize);
  for (int v = 0; v < n; ++v) lp.add_variable("x" + std::to_string(v), w[v]);
  for (int v = 0; v < n; ++v) lp.add_constraint({{v, 1.0}}, Relation::kLessEq, 1.0);
  auto add_rows = [&](const std::vector<std::vector<double>>& m, const std::vector<double>& b, Relation rel) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(m[i].size()) != n) throw InputError("polytope: row length mismatch");
      std::vector<std::pair<int, double>> row;
      for (int v = 0; v < n; ++v)
        if (m[i][v] != 0.0) row.emplace_back(v, m[i][v]);
      lp.add_constraint(std::move(row), rel, b[i]);
    }
  };
  add_rows(pack, r, Relation::kLessEq);
  add_rows(cover, s, Relation::kGreaterEq);
  SimplexOptions o = opt;
  o.rule = PivotRule::kBland;
  const LpSolution sol = simplex_solve(lp, o);
  DirectionResult out;
  out.status = sol.status;
  if (sol.status != LpStatus::kOptimal) return out;
  out.x = sol.x;
  for (auto& v : out.x) v = std::clamp(v, 0.0, 1.0);
  out.value = sol.objective;
  return out;
}

}  // namespace pcsm
