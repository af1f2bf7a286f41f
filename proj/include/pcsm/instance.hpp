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
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/oracle.hpp"
#include "pcsm/rational.hpp"
#include "pcsm/subset.hpp"

namespace pcsm {

using Matrix = std::vector<std::vector<Rational>>;

// A PCSM instance: maximize objective(S) subject to packing * 1_S <= pack_bound
// and covering * 1_S >= cover_bound. Rows of `packing` / `covering` have
// length n.
template <SetFunction Objective>
struct BasicInstance {
  int n = 0;
  Matrix packing;
  Matrix covering;
  std::vector<Rational> pack_bound;
  std::vector<Rational> cover_bound;
  Objective objective;

  int num_packing() const { return static_cast<int>(packing.size()); }
  int num_covering() const { return static_cast<int>(covering.size()); }

  void validate() const {
    if (n < 0) throw InputError("instance: n must be non-negative");
    auto check_rows = [&](const Matrix& m, const std::vector<Rational>& bound, const char* what) {
      if (m.size() != bound.size())
        throw InputError(std::string(what) + ": row count does not match bound length");
      for (const auto& row : m) {
        if (static_cast<int>(row.size()) != n)
          throw InputError(std::string(what) + ": row length does not match n");
        for (const auto& x : row)
          if (x < Rational(0)) throw InputError(std::string(what) + ": negative entry");
      }
      for (const auto& b : bound)
        if (b < Rational(0)) throw InputError(std::string(what) + ": negative bound");
    };
    check_rows(packing, pack_bound, "packing");
    check_rows(covering, cover_bound, "covering");
    if (objective.ground_size() != n) throw InputError("instance: objective ground set size differs from n");
  }

  bool is_integral() const {
    auto integral = [](const auto& v) {
      return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_integer(); });
    };
    return std::all_of(packing.begin(), packing.end(), integral) &&
           std::all_of(covering.begin(), covering.end(), integral) && integral(pack_bound) &&
           integral(cover_bound);
  }

  Rational value(const Subset& s) const { return objective.eval(s); }
};

using Instance = BasicInstance<SubmodularOracle>;

inline std::vector<Rational> row_sums(const Matrix& m, const Subset& s) {
  std::vector<Rational> out(m.size());
  const auto elems = s.elements();
  for (std::size_t r = 0; r < m.size(); ++r)
    for (int e : elems) out[r] += m[r][e];
  return out;
}

template <SetFunction F>
std::vector<Rational> pack_vector(const BasicInstance<F>& inst, const Subset& s) {
  return row_sums(inst.packing, s);
}
template <SetFunction F>
std::vector<Rational> cover_vector(const BasicInstance<F>& inst, const Subset& s) {
  return row_sums(inst.covering, s);
}

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Rational> pack_violations;  // max(0, P1_S - bound) per row
  std::vector<Rational> cover_deficits;   // max(0, bound - C1_S) per row
};

template <SetFunction F>
FeasibilityReport is_feasible(const BasicInstance<F>& inst, const Subset& s) {
  FeasibilityReport rep;
  const auto pv = pack_vector(inst, s);
  const auto cv = cover_vector(inst, s);
  for (std::size_t i = 0; i < pv.size(); ++i) {
    rep.pack_violations.push_back(std::max(Rational(0), pv[i] - inst.pack_bound[i]));
    if (rep.pack_violations.back() > Rational(0)) rep.feasible = false;
  }
  for (std::size_t j = 0; j < cv.size(); ++j) {
    rep.cover_deficits.push_back(std::max(Rational(0), inst.cover_bound[j] - cv[j]));
    if (rep.cover_deficits.back() > Rational(0)) rep.feasible = false;
  }
  return rep;
}

// pack_ratio = max_i (P1_S)_i / p_i (0 without packing rows);
// cover_ratio = min_j (C1_S)_j / c_j (1 without covering rows).
struct ViolationProfile {
  Rational pack_ratio;
  Rational cover_ratio{1};
};

template <SetFunction F>
ViolationProfile violation_profile(const BasicInstance<F>& inst, const Subset& s) {
  ViolationProfile vp;
  const auto pv = pack_vector(inst, s);
  const auto cv = cover_vector(inst, s);
  for (std::size_t i = 0; i < pv.size(); ++i) {
    if (inst.pack_bound[i] == Rational(0)) throw InputError("violation_profile: zero packing bound");
    vp.pack_ratio = std::max(vp.pack_ratio, pv[i] / inst.pack_bound[i]);
  }
  for (std::size_t j = 0; j < cv.size(); ++j) {
    if (inst.cover_bound[j] == Rational(0)) throw InputError("violation_profile: zero covering bound");
    const Rational r = cv[j] / inst.cover_bound[j];
    vp.cover_ratio = j == 0 ? r : std::min(vp.cover_ratio, r);
  }
  return vp;
}

// Floating-point ratios for reporting. Rows with a zero bound are skipped
// unless a zero packing bound is exceeded, which reports +inf.
struct RatioReport {
  double pack_ratio = 0.0;
  double cover_ratio = 1.0;
};

template <SetFunction F>
RatioReport ratio_report(const BasicInstance<F>& inst, const Subset& s) {
  RatioReport rr;
  const auto pv = pack_vector(inst, s);
  const auto cv = cover_vector(inst, s);
  for (std::size_t i = 0; i < pv.size(); ++i) {
    if (inst.pack_bound[i] == Rational(0)) {
      if (pv[i] > Rational(0)) rr.pack_ratio = std::numeric_limits<double>::infinity();
      continue;
    }
    rr.pack_ratio = std::max(rr.pack_ratio, (pv[i] / inst.pack_bound[i]).to_double());
  }
  double cover = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cv.size(); ++j) {
    if (inst.cover_bound[j] == Rational(0)) continue;
    cover = std::min(cover, (cv[j] / inst.cover_bound[j]).to_double());
  }
  if (cover != std::numeric_limits<double>::infinity()) rr.cover_ratio = cover;
  return rr;
}

namespace detail {
inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("row scaling overflow");
  return static_cast<std::int64_t>(l);
}
inline void scale_row(std::vector<Rational>& row, Rational& bound) {
  std::int64_t l = bound.den();
  for (const auto& x : row) l = lcm_checked(l, x.den());
  for (auto& x : row) x *= Rational(l);
  bound *= Rational(l);
}
}  // namespace detail

// Multiplies every row (and its bound) by the lcm of its denominators. The
// feasible family is unchanged and all data becomes integral.
template <SetFunction F>
BasicInstance<F> to_integer(BasicInstance<F> inst) {
  for (std::size_t i = 0; i < inst.packing.size(); ++i) detail::scale_row(inst.packing[i], inst.pack_bound[i]);
  for (std::size_t j = 0; j < inst.covering.size(); ++j) detail::scale_row(inst.covering[j], inst.cover_bound[j]);
  return inst;
}

// Divides every row by its bound so that all bounds become 1. Covering rows
// with bound 0 are trivially satisfied and are dropped; a packing row with
// bound 0 cannot be normalized.
template <SetFunction F>
BasicInstance<F> normalized(BasicInstance<F> inst) {
  for (std::size_t i = 0; i < inst.packing.size(); ++i) {
    if (inst.pack_bound[i] == Rational(0)) throw InputError("normalized: zero packing bound");
    for (auto& x : inst.packing[i]) x /= inst.pack_bound[i];
    inst.pack_bound[i] = Rational(1);
  }
  Matrix cov;
  for (std::size_t j = 0; j < inst.covering.size(); ++j) {
    if (inst.cover_bound[j] == Rational(0)) continue;
    auto row = inst.covering[j];
    for (auto& x : row) x /= inst.cover_bound[j];
    cov.push_back(std::move(row));
  }
  inst.cover_bound.assign(cov.size(), Rational(1));
  inst.covering = std::move(cov);
  return inst;
}

inline std::vector<std::vector<std::int64_t>> integer_rows(const Matrix& m) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : m) {
    std::vector<std::int64_t> r;
    for (const auto& x : row) {
      if (!x.is_integer()) throw InputError("expected integral matrix entries");
      r.push_back(x.num());
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<std::int64_t> integer_vector(const std::vector<Rational>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) {
    if (!x.is_integer()) throw InputError("expected integral bounds");
    out.push_back(x.num());
  }
  return out;
}

}  // namespace pcsm
