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
#include <concepts>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "pcsm/errors.hpp"
#include "pcsm/rational.hpp"
#include "pcsm/subset.hpp"

namespace pcsm {

// Anything with exact value queries over subsets of a fixed ground set.
template <class F>
concept SetFunction = requires(const F& f, const Subset& s) {
  { f.eval(s) } -> std::convertible_to<Rational>;
  { f.ground_size() } -> std::convertible_to<int>;
};

// f(S) = sum of w_i over S.
struct LinearOracle {
  std::vector<Rational> weights;

  int ground_size() const { return static_cast<int>(weights.size()); }
  Rational eval(const Subset& s) const {
    Rational total;
    for (int e : s.elements()) total += weights[e];
    return total;
  }
};

// f(S) = total weight of universe items covered by the union of the sets of S.
struct CoverageOracle {
  int universe = 0;
  std::vector<std::vector<int>> element_sets;
  std::vector<Rational> universe_weights;

  int ground_size() const { return static_cast<int>(element_sets.size()); }
  Rational eval(const Subset& s) const {
    Subset covered(universe);
    for (int e : s.elements())
      for (int item : element_sets[e]) covered.insert(item);
    Rational total;
    for (int item : covered.elements()) total += universe_weights[item];
    return total;
  }
};

// f(S) = min(sum of w_i over S, cap).
struct ConcaveOfModularOracle {
  std::vector<Rational> weights;
  Rational cap;

  int ground_size() const { return static_cast<int>(weights.size()); }
  Rational eval(const Subset& s) const {
    Rational total;
    for (int e : s.elements()) total += weights[e];
    return std::min(total, cap);
  }
};

// Tagged family of monotone submodular objectives with closed forms.
class SubmodularOracle {
 public:
  using Variant = std::variant<LinearOracle, CoverageOracle, ConcaveOfModularOracle>;

  SubmodularOracle() : impl_(LinearOracle{}) {}
  SubmodularOracle(LinearOracle o) : impl_(std::move(o)) { validate(); }              // NOLINT
  SubmodularOracle(CoverageOracle o) : impl_(std::move(o)) { validate(); }            // NOLINT
  SubmodularOracle(ConcaveOfModularOracle o) : impl_(std::move(o)) { validate(); }    // NOLINT

  const Variant& variant() const { return impl_; }

  std::string kind() const {
    return std::visit(
        [](const auto& o) -> std::string {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, LinearOracle>) return "linear";
          else if constexpr (std::is_same_v<T, CoverageOracle>) return "coverage";
          else return "concave_of_modular";
        },
        impl_);
  }

  int ground_size() const {
    return std::visit([](const auto& o) { return o.ground_size(); }, impl_);
  }
  Rational eval(const Subset& s) const {
    if (s.universe() != ground_size()) throw std::invalid_argument("oracle: subset universe mismatch");
    return std::visit([&](const auto& o) { return o.eval(s); }, impl_);
  }

 private:
  void validate() const {
    auto nonneg = [](const std::vector<Rational>& v, const char* what) {
      for (const auto& x : v)
        if (x < Rational(0)) throw InputError(std::string(what) + " must be non-negative");
    };
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, LinearOracle>) {
            nonneg(o.weights, "linear weights");
          } else if constexpr (std::is_same_v<T, CoverageOracle>) {
            if (o.universe < 0 || static_cast<int>(o.universe_weights.size()) != o.universe)
              throw InputError("coverage: universe_weights length must equal universe");
            nonneg(o.universe_weights, "universe weights");
            for (const auto& set : o.element_sets)
              for (int item : set)
                if (item < 0 || item >= o.universe) throw InputError("coverage: item out of range");
          } else {
            nonneg(o.weights, "concave_of_modular weights");
            if (o.cap < Rational(0)) throw InputError("concave_of_modular: cap must be non-negative");
          }
        },
        impl_);
  }

  Variant impl_;
};

// f_A(x) = f(A + x) - f(A).
template <SetFunction F>
Rational marginal(const F& f, const Subset& base, int element) {
  if (element < 0 || element >= f.ground_size())
    throw std::out_of_range("marginal: element " + std::to_string(element) + " out of range");
  if (base.contains(element)) throw std::invalid_argument("marginal: element already in base set");
  return f.eval(base.with(element)) - f.eval(base);
}

// Maintains f(S) under single-element insertions and removals. Used by the
// exhaustive enumerators, where recomputing from scratch would dominate.
class IncrementalEvaluator {
 public:
  explicit IncrementalEvaluator(const SubmodularOracle& oracle) : oracle_(&oracle) {
    if (const auto* cov = std::get_if<CoverageOracle>(&oracle.variant()))
      counts_.assign(static_cast<std::size_t>(cov->universe), 0);
  }

  void add(int e) { step(e, +1); }
  void remove(int e) { step(e, -1); }

  Rational value() const {
    if (const auto* c = std::get_if<ConcaveOfModularOracle>(&oracle_->variant()))
      return std::min(sum_, c->cap);
    return sum_;
  }

 private:
  void step(int e, int sign) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, CoverageOracle>) {
            for (int item : o.element_sets[e]) {
              if (sign > 0 && counts_[item]++ == 0) sum_ += o.universe_weights[item];
              if (sign < 0 && --counts_[item] == 0) sum_ -= o.universe_weights[item];
            }
          } else {
            if (sign > 0) sum_ += o.weights[e];
            else sum_ -= o.weights[e];
          }
        },
        oracle_->variant());
  }

  const SubmodularOracle* oracle_;
  Rational sum_;
  std::vector<int> counts_;
};

}  // namespace pcsm
