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
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcsm {

// Subset of the ground set {0, ..., n-1}, stored as a bitset. Comparison with
// lex_less orders subsets by their sorted element sequences, which is the
// tie-break used by every solver.
class Subset {
 public:
  Subset() = default;
  explicit Subset(int universe) : n_(universe), words_((universe + 63) / 64, 0) {
    if (universe < 0) throw std::invalid_argument("Subset: negative universe");
  }
  Subset(int universe, std::initializer_list<int> elements) : Subset(universe) {
    for (int e : elements) insert(e);
  }
  template <class Range>
  static Subset of(int universe, const Range& elements) {
    Subset s(universe);
    for (int e : elements) s.insert(e);
    return s;
  }
  static Subset from_mask(int universe, std::uint64_t mask) {
    Subset s(universe);
    if (universe > 0) s.words_[0] = universe >= 64 ? mask : mask & ((std::uint64_t{1} << universe) - 1);
    return s;
  }
  static Subset full(int universe) {
    Subset s(universe);
    for (int e = 0; e < universe; ++e) s.insert(e);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int e) const {
    check(e);
    return (words_[e >> 6] >> (e & 63)) & 1U;
  }
  void insert(int e) {
    check(e);
    words_[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  void erase(int e) {
    check(e);
    words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
  }
  Subset with(int e) const {
    Subset s = *this;
    s.insert(e);
    return s;
  }

  int size() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1)
        out.push_back(static_cast<int>(w * 64 + std::countr_zero(bits)));
    }
    return out;
  }

  Subset operator|(const Subset& o) const { return combine(o, [](auto a, auto b) { return a | b; }); }
  Subset operator&(const Subset& o) const { return combine(o, [](auto a, auto b) { return a & b; }); }
  Subset operator-(const Subset& o) const { return combine(o, [](auto a, auto b) { return a & ~b; }); }
  Subset& operator|=(const Subset& o) { return *this = *this | o; }

  bool is_subset_of(const Subset& o) const { return (*this - o).empty(); }
  bool disjoint(const Subset& o) const { return (*this & o).empty(); }

  friend bool operator==(const Subset&, const Subset&) = default;

  // Lexicographic order on sorted element lists; a proper prefix sorts first.
  friend bool lex_less(const Subset& a, const Subset& b) {
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
    return out + "}";
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : words_) h = (h ^ w) * 1099511628211ULL;
    return h;
  }

 private:
  void check(int e) const {
    if (e < 0 || e >= n_) throw std::out_of_range("Subset: element " + std::to_string(e) + " out of range");
  }
  template <class Op>
  Subset combine(const Subset& o, Op op) const {
    if (o.n_ != n_) throw std::invalid_argument("Subset: universe mismatch");
    Subset s(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] = op(words_[w], o.words_[w]);
    return s;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace pcsm
