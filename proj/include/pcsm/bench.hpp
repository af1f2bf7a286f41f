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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pcsm/brute.hpp"
#include "pcsm/continuous.hpp"
#include "pcsm/errors.hpp"
#include "pcsm/forbidden_dp.hpp"
#include "pcsm/generate.hpp"
#include "pcsm/greedy_dp.hpp"
#include "pcsm/json_io.hpp"
#include "pcsm/lp.hpp"

namespace pcsm {

struct RunReport {
  std::string solver;
  std::string instance_digest;
  std::string status = "ok";  // ok | infeasible | refused | error
  std::string message;
  std::optional<double> value;
  std::optional<double> brute;
  std::optional<double> ratio;
  std::optional<double> cover_ratio;
  std::optional<double> pack_ratio;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

struct BenchOptions {
  Rational epsilon = Rational(1, 4);
  ContinuousParams continuous = relaxed_params(BigRational(1, 10));
  std::vector<int> lp_m = {2, 5, 10, 50};
  int brute_max_n = 12;
};

inline const std::vector<std::string>& known_solvers() {
  static const std::vector<std::string> names = {"brute",      "dp",  "dp_completion", "forbidden", "poly",
                                                 "continuous", "lp",  "lpf",           "lp_plain"};
  return names;
}

namespace detail {

inline void fill_set(RunReport& rep, const Instance& inst, const Subset& s, const Rational& value) {
  rep.value = value.to_double();
  const auto rr = ratio_report(inst, s);
  rep.cover_ratio = rr.cover_ratio;
  rep.pack_ratio = rr.pack_ratio;
}

inline RunReport run_one(const std::string& solver, const Instance& inst, const std::optional<double>& brute,
                         std::uint64_t seed, const BenchOptions& opt) {
  RunReport rep;
  rep.solver = solver;
  rep.instance_digest = instance_digest(inst);
  rep.seed = seed;
  rep.brute = brute;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (solver == "brute") {
      const auto r = brute_optimum(inst, opt.brute_max_n);
      if (r.feasible_count == 0) rep.status = "infeasible";
      else fill_set(rep, inst, r.best_set, r.best_value);
    } else if (solver == "dp") {
      const auto r = vanilla_dp(to_integer(inst));
      if (!r.found) rep.status = "infeasible";
      else fill_set(rep, inst, r.best, r.value);
    } else if (solver == "dp_completion") {
      const auto r = dp_with_completion(to_integer(inst));
      if (!r.found) rep.status = "infeasible";
      else fill_set(rep, inst, r.support, r.value);
    } else if (solver == "forbidden") {
      rep.params["epsilon"] = opt.epsilon.to_string();
      const auto r = forbidden_dp_solve(to_integer(inst), opt.epsilon);
      if (!r.found) rep.status = "infeasible";
      else fill_set(rep, inst, r.best, r.value);
    } else if (solver == "poly") {
      rep.params["epsilon"] = opt.epsilon.to_string();
      const auto r = solve_polynomial(inst, opt.epsilon);
      if (!r.found) rep.status = "infeasible";
      else fill_set(rep, inst, r.best, r.value);
    } else if (solver == "continuous") {
      ContinuousParams prm = opt.continuous;
      prm.seed = seed;
      rep.params["epsilon"] = prm.epsilon.str();
      rep.params["delta"] = prm.delta.str();
      const auto r = solve_main(inst, prm);
      if (!r.found) rep.status = "infeasible";
      else fill_set(rep, inst, r.S_alg, r.value);
    } else {
      throw InputError("bench: unknown solver '" + solver + "'");
    }
  } catch (const BudgetError& e) {
    rep.status = "refused";
    rep.message = e.what();
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.message = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rep.value && rep.brute && *rep.brute > 0) rep.ratio = *rep.value / *rep.brute;
  return rep;
}

inline bool is_lp(const std::string& s) { return s == "lp" || s == "lpf" || s == "lp_plain"; }

inline RunReport run_lp(const std::string& solver, int m) {
  RunReport rep;
  rep.solver = solver;
  rep.instance_digest = (solver == "lp_plain" ? "lp_m" : "lpf_m") + std::to_string(m);
  rep.params["m"] = m;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto lp = solver == "lp_plain" ? build_lp(m) : build_lp_f(m);
    const auto sol = simplex_solve(lp);
    if (sol.status != LpStatus::kOptimal) rep.status = to_string(sol.status);
    else rep.value = sol.objective;
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.message = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace detail

// Every solver on every instance, in input order. The LP solvers ignore the
// suite and contribute one row per entry of opt.lp_m: "lp" (alias "lpf") is
// the factor-revealing program with f-terms, "lp_plain" the simpler one.
inline std::vector<RunReport> bench(const std::vector<GenSpec>& suite, const std::vector<std::string>& solvers,
                                    const BenchOptions& opt = {}) {
  for (const auto& s : solvers)
    if (std::find(known_solvers().begin(), known_solvers().end(), s) == known_solvers().end())
      throw InputError("bench: unknown solver '" + s + "'");
  std::vector<RunReport> out;
  for (const auto& s : solvers)
    if (detail::is_lp(s))
      for (int m : opt.lp_m) out.push_back(detail::run_lp(s, m));
  for (const auto& spec : suite) {
    const Instance inst = generate_instance(spec);
    std::optional<double> brute;
    if (inst.n <= opt.brute_max_n) {
      const auto b = brute_optimum(inst, opt.brute_max_n);
      if (b.feasible_count > 0) brute = b.best_value.to_double();
    }
    for (const auto& s : solvers)
      if (!detail::is_lp(s)) out.push_back(detail::run_one(s, inst, brute, spec.seed, opt));
  }
  return out;
}

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline const char* kCsvHeader = "instance_digest,solver,value,brute,ratio,cover_ratio,pack_ratio,seconds,seed";

inline void write_csv(std::ostream& os, const std::vector<RunReport>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  os << kCsvHeader << '\n';
  for (const auto& r : rows)
    os << r.instance_digest << ',' << r.solver << ',' << opt(r.value) << ',' << opt(r.brute) << ','
       << opt(r.ratio) << ',' << opt(r.cover_ratio) << ',' << opt(r.pack_ratio) << ','
       << format_number(r.seconds) << ',' << r.seed << '\n';
}

inline nlohmann::json to_json(const RunReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  return {{"solver", r.solver},          {"instance_digest", r.instance_digest},
          {"status", r.status},          {"message", r.message},
          {"value", opt(r.value)},       {"brute", opt(r.brute)},
          {"ratio", opt(r.ratio)},       {"cover_ratio", opt(r.cover_ratio)},
          {"pack_ratio", opt(r.pack_ratio)}, {"seconds", r.seconds},
          {"seed", r.seed},              {"params", r.params}};
}

inline GenSpec gen_spec_from_json(const nlohmann::json& j) {
  GenSpec s;
  try {
    s.n = j.value("n", s.n);
    s.p = j.value("p", s.p);
    s.c = j.value("c", s.c);
    s.family = j.value("family", s.family);
    s.density = j.value("density", s.density);
    s.seed = j.value("seed", s.seed);
    s.integer = j.value("integer", s.integer);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("gen spec: ") + e.what());
  }
  return s;
}

inline nlohmann::json to_json(const GenSpec& s) {
  return {{"n", s.n},          {"p", s.p},       {"c", s.c},          {"family", s.family},
          {"density", s.density}, {"seed", s.seed}, {"integer", s.integer}};
}

}  // namespace pcsm
