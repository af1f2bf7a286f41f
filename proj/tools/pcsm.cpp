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

// pcsm: command-line front end for the solvers.
//
//   pcsm gen --n 10 --family coverage --seed 3 > inst.json
//   pcsm forbidden --instance inst.json --epsilon 1/4
//   pcsm lp --variant lpf --m 50
//
// Exit codes: 0 success, 2 infeasible instance, 3 budget refusal, 4 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcsm/pcsm.hpp"

namespace {

using nlohmann::json;
using namespace pcsm;

constexpr int kOk = 0;
constexpr int kInfeasible = 2;
constexpr int kBudget = 3;
constexpr int kBadInput = 4;

struct Globals {
  std::uint64_t seed = 1;
  bool json_out = false;
  bool quiet = false;
};

json set_json(const Subset& s) { return s.elements(); }

// Prints either the JSON document or the key/value text lines.
void emit(const Globals& g, const json& doc) {
  if (g.json_out) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  if (g.quiet) return;
  for (const auto& [k, v] : doc.items()) {
    if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object())) continue;
    const std::string text = v.is_string()         ? v.get<std::string>()
                             : v.is_number_float() ? format_number(v.get<double>())
                                                   : v.dump();
    std::cout << k << ": " << text << '\n';
  }
}

json ratios_json(const RatioReport& r) {
  return {{"cover_ratio", r.cover_ratio},
          {"pack_ratio", std::isinf(r.pack_ratio) ? json("inf") : json(r.pack_ratio)}};
}

void add_set_fields(json& doc, const Instance& inst, const Subset& s, const Rational& value) {
  doc["set"] = set_json(s);
  doc["value"] = value.to_string();
  doc["value_decimal"] = format_number(value.to_double());
  doc["pack"] = to_json(pack_vector(inst, s));
  doc["cover"] = to_json(cover_vector(inst, s));
  doc.update(ratios_json(ratio_report(inst, s)));
}

int cmd_gen(const Globals& g, GenSpec spec, const std::string& out) {
  spec.seed = g.seed;
  const Instance inst = generate_instance(spec);
  const std::string text = to_json(inst).dump() + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << text;
    if (!g.quiet && !g.json_out) std::cerr << "wrote " << out << " (n=" << inst.n << ")\n";
  }
  return kOk;
}

int cmd_brute(const Globals& g, const std::string& path, bool pareto, int max_n) {
  const Instance inst = load_instance(path);
  json doc;
  doc["digest"] = instance_digest(inst);
  if (pareto) {
    doc["pareto"] = json::array();
    for (const auto& e : brute_pareto(inst, max_n))
      doc["pareto"].push_back({{"cover", to_json(e.cover)},
                               {"pack", to_json(e.pack)},
                               {"value", e.best_value.to_string()},
                               {"set", set_json(e.best_set)}});
    if (g.json_out) {
      emit(g, doc);
    } else if (!g.quiet) {
      for (const auto& e : doc["pareto"])
        std::cout << "cover=" << e["cover"].dump() << " pack=" << e["pack"].dump() << " value=" << e["value"].get<std::string>()
                  << " set=" << e["set"].dump() << '\n';
    }
    return kOk;
  }
  const auto r = brute_optimum(inst, max_n);
  doc["feasible_count"] = r.feasible_count;
  if (r.feasible_count == 0) {
    doc["status"] = "infeasible";
    emit(g, doc);
    return kInfeasible;
  }
  doc["status"] = "ok";
  add_set_fields(doc, inst, r.best_set, r.best_value);
  emit(g, doc);
  return kOk;
}

int cmd_dp(const Globals& g, const std::string& path, bool completion, bool exact_keys, double cell_budget) {
  const Instance inst = load_instance(path);
  const Instance work = to_integer(inst);
  DpOptions opt;
  opt.exact_keys = exact_keys;
  opt.cell_budget = cell_budget;
  json doc;
  doc["digest"] = instance_digest(inst);
  if (completion) {
    const auto r = dp_with_completion(work, opt);
    doc["cells"] = r.cells;
    doc["valid_cells"] = r.valid_cells;
    if (!r.found) {
      doc["status"] = "infeasible";
      emit(g, doc);
      return kInfeasible;
    }
    doc["status"] = "ok";
    add_set_fields(doc, inst, r.support, r.value);
    doc["multiplicity"] = r.multiplicity;
    emit(g, doc);
    return kOk;
  }
  const auto r = vanilla_dp(work, opt);
  doc["cells"] = r.table.size();
  if (!r.found) {
    doc["status"] = "infeasible";
    emit(g, doc);
    return kInfeasible;
  }
  doc["status"] = "ok";
  add_set_fields(doc, inst, r.best, r.value);
  emit(g, doc);
  return kOk;
}

int cmd_forbidden(const Globals& g, const std::string& path, const std::string& eps_text, int cardinality, bool poly,
                  double guess_budget) {
  Instance inst = load_instance(path);
  const Rational eps = Rational::parse(eps_text);
  ForbiddenOptions opt;
  opt.guess_budget = guess_budget;
  json doc;
  if (cardinality >= 0) {
    inst.packing.assign(1, std::vector<Rational>(inst.n, Rational(1)));
    inst.pack_bound.assign(1, Rational(cardinality));
  }
  doc["digest"] = instance_digest(inst);
  bool found = false;
  if (poly) {
    const auto r = solve_polynomial(inst, eps, opt);
    doc["epsilon"] = eps.to_string();
    doc["K_c"] = r.K_c.to_string();
    doc["K_p"] = r.K_p.to_string();
    doc["guesses"] = r.guesses;
    doc["cells"] = r.cells;
    found = r.found;
    if (found) add_set_fields(doc, inst, r.best, r.value);
  } else {
    const Instance work = to_integer(inst);
    const auto r = cardinality >= 0 ? cardinality_solve(work, opt) : forbidden_dp_solve(work, eps, opt);
    if (cardinality < 0) doc["epsilon"] = eps.to_string();
    doc["guesses"] = r.guesses;
    doc["cells"] = r.cells;
    found = r.found;
    if (found) {
      add_set_fields(doc, inst, r.best, r.value);
      doc["guess"] = set_json(r.guess);
    }
  }
  doc["status"] = found ? "ok" : "infeasible";
  emit(g, doc);
  return found ? kOk : kInfeasible;
}

struct ContinuousArgs {
  std::string instance;
  std::string epsilon = "1/10";
  bool relaxed = false;
  std::string delta = "1/5";
  std::string alpha, beta, gamma;
  int max_e1 = -2;
  int trials = 20;
  int steps = 100;
  int samples = 200;
  std::size_t budget = 100000;
};

BigRational big_parse(const std::string& text) { return to_big(Rational::parse(text)); }

int cmd_continuous(const Globals& g, const ContinuousArgs& a) {
  const Instance inst = load_instance(a.instance);
  const BigRational eps = big_parse(a.epsilon);
  ContinuousParams prm = a.relaxed ? relaxed_params(eps, big_parse(a.delta))
                                   : theory_params(eps, inst.num_packing(), inst.num_covering());
  if (!a.alpha.empty()) prm.alpha = big_parse(a.alpha);
  if (!a.beta.empty()) prm.beta = big_parse(a.beta);
  if (!a.gamma.empty()) prm.gamma = big_parse(a.gamma);
  if (a.max_e1 >= -1) prm.max_e1 = a.max_e1;
  prm.trials = a.trials;
  prm.steps = a.steps;
  prm.samples = a.samples;
  prm.budget = a.budget;
  prm.seed = g.seed;
  const auto r = solve_main(inst, prm);

  json doc;
  doc["digest"] = instance_digest(inst);
  doc["params"] = {{"epsilon", prm.epsilon.str()}, {"delta", prm.delta.str()}, {"alpha", prm.alpha.str()},
                   {"beta", prm.beta.str()},       {"gamma", prm.gamma.str()}, {"max_e1", e1_limit(ResidualSpace(inst), prm)},
                   {"steps", prm.steps},           {"samples", prm.samples},   {"trials", prm.trials},
                   {"budget", prm.budget},         {"seed", prm.seed}};
  doc["guesses"] = r.guesses;
  doc["examined"] = r.examined;
  doc["distinct"] = r.distinct;
  doc["truncated"] = r.truncated;
  doc["trials"] = r.trials;
  doc["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics)
    doc["diagnostics"].push_back({{"E1", set_json(d.E1)},
                                  {"E0_size", d.E0_size},
                                  {"grid", d.grid},
                                  {"critical_packing", d.Y},
                                  {"critical_covering", d.Z},
                                  {"L_size", d.L_size},
                                  {"polytope_feasible", d.polytope_feasible},
                                  {"passed", d.passed},
                                  {"failed", d.failed},
                                  {"best_value", d.best_value}});
  if (!r.found) {
    doc["status"] = "no qualifying set";
    emit(g, doc);
    if (r.truncated && !g.quiet) std::cerr << "guess budget exhausted after " << r.examined << " candidates\n";
    return kInfeasible;
  }
  doc["status"] = "ok";
  add_set_fields(doc, inst, r.S_alg, r.value);
  emit(g, doc);
  if (r.truncated && !g.quiet) std::cerr << "guess budget exhausted after " << r.examined << " candidates\n";
  return kOk;
}

int cmd_lp(const Globals& g, const std::string& variant, const std::vector<int>& ms, const std::string& csv,
           bool verify) {
  if (variant != "lp" && variant != "dual" && variant != "lpf") throw InputError("--variant must be lp, dual or lpf");
  json doc;
  doc["variant"] = variant;
  doc["rows"] = json::array();
  std::ostringstream table;
  table << "m,optimum\n";
  bool all_ok = true;
  for (int m : ms) {
    if (m < 1) throw InputError("--m must be positive");
    const LinearProgram lp = variant == "lp" ? build_lp(m) : variant == "dual" ? build_dual(m) : build_lp_f(m);
    const auto sol = simplex_solve(lp);
    json row = {{"m", m}, {"status", to_string(sol.status)}, {"pivots", sol.pivots}};
    if (sol.status == LpStatus::kOptimal) {
      row["optimum"] = sol.objective;
      table << m << ',' << format_number(sol.objective) << '\n';
    }
    if (verify) {
      if (variant == "lpf") {
        if (m > 2 && m % 2 == 0) {
          const auto ub = verify_upper_bound_construction(m);
          row["upper_bound"] = {{"feasible", ub.feasible},
                                {"value", ub.value},
                                {"formula_value", ub.formula_value},
                                {"closed_form_value", static_cast<double>(ub.closed_form_value)},
                                {"violated", ub.violated}};
          all_ok = all_ok && ub.feasible && ub.exact_value == ub.closed_form_value;
        }
      } else {
        const auto x = variant == "lp" ? lp_primal_witness(lp, m) : dual_witness(lp, m);
        const auto chk = check_exact(lp, x);
        const bool exact = chk.feasible && chk.objective == lp_closed_form(m);
        row["witness"] = {{"feasible", chk.feasible},
                          {"objective", static_cast<double>(chk.objective)},
                          {"closed_form", static_cast<double>(lp_closed_form(m))},
                          {"exact_match", exact},
                          {"violated", chk.violated}};
        all_ok = all_ok && exact;
      }
    }
    doc["rows"].push_back(row);
  }
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw InputError("cannot write '" + csv + "'");
    f << table.str();
  }
  if (g.json_out) {
    emit(g, doc);
  } else if (!g.quiet) {
    for (const auto& row : doc["rows"]) {
      std::cout << "m=" << row["m"].get<int>() << " status=" << row["status"].get<std::string>();
      if (row.contains("optimum")) std::cout << " optimum=" << format_number(row["optimum"].get<double>());
      if (row.contains("witness"))
        std::cout << " witness=" << (row["witness"]["exact_match"].get<bool>() ? "exact" : "FAILED");
      if (row.contains("upper_bound"))
        std::cout << " upper_bound=" << format_number(row["upper_bound"]["value"].get<double>())
                  << (row["upper_bound"]["feasible"].get<bool>() ? " (feasible)" : " (INFEASIBLE)");
      std::cout << '\n';
    }
  }
  return all_ok ? kOk : kInfeasible;
}

int cmd_kmedian(const Globals& g, const std::string& path, bool with_brute) {
  const TwoDistInstance inst = kmedian_from_json(read_json_file(path));
  const auto r = solve_two_distance(inst);
  json doc;
  doc["method"] = r.method;
  if (!r.feasible) {
    doc["status"] = "infeasible";
    emit(g, doc);
    return kInfeasible;
  }
  doc["status"] = "ok";
  doc["open"] = set_json(r.open);
  doc["assignment"] = r.assignment;
  doc["matched"] = r.matched;
  doc["cost"] = r.cost.to_string();
  if (with_brute) {
    const auto b = kmedian_brute(inst);
    doc["brute_cost"] = b.cost.to_string();
    doc["ratio"] = b.cost > Rational(0) ? (r.cost / b.cost).to_double() : 1.0;
  }
  emit(g, doc);
  return kOk;
}

int cmd_bench(const Globals& g, const std::string& suite_path, std::vector<std::string> solvers, const std::string& csv,
              const std::string& eps_text) {
  std::vector<GenSpec> suite;
  BenchOptions opt;
  opt.epsilon = Rational::parse(eps_text);
  opt.continuous.seed = g.seed;
  if (!suite_path.empty()) {
    const json j = read_json_file(suite_path);
    for (const auto& s : j.value("instances", json::array())) suite.push_back(gen_spec_from_json(s));
    if (solvers.empty() && j.contains("solvers")) solvers = j["solvers"].get<std::vector<std::string>>();
    if (j.contains("lp_m")) opt.lp_m = j["lp_m"].get<std::vector<int>>();
    if (j.contains("epsilon")) opt.epsilon = Rational::parse(j["epsilon"].get<std::string>());
    if (j.contains("continuous")) {
      const auto& c = j["continuous"];
      opt.continuous.steps = c.value("steps", opt.continuous.steps);
      opt.continuous.samples = c.value("samples", opt.continuous.samples);
      opt.continuous.trials = c.value("trials", opt.continuous.trials);
    }
  }
  const auto rows = bench(suite, solvers, opt);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw InputError("cannot write '" + csv + "'");
    write_csv(f, rows);
  }
  if (g.json_out) {
    json doc = json::array();
    for (const auto& r : rows) doc.push_back(to_json(r));
    std::cout << doc.dump(2) << '\n';
  } else if (csv.empty()) {
    write_csv(std::cout, rows);
  } else if (!g.quiet) {
    std::cerr << rows.size() << " rows written to " << csv << '\n';
  }
  for (const auto& r : rows)
    if (r.status == "error" && !g.quiet) std::cerr << r.solver << " on " << r.instance_digest << ": " << r.message << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing-covering submodular maximization solvers"};
  app.fallthrough();  // global flags may follow the subcommand
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--json", g.json_out, "Print JSON instead of text");
  app.add_flag("--quiet", g.quiet, "Suppress text output");

  auto* gen = app.add_subcommand("gen", "Generate a random instance with a planted feasible set");
  GenSpec spec;
  std::string gen_out;
  bool rational_entries = false;
  gen->add_option("--n", spec.n, "Ground set size")->capture_default_str();
  gen->add_option("--p", spec.p, "Packing rows")->capture_default_str();
  gen->add_option("--c", spec.c, "Covering rows")->capture_default_str();
  gen->add_option("--family", spec.family, "linear, coverage or concave_of_modular")->capture_default_str();
  gen->add_option("--density", spec.density, "Probability of a nonzero entry")->capture_default_str();
  gen->add_flag("--rational", rational_entries, "Draw fractional entries");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  auto* brute = app.add_subcommand("brute", "Exhaustive optimum");
  std::string instance;
  bool pareto = false;
  int max_n = 22;
  brute->add_option("--instance", instance, "Instance JSON")->required();
  brute->add_flag("--pareto", pareto, "Best value per (cover, pack) pair");
  brute->add_option("--max-n", max_n, "Refuse above this size")->capture_default_str();

  auto* dp = app.add_subcommand("dp", "Greedy-over-resources dynamic program");
  bool completion = false, exact_keys = false;
  double cell_budget = 5e7;
  dp->add_option("--instance", instance, "Instance JSON")->required();
  dp->add_flag("--completion", completion, "Complete each cell with a multiset");
  dp->add_flag("--exact-keys", exact_keys, "Do not clamp covering coordinates");
  dp->add_option("--cell-budget", cell_budget, "Refuse tables larger than this")->capture_default_str();

  auto* forbidden = app.add_subcommand("forbidden", "Forbidden-set dynamic program (one packing, one covering row)");
  std::string eps_text = "1/4";
  int cardinality = -1;
  bool poly = false;
  double guess_budget = 1e6;
  forbidden->add_option("--instance", instance, "Instance JSON")->required();
  forbidden->add_option("--epsilon", eps_text, "Packing slack")->capture_default_str();
  forbidden->add_option("--cardinality", cardinality, "Replace the packing row by |S| <= k");
  forbidden->add_flag("--poly", poly, "Scale the instance first");
  forbidden->add_option("--guess-budget", guess_budget, "Refuse above this many big-element guesses")
      ->capture_default_str();

  auto* cont = app.add_subcommand("continuous", "Guessing, continuous greedy and rounding");
  ContinuousArgs ca;
  cont->add_option("--instance", ca.instance, "Instance JSON")->required();
  cont->add_option("--epsilon", ca.epsilon, "Accuracy")->capture_default_str();
  cont->add_flag("--relaxed", ca.relaxed, "alpha = beta = delta, gamma = 2");
  cont->add_option("--delta", ca.delta, "delta for --relaxed")->capture_default_str();
  cont->add_option("--alpha", ca.alpha, "Override alpha");
  cont->add_option("--beta", ca.beta, "Override beta");
  cont->add_option("--gamma", ca.gamma, "Override gamma");
  cont->add_option("--max-e1", ca.max_e1, "Largest guessed set (-1: from the parameters)");
  cont->add_option("--trials", ca.trials, "Rounding trials per guess")->capture_default_str();
  cont->add_option("--steps", ca.steps, "Continuous greedy steps")->capture_default_str();
  cont->add_option("--samples", ca.samples, "Samples per gradient estimate")->capture_default_str();
  cont->add_option("--budget", ca.budget, "Guess candidates examined")->capture_default_str();

  auto* lp = app.add_subcommand("lp", "Factor-revealing linear programs");
  std::string variant = "lpf", lp_csv;
  std::vector<int> ms;
  bool verify = false;
  lp->add_option("--variant", variant, "lp, dual or lpf")->capture_default_str();
  lp->add_option("--m", ms, "Phase counts")->required();
  lp->add_option("--csv", lp_csv, "Write m,optimum rows");
  lp->add_flag("--verify-analytic", verify, "Check closed-form witnesses exactly");

  auto* km = app.add_subcommand("kmedian", "Capacitated two-distance k-median");
  bool km_brute = false;
  km->add_option("--instance", instance, "k-median JSON")->required();
  km->add_flag("--brute", km_brute, "Also report the exhaustive optimum");

  auto* bn = app.add_subcommand("bench", "Run solvers on generated instances");
  std::string suite_path, bench_csv, bench_eps = "1/4";
  std::vector<std::string> solvers;
  bn->add_option("--suite", suite_path, "Suite JSON: {instances, solvers, lp_m}");
  bn->add_option("--solvers", solvers, "Solver names")->delimiter(',');
  bn->add_option("--csv", bench_csv, "CSV output file (default stdout)");
  bn->add_option("--epsilon", bench_eps, "epsilon for the forbidden-set solvers")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen) {
      spec.integer = !rational_entries;
      return cmd_gen(g, spec, gen_out);
    }
    if (*brute) return cmd_brute(g, instance, pareto, max_n);
    if (*dp) return cmd_dp(g, instance, completion, exact_keys, cell_budget);
    if (*forbidden) return cmd_forbidden(g, instance, eps_text, cardinality, poly, guess_budget);
    if (*cont) return cmd_continuous(g, ca);
    if (*lp) return cmd_lp(g, variant, ms, lp_csv, verify);
    if (*km) return cmd_kmedian(g, instance, km_brute);
    if (*bn) return cmd_bench(g, suite_path, solvers, bench_csv, bench_eps);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const BudgetError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kBudget;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
