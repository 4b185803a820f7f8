// Copyright 2026 The facmech Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The `facmech` command line. Exit codes: 0 success, 1 a check failed,
// 2 usage error, 3 unreadable or malformed input.

#ifndef FACMECH_CLI_HPP_
#define FACMECH_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "facmech/acceptance.hpp"
#include "facmech/errors.hpp"
#include "facmech/instances.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/model.hpp"
#include "facmech/oracle.hpp"
#include "facmech/registry.hpp"
#include "facmech/report_json.hpp"
#include "facmech/verification.hpp"

namespace facmech::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;

// Usage problems detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> mechanisms;
  std::string objective = "maxisum";
  std::string instance;
  std::string family;
  std::string output;
  std::string format = "table";
  std::uint64_t seed = 42;
  std::size_t iterations = 1000;
  bool iterations_set = false;
  unsigned workers = 0;
  std::string mutate;
  // gen / ratio-search
  int n = 0;
  int n_min = 1;
  int n_max = 10;
  double type_mix = 0.5;
  int k_max = 1;
  double epsilon = 1e-3;
  double alpha = 0.0;
  double beta = 2.0;
  double big_m = 10.0;
  bool mirrored = false;
  std::vector<double> points{0.0, 2.0};
  // characterize
  std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
  bool allow_large = false;
  std::size_t agent = 0;
  std::size_t sweep_steps = 200;
  // certify
  std::string certificate = "61";
  double claimed_c = 23.0 / 13.0;
  double tolerance = kSpTolerance;
};

namespace detail {

inline std::string num(double v) { return acceptance::fmt12(v); }

inline void print_rows(std::ostream& out,
                       const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  }
}

inline std::string lottery_text(const Lottery& l) {
  std::string s;
  for (const auto& o : l.support()) {
    if (!s.empty()) s += "  ";
    s += num(o.location) + " w.p. " + num(o.probability);
  }
  return s;
}

inline Objective objective_of(const RunConfig& cfg) {
  auto o = parse_objective(cfg.objective);
  if (!o) throw UsageError("objective must be maxisum or egalitarian");
  return *o;
}

inline const std::string& single_mechanism(const RunConfig& cfg) {
  if (cfg.mechanisms.size() != 1) throw UsageError("expected exactly one --mechanism");
  return cfg.mechanisms.front();
}

inline void emit_json(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

// Writes `profile` to `path`, or when a pair, to <stem>_x<ext> and <stem>_y<ext>.
inline std::vector<std::string> write_family(const std::string& path,
                                             const std::vector<Profile>& profiles) {
  if (profiles.size() == 1) {
    save_instance(profiles.front(), path);
    return {path};
  }
  const std::filesystem::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".json";
  const std::filesystem::path stem = p.parent_path() / p.stem();
  std::vector<std::string> written{stem.string() + "_x" + ext, stem.string() + "_y" + ext};
  save_instance(profiles[0], written[0]);
  save_instance(profiles[1], written[1]);
  return written;
}

}  // namespace detail

inline int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const Mechanism mech = make_mechanism(detail::single_mechanism(cfg));
  const Objective obj = detail::objective_of(cfg);
  const Profile p = load_instance(cfg.instance);
  const Lottery l = mech(p);
  const double got = expected_social_benefit(p, l, obj);
  const OptResult best = opt(p, obj);
  const double ratio = benefit_ratio(best.value, got);
  if (cfg.format == "json") {
    detail::emit_json(out, {{"mechanism", mech.name()},
                            {"objective", to_string(obj)},
                            {"lottery", to_json(l)},
                            {"expected_social_benefit", got},
                            {"opt_location", best.location},
                            {"opt_value", best.value},
                            {"ratio", json_number(ratio)}});
    return kExitOk;
  }
  detail::print_rows(out, {{"mechanism", mech.name()},
                           {"objective", std::string(to_string(obj))},
                           {"lottery", detail::lottery_text(l)},
                           {"expected_social_benefit", detail::num(got)},
                           {"opt_location", detail::num(best.location)},
                           {"opt_value", detail::num(best.value)},
                           {"ratio", detail::num(ratio)}});
  return kExitOk;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Objective obj = detail::objective_of(cfg);
  const Profile p = load_instance(cfg.instance);
  const OptResult best = opt(p, obj);
  if (cfg.format == "json") {
    detail::emit_json(out, {{"objective", to_string(obj)},
                            {"opt_location", best.location},
                            {"opt_value", best.value},
                            {"candidates", best.candidate_count}});
  } else {
    detail::print_rows(out, {{"objective", std::string(to_string(obj))},
                             {"opt_location", detail::num(best.location)},
                             {"opt_value", detail::num(best.value)}});
  }
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  AcceptanceConfig acfg;
  acfg.seed = cfg.seed;
  if (cfg.iterations_set) acfg.iterations = cfg.iterations;
  acfg.mutate = cfg.mutate;
  acfg.workers = cfg.workers;
  const auto results = run_acceptance(acfg);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (cfg.format == "json") {
    ojson checks = ojson::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name},
                        {"passed", r.passed},
                        {"summary", r.summary},
                        {"details", r.details}});
    }
    detail::emit_json(out, {{"seed", cfg.seed}, {"passed", all}, {"checks", std::move(checks)}});
  } else {
    for (const auto& r : results) {
      out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  " << r.summary << '\n';
    }
    for (const auto& r : results) {
      if (!r.passed) out << "\n" << r.name << " witness dump:\n" << r.details.dump(2) << '\n';
    }
    out << (all ? "all checks passed" : "verification FAILED") << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  std::vector<Profile> made;
  const std::string& f = cfg.family;
  if (f == "tightness32") {
    made.push_back(gen_tightness_32());
  } else if (f == "thm51") {
    auto [x, y] = gen_thm51(cfg.n == 0 ? 10 : cfg.n, cfg.epsilon, cfg.alpha, cfg.beta);
    made = {x, y};
  } else if (f == "thm52") {
    if (cfg.points.size() != 2) throw UsageError("--points needs two values");
    made.push_back(gen_thm52(cfg.points[0], cfg.points[1]));
  } else if (f == "thm61") {
    auto [x, y] = gen_thm61();
    made = {x, y};
  } else if (f == "thm62") {
    Thm62Instance inst = gen_thm62(cfg.big_m, cfg.epsilon, cfg.mirrored);
    made = {inst.x, inst.x_prime};
  } else if (f == "random") {
    if (cfg.n < 1) throw UsageError("--n must be at least 1 for the random family");
    made.push_back(random_profile(static_cast<std::size_t>(cfg.n), cfg.type_mix,
                                  static_cast<std::size_t>(cfg.k_max),
                                  Interval::unit_pair(), cfg.seed));
  } else {
    throw UsageError("unknown family '" + f +
                     "'; known: random, thm51, thm52, thm61, thm62, tightness32");
  }
  if (!cfg.output.empty()) {
    for (const auto& path : detail::write_family(cfg.output, made)) out << path << '\n';
    return kExitOk;
  }
  if (made.size() == 1) {
    detail::emit_json(out, profile_to_json(made.front()));
  } else {
    detail::emit_json(out, {{"x", profile_to_json(made[0])}, {"y", profile_to_json(made[1])}});
  }
  return kExitOk;
}

inline int cmd_sp_check(const RunConfig& cfg, std::ostream& out) {
  const Mechanism mech = make_mechanism(detail::single_mechanism(cfg));
  const Profile p = load_instance(cfg.instance);
  const auto witnesses = sp_check(mech, p, cfg.tolerance);
  if (cfg.format == "json") {
    ojson list = ojson::array();
    for (const auto& w : witnesses) list.push_back(to_json(w));
    detail::emit_json(out, {{"mechanism", mech.name()},
                            {"witness_count", witnesses.size()},
                            {"witnesses", std::move(list)}});
  } else {
    out << mech.name() << ": " << witnesses.size() << " deviation witness(es)\n";
    for (const auto& w : witnesses) {
      out << "  agent " << w.agent_index << " reports type " << type_label(w.misreport.type())
          << " at";
      for (double x : w.misreport.locations()) out << ' ' << detail::num(x);
      out << ": benefit " << detail::num(w.truthful_benefit) << " -> "
          << detail::num(w.deviating_benefit) << " (gain " << detail::num(w.gain) << ")\n";
    }
  }
  return witnesses.empty() ? kExitOk : kExitCheckFailed;
}

inline int cmd_ratio_search(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mechanisms.empty()) throw UsageError("expected at least one --mechanism");
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw UsageError("need 1 <= n-min <= n-max");
  const Objective obj = detail::objective_of(cfg);
  const RandomProfileSampler sampler{static_cast<std::size_t>(cfg.n_min),
                                     static_cast<std::size_t>(cfg.n_max), cfg.type_mix,
                                     static_cast<std::size_t>(cfg.k_max),
                                     Interval::unit_pair()};
  std::vector<std::pair<std::string, RatioSearchResult>> rows;
  for (const auto& name : cfg.mechanisms) {
    const Mechanism mech = make_mechanism(name);
    rows.emplace_back(mech.name(), ratio_search(mech, obj, sampler, cfg.iterations, cfg.seed,
                                                {}, cfg.workers));
  }
  if (cfg.format == "json") {
    ojson list = ojson::array();
    for (const auto& [name, r] : rows) {
      ojson j = to_json(r);
      j["mechanism"] = name;
      list.push_back(std::move(j));
    }
    detail::emit_json(out, {{"objective", to_string(obj)}, {"seed", cfg.seed},
                            {"results", std::move(list)}});
  } else if (cfg.format == "csv") {
    out << "mechanism,objective,evaluated,worst_ratio,worst_index,opt_value,mechanism_value\n";
    for (const auto& [name, r] : rows) {
      out << name << ',' << to_string(obj) << ',' << r.evaluated << ','
          << detail::num(r.worst_ratio) << ',' << r.worst_index << ','
          << detail::num(r.worst_opt_value) << ',' << detail::num(r.worst_mechanism_value)
          << '\n';
    }
  } else {
    for (const auto& [name, r] : rows) {
      out << name << ": worst ratio " << detail::num(r.worst_ratio) << " at sample "
          << r.worst_index << " of " << r.evaluated << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_characterize(const RunConfig& cfg, std::ostream& out) {
  const Mechanism mech = make_mechanism(detail::single_mechanism(cfg));
  if (cfg.n < 0) throw UsageError("--n must be positive");
  const std::size_t n = cfg.n == 0 ? 2 : static_cast<std::size_t>(cfg.n);
  GridOptions opts;
  opts.allow_large = cfg.allow_large;
  const auto mid = midpoint_property_check(mech, n, cfg.grid, opts);
  const auto sp = grid_sp_check(mech, n, cfg.grid, opts, cfg.tolerance);
  std::optional<ReflectionForm> form;
  if (!cfg.instance.empty()) {
    const Profile p = load_instance(cfg.instance);
    const auto sweep = uniform_grid(p.interval(), cfg.sweep_steps);
    form = reflection_form_check(mech, p, cfg.agent, sweep);
  }
  const bool passed = mid.passed && sp.empty() &&
                      (!form || form->kind != ReflectionKind::kViolation);
  if (cfg.format == "json") {
    ojson j{{"mechanism", mech.name()},
            {"passed", passed},
            {"midpoint_check", to_json(mid)},
            {"grid_sp_witness_count", sp.size()}};
    if (!sp.empty()) j["grid_sp_witness"] = to_json(sp.front());
    if (form) j["reflection"] = to_json(*form);
    detail::emit_json(out, j);
  } else {
    std::vector<std::pair<std::string, std::string>> rows{
        {"mechanism", mech.name()},
        {"midpoint_check", mid.passed ? "pass" : "fail: " + mid.failure},
        {"grid_sp_witnesses", std::to_string(sp.size())}};
    if (mid.range_points.size() == 2) {
      rows.emplace_back("range", detail::num(mid.alpha) + ", " + detail::num(mid.beta));
    }
    if (form) {
      rows.emplace_back("reflection", std::string(to_string(form->kind)) + " alpha=" +
                                          detail::num(form->alpha) + " beta=" +
                                          detail::num(form->beta) + " point=" +
                                          detail::num(form->reflection_point) + " grid=" +
                                          detail::num(form->grid_resolution));
    }
    detail::print_rows(out, rows);
  }
  return passed ? kExitOk : kExitCheckFailed;
}

inline int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const Mechanism mech = make_mechanism(detail::single_mechanism(cfg));
  CertificateReport rep;
  if (cfg.certificate == "61") {
    rep = certificate_61(mech, cfg.claimed_c);
  } else if (cfg.certificate == "62") {
    rep = certificate_62(mech, cfg.big_m, cfg.epsilon, cfg.claimed_c);
  } else {
    throw UsageError("--which must be 61 or 62");
  }
  if (cfg.format == "json") {
    detail::emit_json(out, to_json(rep));
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [k, v] : rep.measurements) rows.emplace_back(k, detail::num(v));
    for (const auto& c : rep.checks) {
      rows.emplace_back(c.name, std::string(c.holds ? "holds" : "FAILS") + "  lhs=" +
                                    detail::num(c.lhs) + " rhs=" + detail::num(c.rhs));
    }
    rows.emplace_back("verdict", rep.verdict);
    detail::print_rows(out, rows);
  }
  return rep.consistent ? kExitOk : kExitCheckFailed;
}

// Entry point. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strategyproof facility location: mechanisms, oracles and checks", "facmech"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember(std::move(allowed)));
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed")->envname("FACMECH_SEED");
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  };

  auto* eval = app.add_subcommand("eval", "Run a mechanism on an instance");
  eval->add_option("--mechanism", cfg.mechanisms, "Mechanism name")->required()->expected(1);
  eval->add_option("--instance", cfg.instance, "Instance JSON file")->required();
  eval->add_option("--objective", cfg.objective, "maxisum or egalitarian");
  add_format(eval, {"table", "json"});

  auto* oracle = app.add_subcommand("oracle", "Optimal location and value");
  oracle->add_option("--instance", cfg.instance, "Instance JSON file")->required();
  oracle->add_option("--objective", cfg.objective, "maxisum or egalitarian");
  add_format(oracle, {"table", "json"});

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  add_seed(verify);
  verify->add_option("--iterations", cfg.iterations, "Override every sample count");
  verify->add_option("--mutate", cfg.mutate, "Swap in a built-in mutant")
      ->check(CLI::IsMember({"det-hybrid"}));
  add_workers(verify);
  add_format(verify, {"table", "json"});

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->add_option("--family", cfg.family, "random, thm51, thm52, thm61, thm62, tightness32")
      ->required();
  gen->add_option("-o,--output", cfg.output, "Output path (pairs get _x/_y suffixes)");
  gen->add_option("--n", cfg.n, "Number of agents");
  add_seed(gen);
  gen->add_option("--type-mix", cfg.type_mix, "Probability of a type-2 agent");
  gen->add_option("--k-max", cfg.k_max, "Maximum locations per agent");
  gen->add_option("--eps", cfg.epsilon, "Epsilon");
  gen->add_option("--alpha", cfg.alpha, "Low range point");
  gen->add_option("--beta", cfg.beta, "High range point");
  gen->add_option("--M", cfg.big_m, "Interval stretch");
  gen->add_flag("--mirrored", cfg.mirrored, "Move the high endpoint cluster instead");
  gen->add_option("--points", cfg.points, "Two range points")->delimiter(',');

  auto* spc = app.add_subcommand("sp-check", "Search single-agent deviations");
  spc->add_option("--mechanism", cfg.mechanisms, "Mechanism name")->required()->expected(1);
  spc->add_option("--instance", cfg.instance, "Instance JSON file")->required();
  spc->add_option("--tolerance", cfg.tolerance, "Minimum gain that counts");
  add_format(spc, {"table", "json"});

  auto* rs = app.add_subcommand("ratio-search", "Worst ratio over random profiles");
  rs->add_option("--mechanism", cfg.mechanisms, "Mechanism name (repeatable)")->required();
  rs->add_option("--objective", cfg.objective, "maxisum or egalitarian");
  rs->add_option("--iterations", cfg.iterations, "Sampled profiles");
  add_seed(rs);
  rs->add_option("--n-min", cfg.n_min, "Fewest agents");
  rs->add_option("--n-max", cfg.n_max, "Most agents");
  rs->add_option("--type-mix", cfg.type_mix, "Probability of a type-2 agent");
  rs->add_option("--k-max", cfg.k_max, "Maximum locations per agent");
  add_workers(rs);
  add_format(rs, {"table", "json", "csv"});

  auto* ch = app.add_subcommand("characterize", "Midpoint and sweep checks");
  ch->add_option("--mechanism", cfg.mechanisms, "Mechanism name")->required()->expected(1);
  ch->add_option("--n", cfg.n, "Agents in the grid enumeration");
  ch->add_option("--grid", cfg.grid, "Comma-separated grid")->delimiter(',');
  ch->add_flag("--allow-large", cfg.allow_large, "Lift the enumeration cap");
  ch->add_option("--instance", cfg.instance, "Partial profile to sweep");
  ch->add_option("--agent", cfg.agent, "Agent to sweep");
  ch->add_option("--sweep-steps", cfg.sweep_steps, "Sweep cells");
  ch->add_option("--tolerance", cfg.tolerance, "Minimum gain that counts");
  add_format(ch, {"table", "json"});

  auto* cert = app.add_subcommand("certify", "Evaluate a lower-bound certificate");
  cert->add_option("--which", cfg.certificate, "61 or 62")->required();
  cert->add_option("--mechanism", cfg.mechanisms, "Mechanism name")->required()->expected(1);
  cert->add_option("--c", cfg.claimed_c, "Claimed approximation ratio");
  cert->add_option("--M", cfg.big_m, "Interval stretch");
  cert->add_option("--eps", cfg.epsilon, "Epsilon");
  add_format(cert, {"table", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.iterations_set = verify->count("--iterations") > 0;
  if (rs->parsed() && cfg.iterations < 1) {
    err << "error: --iterations must be at least 1\n";
    return kExitUsage;
  }
  if (verify->parsed() && cfg.iterations_set && cfg.iterations < 1) {
    err << "error: --iterations must be at least 1\n";
    return kExitUsage;
  }
  if (gen->parsed() && gen->count("--eps") == 0 && cfg.family == "thm62") cfg.epsilon = 0.1;

  try {
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (oracle->parsed()) return cmd_oracle(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (spc->parsed()) return cmd_sp_check(cfg, out);
    if (rs->parsed()) return cmd_ratio_search(cfg, out);
    if (ch->parsed()) return cmd_characterize(cfg, out);
    if (cert->parsed()) return cmd_certify(cfg, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const UnknownMechanismError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace facmech::cli

#endif  // FACMECH_CLI_HPP_
