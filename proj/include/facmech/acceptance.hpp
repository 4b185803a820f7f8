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

// The release acceptance suite. Shared by `facmech verify` and the
// acceptance test binary so both report the same thing.

#ifndef FACMECH_ACCEPTANCE_HPP_
#define FACMECH_ACCEPTANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "facmech/detail/parallel.hpp"
#include "facmech/errors.hpp"
#include "facmech/instances.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/model.hpp"
#include "facmech/oracle.hpp"
#include "facmech/report_json.hpp"
#include "facmech/verification.hpp"

namespace facmech {

struct AcceptanceConfig {
  std::uint64_t seed = 42;
  // Replaces every sampled count when set.
  std::optional<std::size_t> iterations;
  // "det-hybrid" swaps det-hybrid for its built-in mutant.
  std::string mutate;
  unsigned workers = 0;
};

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string summary;
  ojson details = ojson::object();
};

namespace acceptance {

inline constexpr double kExact = 1e-12;
inline constexpr double kBound = 1e-9;

inline std::string fmt12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline Mechanism det_hybrid_under_test(const AcceptanceConfig& cfg) {
  if (cfg.mutate.empty()) return det_hybrid_mechanism();
  if (cfg.mutate == "det-hybrid") return det_hybrid_mutant();
  throw UnknownMechanismError("no built-in mutant for '" + cfg.mutate +
                              "'; known: det-hybrid");
}

inline std::size_t count(const AcceptanceConfig& cfg, std::size_t fallback) {
  return cfg.iterations.value_or(fallback);
}

// A sub-stream per criterion so criteria do not share samples.
inline std::uint64_t stream(const AcceptanceConfig& cfg, std::uint64_t tag) {
  return instance_seed(cfg.seed, 0xFACE0000ULL + tag);
}

inline RandomProfileSampler hybrid_sampler() { return {1, 10, 0.5, 1, Interval::unit_pair()}; }
inline RandomProfileSampler multi_sampler() { return {1, 6, 0.0, 4, Interval::unit_pair()}; }

inline Profile worked_multi_instance() {
  return Profile(Interval::unit_pair(), {AgentReport(AgentType::kType1, {0.0, 2.0}),
                                         AgentReport(AgentType::kType1, 1.5)});
}

struct SweepResult {
  std::size_t profiles = 0;
  std::size_t witnesses = 0;
  std::vector<ProfileWitness> first;  // lowest-index witnesses, at most 3
};

// sp_check with default deviation sets on pool + sampled profiles.
template <ProfileSampler Sampler>
SweepResult sp_sweep(const Mechanism& mechanism, const Sampler& sampler,
                     std::size_t iterations, std::uint64_t seed,
                     const std::vector<Profile>& pool, unsigned workers) {
  const std::size_t total = pool.size() + iterations;
  struct Chunk {
    std::size_t witnesses = 0;
    std::vector<ProfileWitness> first;
  };
  std::vector<Chunk> chunks(detail::resolve_workers(workers, total));
  detail::parallel_chunks(total, static_cast<unsigned>(chunks.size()),
                          [&](std::size_t begin, std::size_t end, unsigned w) {
                            for (std::size_t idx = begin; idx < end; ++idx) {
                              const Profile p = idx < pool.size()
                                                    ? pool[idx]
                                                    : sampler(instance_seed(seed, idx - pool.size()));
                              for (auto& wit : sp_check(mechanism, p)) {
                                ++chunks[w].witnesses;
                                if (chunks[w].first.size() < 3) {
                                  chunks[w].first.push_back({p, std::move(wit)});
                                }
                              }
                            }
                          });
  SweepResult out;
  out.profiles = total;
  for (auto& c : chunks) {
    out.witnesses += c.witnesses;
    for (auto& w : c.first) {
      if (out.first.size() < 3) out.first.push_back(std::move(w));
    }
  }
  return out;
}

inline CriterionResult c1_tightness() {
  const Profile p = gen_tightness_32();
  const double got = expected_social_benefit(p, rand_hybrid(p), Objective::kMaxisum);
  const OptResult best = opt_maxisum(p);
  const double ratio = benefit_ratio(best.value, got);
  CriterionResult r;
  r.name = "C1 tightness instance for rand-hybrid";
  r.passed = std::abs(got - 39.0 / 23.0) <= kExact && best.value == 3.0 &&
             std::abs(ratio - 23.0 / 13.0) <= kExact;
  r.summary = "E[sb]=" + fmt12(got) + " OPT=" + fmt12(best.value) + " ratio=" + fmt12(ratio);
  r.details = {{"instance", profile_to_json(p)},
               {"expected_benefit", got},
               {"opt_value", best.value},
               {"ratio", ratio}};
  return r;
}

inline CriterionResult c2_det_hybrid_bound(const AcceptanceConfig& cfg) {
  const Mechanism mech = det_hybrid_under_test(cfg);
  const auto search = ratio_search(mech, Objective::kMaxisum, hybrid_sampler(),
                                   count(cfg, 100000), cfg.seed, {}, cfg.workers);
  const double eps = 1e-3;
  const auto [x, y] = gen_thm51(10, eps, 0.0, 2.0);
  const RatioEval fam = evaluate_ratio(mech, Objective::kMaxisum, y);
  const double closed = (3.0 - eps) / (1.0 + eps);
  CriterionResult r;
  r.name = "C2 det-hybrid maxisum ratio at most 3";
  r.passed = search.worst_ratio <= 3.0 + kBound && fam.ratio >= 2.99 &&
             std::abs(fam.ratio - closed) <= kExact;
  r.summary = "worst=" + fmt12(search.worst_ratio) + " over " +
              std::to_string(search.evaluated) + " profiles; family ratio=" +
              fmt12(fam.ratio) + " closed form=" + fmt12(closed);
  r.details = {{"search", to_json(search)},
               {"family_ratio", json_number(fam.ratio)},
               {"family_closed_form", closed}};
  return r;
}

inline CriterionResult c3_rand_hybrid_bound(const AcceptanceConfig& cfg) {
  const Mechanism mech = rand_hybrid_mechanism();
  const std::vector<Profile> pool{gen_tightness_32()};
  const auto search = ratio_search(mech, Objective::kMaxisum, hybrid_sampler(),
                                   count(cfg, 100000), stream(cfg, 3), pool, cfg.workers);
  const double bound = 23.0 / 13.0;
  const double on_tight = evaluate_ratio(mech, Objective::kMaxisum, pool[0]).ratio;
  CriterionResult r;
  r.name = "C3 rand-hybrid maxisum ratio at most 23/13";
  r.passed = search.worst_ratio <= bound + kBound && std::abs(on_tight - bound) <= kExact &&
             std::abs(search.worst_ratio - bound) <= kBound;
  r.summary = "worst=" + fmt12(search.worst_ratio) + " over " +
              std::to_string(search.evaluated) + " profiles; tight instance=" +
              fmt12(on_tight);
  r.details = {{"search", to_json(search)}, {"tight_instance_ratio", on_tight}};
  return r;
}

inline CriterionResult c4_strategyproofness(const AcceptanceConfig& cfg) {
  const std::size_t n = count(cfg, 10000);
  const auto [t51x, t51y] = gen_thm51(10, 1e-3, 0.0, 2.0);
  const std::vector<Profile> hybrid_pool{gen_tightness_32(), builtin_mutant_profile(),
                                         t51x, t51y};
  const std::vector<Profile> multi_pool{worked_multi_instance()};
  struct Row {
    Mechanism mech;
    bool multi;
  };
  const std::vector<Row> rows{{det_hybrid_under_test(cfg), false},
                              {rand_hybrid_mechanism(), false},
                              {det_multi_mechanism(), true},
                              {rand_multi_canonical_mechanism(), true}};
  CriterionResult r;
  r.name = "C4 strategyproofness of shipped mechanisms";
  r.passed = true;
  ojson per = ojson::object();
  std::string summary;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const SweepResult s =
        row.multi ? sp_sweep(row.mech, multi_sampler(), n, stream(cfg, 40 + i), multi_pool, cfg.workers)
                  : sp_sweep(row.mech, hybrid_sampler(), n, stream(cfg, 40 + i), hybrid_pool, cfg.workers);
    ojson entry{{"profiles", s.profiles}, {"witnesses", s.witnesses}};
    if (!s.first.empty()) {
      entry["witness_dump"] = ojson::array();
      for (const auto& w : s.first) entry["witness_dump"].push_back(to_json(w));
    }
    per[row.mech.name()] = std::move(entry);
    r.passed = r.passed && s.witnesses == 0;
    summary += row.mech.name() + ":" + std::to_string(s.witnesses) + " ";
  }
  // The optimum is not strategyproof: the agent at 2/3 lies to 1/3.
  const Profile ex = Profile::single(Interval::unit_pair(), AgentType::kType1,
                                     {2.0 / 3.0, 1.5});
  const std::vector<std::vector<AgentReport>> sets{
      {AgentReport(AgentType::kType1, 1.0 / 3.0)}, {ex.agent(1)}};
  const auto opt_w = sp_check(opt_mechanism(Objective::kMaxisum), ex, sets);
  const bool baseline_ok = !opt_w.empty() && opt_w.front().gain > 0.0;
  r.passed = r.passed && baseline_ok;
  summary += "| opt-maxisum witnesses:" + std::to_string(opt_w.size());
  if (!opt_w.empty()) summary += " gain=" + fmt12(opt_w.front().gain);
  r.summary = summary;
  per["opt-maxisum-baseline"] = {
      {"witnesses", opt_w.size()},
      {"witness", opt_w.empty() ? ojson(nullptr) : to_json(opt_w.front())}};
  r.details = std::move(per);
  return r;
}

inline CriterionResult c5_characterization(const AcceptanceConfig& cfg) {
  const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
  const Interval I = Interval::unit_pair();
  const Mechanism mech = det_hybrid_under_test(cfg);
  const Mechanism mutant = det_hybrid_mutant();
  const auto mid = midpoint_property_check(mech, 2, grid);
  const auto sp = grid_sp_check(mech, 2, grid);
  const auto mid_mut = midpoint_property_check(mutant, 2, grid);
  const auto sp_mut = grid_sp_check(mutant, 2, grid);

  // Sweeps: every agent against every grid partner, then random partners.
  const std::vector<double> sweep = uniform_grid(I, 200);
  std::size_t pivotal = 0;
  std::size_t constant = 0;
  std::optional<std::pair<Profile, ReflectionForm>> bad;
  auto classify = [&](const Profile& p, std::size_t agent) {
    const ReflectionForm f = reflection_form_check(mech, p, agent, sweep);
    if (f.kind == ReflectionKind::kConstant) {
      ++constant;
      return;
    }
    const bool ok = f.kind == ReflectionKind::kStep && f.alpha == 0.0 && f.beta == 2.0 &&
                    f.reflection_point == 1.0;
    if (ok) {
      ++pivotal;
    } else if (!bad) {
      bad.emplace(p, f);
    }
  };
  for (std::size_t agent = 0; agent < 2; ++agent) {
    for (double other : grid) {
      const double xs[2] = {agent == 0 ? 0.0 : other, agent == 0 ? other : 0.0};
      classify(Profile::single(I, AgentType::kType1, {xs[0], xs[1]}), agent);
    }
  }
  const RandomProfileSampler partners{2, 6, 0.0, 1, I};
  const std::size_t sampled = std::min<std::size_t>(count(cfg, 200), 200);
  for (std::size_t s = 0; s < sampled; ++s) {
    classify(partners(instance_seed(stream(cfg, 5), s)), 0);
  }

  CriterionResult r;
  r.name = "C5 midpoint characterization on the grid";
  const bool mech_ok = mid.passed && sp.empty();
  const bool mutant_caught = !mid_mut.passed && !sp_mut.empty();
  r.passed = mech_ok && mutant_caught && !bad && pivotal > 0;
  r.summary = mech.name() + " midpoint=" + (mid.passed ? "pass" : "fail") +
              " grid-sp witnesses=" + std::to_string(sp.size()) +
              "; mutant midpoint=" + (mid_mut.passed ? "pass" : "fail") +
              " grid-sp witnesses=" + std::to_string(sp_mut.size()) +
              "; sweeps step=" + std::to_string(pivotal) +
              " constant=" + std::to_string(constant) + " other=" + (bad ? "yes" : "0");
  r.details = {{"mechanism", mech.name()},
               {"midpoint_check", to_json(mid)},
               {"grid_sp_witnesses", sp.size()},
               {"mutant_midpoint_check", to_json(mid_mut)},
               {"mutant_grid_sp_witnesses", sp_mut.size()},
               {"sweep_steps", pivotal},
               {"sweep_constant", constant},
               {"sweep_resolution", sweep[1] - sweep[0]}};
  if (!sp.empty()) r.details["grid_sp_witness"] = to_json(sp.front());
  if (!sp_mut.empty()) r.details["mutant_grid_sp_witness"] = to_json(sp_mut.front());
  if (bad) {
    r.details["sweep_failure"] = {{"profile", profile_to_json(bad->first)},
                                  {"form", to_json(bad->second)}};
  }
  return r;
}

inline CriterionResult c6_egalitarian_unbounded() {
  const Profile p = gen_thm52(0.0, 2.0);
  const double got = expected_social_benefit(p, det_hybrid(p), Objective::kEgalitarian);
  const OptResult best = opt_egalitarian(p);
  const double ratio = benefit_ratio(best.value, got);
  CriterionResult r;
  r.name = "C6 det-hybrid egalitarian ratio unbounded";
  r.passed = std::abs(got) <= kExact && std::abs(best.value - 1.0) <= kExact &&
             std::isinf(ratio) && ratio > 0;
  r.summary = "E[min]=" + fmt12(got) + " OPT=" + fmt12(best.value) + " ratio=" + fmt12(ratio);
  r.details = {{"instance", profile_to_json(p)},
               {"mechanism_value", got},
               {"opt_value", best.value},
               {"ratio", json_number(ratio)}};
  return r;
}

inline CriterionResult c7_multi_location(const AcceptanceConfig& cfg) {
  const std::size_t n = count(cfg, 10000);
  const std::vector<Profile> pool{worked_multi_instance()};
  const auto det = ratio_search(det_multi_mechanism(), Objective::kMaxisum, multi_sampler(),
                                n, stream(cfg, 71), pool, cfg.workers);
  const auto rnd = ratio_search(rand_multi_canonical_mechanism(), Objective::kMaxisum,
                                multi_sampler(), n, stream(cfg, 72), pool, cfg.workers);
  const auto audit = monotonicity_audit_72(canonical_p, n, stream(cfg, 73));
  const double det_worked =
      evaluate_ratio(det_multi_mechanism(), Objective::kMaxisum, pool[0]).ratio;
  const double rnd_worked =
      evaluate_ratio(rand_multi_canonical_mechanism(), Objective::kMaxisum, pool[0]).ratio;
  const double rnd_closed = 3.5 / (8.5 / 3.0);
  CriterionResult r;
  r.name = "C7 multi-location bounds";
  r.passed = det.worst_ratio <= 3.0 + kBound && rnd.worst_ratio <= 1.5 + kBound &&
             audit.empty() && std::abs(det_worked - 1.4) <= kBound &&
             std::abs(rnd_worked - rnd_closed) <= kBound;
  r.summary = "det-multi worst=" + fmt12(det.worst_ratio) +
              " rand-multi-canonical worst=" + fmt12(rnd.worst_ratio) +
              " audit violations=" + std::to_string(audit.size()) +
              " worked=" + fmt12(det_worked) + "," + fmt12(rnd_worked);
  r.details = {{"det_multi", to_json(det)},
               {"rand_multi_canonical", to_json(rnd)},
               {"audit_samples", n},
               {"audit_violations", audit.size()},
               {"worked_det_multi", det_worked},
               {"worked_rand_multi_canonical", rnd_worked}};
  if (!audit.empty()) r.details["audit_violation"] = to_json(audit.front());
  return r;
}

inline CriterionResult c8_certificates() {
  const double c = 23.0 / 13.0;
  const Mechanism mech = rand_hybrid_mechanism();
  const CertificateReport c61 = certificate_61(mech, c);
  const Thm62Instance inst = gen_thm62(10.0, 0.1);
  const OptResult egal = opt_egalitarian(inst.x);
  const CertificateReport c62 = certificate_62(mech, 10.0, 0.1, c);
  const double p_bound = c62.measurement("p_bound");
  CriterionResult r;
  r.name = "C8 lower-bound certificates";
  r.passed = c61.sp_holds && c61.consistent && inst.x.n() == 224 &&
             std::abs(egal.value - 0.5) <= kBound &&
             std::abs(p_bound - 100.0 / 207.0) <= kBound;
  r.summary = "61: sp=" + std::string(c61.sp_holds ? "holds" : "fails") + " verdict=" +
              c61.verdict + "; 62: n=" + std::to_string(inst.x.n()) + " OPT=" +
              fmt12(egal.value) + " p_bound=" + fmt12(p_bound) + " verdict=" + c62.verdict;
  r.details = {{"certificate_61", to_json(c61)},
               {"thm62_n", inst.x.n()},
               {"thm62_opt_egalitarian", egal.value},
               {"thm62_opt_location", egal.location},
               {"certificate_62", to_json(c62)}};
  return r;
}

inline CriterionResult c9_oracle_cross_check(const AcceptanceConfig& cfg) {
  const std::size_t n = count(cfg, 1000);
  const double resolution = 1e-4;
  const std::uint64_t seed = stream(cfg, 9);
  const RandomProfileSampler sampler = hybrid_sampler();
  struct Chunk {
    double worst_gap = 0.0;
    std::size_t below_grid = 0;
    std::optional<std::size_t> first_bad;
  };
  std::vector<Chunk> chunks(detail::resolve_workers(cfg.workers, n));
  detail::parallel_chunks(n, static_cast<unsigned>(chunks.size()),
                          [&](std::size_t begin, std::size_t end, unsigned w) {
                            for (std::size_t i = begin; i < end; ++i) {
                              const Profile p = sampler(instance_seed(seed, i));
                              for (Objective o : {Objective::kMaxisum, Objective::kEgalitarian}) {
                                const double exact = opt(p, o).value;
                                const double grid = grid_oracle(p, o, resolution).value;
                                const double gap = exact - grid;
                                chunks[w].worst_gap = std::max(chunks[w].worst_gap, std::abs(gap));
                                // Flat maxisum stretches differ by a few ulps depending on y.
                                if (gap < -kExact || std::abs(gap) > 2e-4) {
                                  ++chunks[w].below_grid;
                                  if (!chunks[w].first_bad) chunks[w].first_bad = i;
                                }
                              }
                            }
                          });
  Chunk all;
  for (const auto& c : chunks) {
    all.worst_gap = std::max(all.worst_gap, c.worst_gap);
    all.below_grid += c.below_grid;
    if (c.first_bad && !all.first_bad) all.first_bad = c.first_bad;
  }
  CriterionResult r;
  r.name = "C9 exact oracle agrees with grid oracle";
  r.passed = all.below_grid == 0 && all.worst_gap <= 2e-4;
  r.summary = std::to_string(n) + " instances x 2 objectives; max |exact-grid|=" +
              fmt12(all.worst_gap) + " disagreements=" + std::to_string(all.below_grid);
  r.details = {{"instances", n}, {"resolution", resolution}, {"max_gap", all.worst_gap},
               {"disagreements", all.below_grid}};
  if (all.first_bad) {
    r.details["first_disagreement"] =
        profile_to_json(sampler(instance_seed(seed, *all.first_bad)));
  }
  return r;
}

}  // namespace acceptance

// Sorted by criterion name.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {}) {
  std::vector<CriterionResult> out{
      acceptance::c1_tightness(),         acceptance::c2_det_hybrid_bound(cfg),
      acceptance::c3_rand_hybrid_bound(cfg), acceptance::c4_strategyproofness(cfg),
      acceptance::c5_characterization(cfg), acceptance::c6_egalitarian_unbounded(),
      acceptance::c7_multi_location(cfg),  acceptance::c8_certificates(),
      acceptance::c9_oracle_cross_check(cfg)};
  std::sort(out.begin(), out.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.name < b.name; });
  return out;
}

}  // namespace facmech

#endif  // FACMECH_ACCEPTANCE_HPP_
