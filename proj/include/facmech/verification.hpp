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

// Checks run against black-box mechanisms:
//
//   sp_check                 single-agent deviation search (strategyproofness)
//   ratio_search             worst OPT / mechanism ratio over sampled profiles
//   reflection_form_check    one agent's sweep must be constant or a single
//                            high-to-low step exactly at the midpoint of the
//                            two outcomes
//   midpoint_property_check  exhaustive two-point-range midpoint condition on
//                            a location grid
//   certificate_61/62        replay the randomized lower-bound arguments with
//                            measured lotteries
//   monotonicity_audit_72    sampled monotonicity of a rand_multi p-rule
//
// None of these prove anything beyond the profiles they enumerate.

#ifndef FACMECH_VERIFICATION_HPP_
#define FACMECH_VERIFICATION_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facmech/detail/parallel.hpp"
#include "facmech/errors.hpp"
#include "facmech/instances.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/model.hpp"
#include "facmech/oracle.hpp"

namespace facmech {

inline constexpr double kSpTolerance = 1e-9;
inline constexpr double kDeviationDelta = 1e-6;

// ---------------------------------------------------------------------------
// Strategyproofness
// ---------------------------------------------------------------------------

struct DeviationWitness {
  std::size_t agent_index = 0;
  AgentReport true_report;
  AgentReport misreport;
  double truthful_benefit = 0.0;
  double deviating_benefit = 0.0;
  double gain = 0.0;
};

// Compares each agent's true expected benefit under the truthful profile with
// the same agent's true benefit after it alone switches to each candidate
// misreport. Misreports outside the mechanism's domain are not reports the
// agent could make and are skipped.
inline std::vector<DeviationWitness> sp_check(
    const Mechanism& mechanism, const Profile& profile,
    std::span<const std::vector<AgentReport>> deviation_sets,
    double tolerance = kSpTolerance) {
  if (deviation_sets.size() != profile.n()) {
    throw DomainError("sp_check needs one deviation set per agent");
  }
  const Interval& I = profile.interval();
  const Lottery truthful = mechanism(profile);
  std::vector<DeviationWitness> witnesses;
  for (std::size_t i = 0; i < profile.n(); ++i) {
    if (deviation_sets[i].empty()) {
      throw DomainError("sp_check: empty deviation set for agent " +
                        std::to_string(i));
    }
    const AgentReport& truth = profile.agent(i);
    const double honest = expected_benefit(truth, truthful, I);
    for (const AgentReport& lie : deviation_sets[i]) {
      for (double x : lie.locations()) I.require_contains(x, "misreported location");
      if (!mechanism.accepts_report(lie)) continue;
      const Lottery deviated = mechanism(profile.with_agent(i, lie));
      const double dishonest = expected_benefit(truth, deviated, I);
      if (dishonest - honest > tolerance) {
        witnesses.push_back({i, truth, lie, honest, dishonest, dishonest - honest});
      }
    }
  }
  return witnesses;
}

// Candidate misreports for one agent.
//   k = 1: every admissible type at lo, mid, hi, mid -+ 1e-6 and every
//          agent's truthful location.
//   k > 1: all-lo, all-hi, and the truthful vector with one coordinate moved
//          to each of lo, mid, hi. The agent's type and k are kept.
// Outcome-complete for the shipped mechanisms, which only look at each
// report's type and side of the midpoint. Heuristic for anything else.
inline std::vector<AgentReport> default_deviation_set(const Profile& profile,
                                                      std::size_t agent_index,
                                                      DomainConstraint domain) {
  const Interval& I = profile.interval();
  const AgentReport& truth = profile.agent(agent_index);
  std::vector<AgentReport> out;
  if (truth.single()) {
    std::vector<double> spots{I.lo(), I.midpoint(), I.hi(),
                              I.midpoint() - kDeviationDelta,
                              I.midpoint() + kDeviationDelta};
    for (const auto& a : profile.agents()) {
      spots.insert(spots.end(), a.locations().begin(), a.locations().end());
    }
    std::erase_if(spots, [&](double y) { return !I.contains(y); });
    std::sort(spots.begin(), spots.end());
    spots.erase(std::unique(spots.begin(), spots.end()), spots.end());
    std::vector<AgentType> types{AgentType::kType1};
    if (domain == DomainConstraint::kHybridTypes) types.push_back(AgentType::kType2);
    for (AgentType t : types) {
      for (double y : spots) out.emplace_back(t, y);
    }
    return out;
  }
  const std::size_t k = truth.k();
  const std::vector<double> truthful(truth.locations().begin(),
                                     truth.locations().end());
  out.emplace_back(truth.type(), std::vector<double>(k, I.lo()));
  out.emplace_back(truth.type(), std::vector<double>(k, I.hi()));
  for (std::size_t j = 0; j < k; ++j) {
    for (double y : {I.lo(), I.midpoint(), I.hi()}) {
      std::vector<double> moved = truthful;
      moved[j] = y;
      out.emplace_back(truth.type(), std::move(moved));
    }
  }
  return out;
}

inline std::vector<std::vector<AgentReport>> default_deviation_sets(
    const Profile& profile, DomainConstraint domain) {
  std::vector<std::vector<AgentReport>> sets;
  sets.reserve(profile.n());
  for (std::size_t i = 0; i < profile.n(); ++i) {
    sets.push_back(default_deviation_set(profile, i, domain));
  }
  return sets;
}

inline std::vector<DeviationWitness> sp_check(const Mechanism& mechanism,
                                              const Profile& profile,
                                              double tolerance = kSpTolerance) {
  const auto sets = default_deviation_sets(profile, mechanism.domain());
  return sp_check(mechanism, profile, sets, tolerance);
}

// ---------------------------------------------------------------------------
// Approximation ratio
// ---------------------------------------------------------------------------

inline constexpr double kRatioZeroTolerance = 1e-12;

struct RatioEval {
  double opt_value = 0.0;
  double opt_location = 0.0;
  double mechanism_value = 0.0;
  double ratio = 1.0;
};

inline double benefit_ratio(double opt_value, double mechanism_value) {
  if (mechanism_value <= kRatioZeroTolerance) {
    return opt_value > kRatioZeroTolerance
               ? std::numeric_limits<double>::infinity()
               : 1.0;
  }
  return opt_value / mechanism_value;
}

inline RatioEval evaluate_ratio(const Mechanism& mechanism, Objective objective,
                                const Profile& profile) {
  const OptResult best = opt(profile, objective);
  const double got = expected_social_benefit(profile, mechanism(profile), objective);
  return {best.value, best.location, got, benefit_ratio(best.value, got)};
}

template <typename S>
concept ProfileSampler = requires(const S& s, std::uint64_t seed) {
  { s(seed) } -> std::convertible_to<Profile>;
};

// n uniform on [n_min, n_max], then random_profile with the given mix.
struct RandomProfileSampler {
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  double type_mix = 0.5;
  std::size_t k_max = 1;
  Interval interval = Interval::unit_pair();

  Profile operator()(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(n_min, n_max);
    const std::size_t n = size(rng);
    return random_profile(n, type_mix, k_max, interval, rng());
  }
};

struct RatioSearchResult {
  double worst_ratio = 0.0;
  std::optional<Profile> worst_instance;
  // Pool instances come first, then sampled instances in seed order.
  std::size_t worst_index = 0;
  std::size_t evaluated = 0;
  double worst_opt_value = 0.0;
  double worst_mechanism_value = 0.0;
};

// Max of OPT / E[sb] over `pool` plus `iterations` sampled profiles. Sample i
// is drawn from instance_seed(seed, i), so results do not depend on workers.
template <ProfileSampler Sampler>
RatioSearchResult ratio_search(const Mechanism& mechanism, Objective objective,
                               const Sampler& sampler, std::size_t iterations,
                               std::uint64_t seed,
                               std::span<const Profile> pool = {},
                               unsigned workers = 0) {
  if (iterations < 1) throw DomainError("ratio_search needs iterations >= 1");
  struct Best {
    double ratio = -1.0;
    std::size_t index = 0;
    RatioEval eval;
  };
  const std::size_t total = pool.size() + iterations;
  auto instance = [&](std::size_t idx) -> Profile {
    if (idx < pool.size()) return pool[idx];
    return sampler(instance_seed(seed, idx - pool.size()));
  };
  std::vector<Best> per_worker(detail::resolve_workers(workers, total));
  detail::parallel_chunks(total, static_cast<unsigned>(per_worker.size()),
                          [&](std::size_t begin, std::size_t end, unsigned w) {
                            Best local;
                            for (std::size_t idx = begin; idx < end; ++idx) {
                              const RatioEval e =
                                  evaluate_ratio(mechanism, objective, instance(idx));
                              if (e.ratio > local.ratio) local = {e.ratio, idx, e};
                            }
                            per_worker[w] = local;
                          });
  Best best;
  for (const Best& b : per_worker) {
    if (b.ratio > best.ratio || (b.ratio == best.ratio && b.index < best.index)) {
      best = b;
    }
  }
  RatioSearchResult out;
  out.worst_ratio = best.ratio;
  out.worst_index = best.index;
  out.worst_instance = instance(best.index);
  out.evaluated = total;
  out.worst_opt_value = best.eval.opt_value;
  out.worst_mechanism_value = best.eval.mechanism_value;
  return out;
}

// ---------------------------------------------------------------------------
// Single-agent sweeps
// ---------------------------------------------------------------------------

enum class ReflectionKind { kConstant, kStep, kViolation };

inline std::string_view to_string(ReflectionKind k) {
  switch (k) {
    case ReflectionKind::kConstant: return "constant";
    case ReflectionKind::kStep: return "step";
    case ReflectionKind::kViolation: return "violation";
  }
  return "?";
}

struct ReflectionForm {
  ReflectionKind kind = ReflectionKind::kConstant;
  double alpha = 0.0;
  double beta = 0.0;
  double reflection_point = 0.0;  // (alpha + beta) / 2 for a step
  double grid_resolution = 0.0;   // largest gap in the sweep grid
  // For a violation: two sweep points whose outcomes break the form.
  std::optional<std::pair<double, double>> offending_points;
  std::string note;
};

// Evenly spaced sweep over the interval with `steps` cells; both endpoints
// are hit exactly.
inline std::vector<double> uniform_grid(const Interval& I, std::size_t steps) {
  std::vector<double> g;
  g.reserve(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    g.push_back(j == steps ? I.hi()
                           : I.lo() + I.length() * static_cast<double>(j) /
                                          static_cast<double>(steps));
  }
  return g;
}

// Sweeps agent `agent_index` over `sweep_grid` with everyone else fixed as in
// `profile`. The agent's own location in `profile` is ignored. Classifies
// the outcome function a -> f(a) as constant, a step from beta (left) down to
// alpha (right) switching at (alpha + beta) / 2 within one grid cell, or a
// violation. Only as fine as the grid.
inline ReflectionForm reflection_form_check(const Mechanism& mechanism,
                                            const Profile& profile,
                                            std::size_t agent_index,
                                            std::span<const double> sweep_grid) {
  if (!mechanism.deterministic()) {
    throw UnsupportedError("reflection_form_check needs a deterministic mechanism");
  }
  const Interval& I = profile.interval();
  if (sweep_grid.size() < 2 || sweep_grid.front() != I.lo() ||
      sweep_grid.back() != I.hi() ||
      !std::is_sorted(sweep_grid.begin(), sweep_grid.end())) {
    throw DomainError("sweep grid must be sorted and span both endpoints");
  }
  const AgentReport& swept = profile.agent(agent_index);
  if (!swept.single()) {
    throw DomainError("reflection_form_check sweeps single-location agents");
  }
  ReflectionForm form;
  for (std::size_t j = 1; j < sweep_grid.size(); ++j) {
    form.grid_resolution =
        std::max(form.grid_resolution, sweep_grid[j] - sweep_grid[j - 1]);
  }
  std::vector<double> values;
  values.reserve(sweep_grid.size());
  for (double a : sweep_grid) {
    const Lottery out =
        mechanism(profile.with_agent(agent_index, AgentReport(swept.type(), a)));
    if (!out.is_point_mass()) {
      throw UnsupportedError("reflection_form_check got a randomized outcome");
    }
    values.push_back(out.point_location());
  }

  const double beta = values.front();
  std::size_t s = 0;
  while (s < values.size() && values[s] == beta) ++s;
  if (s == values.size()) {
    form.kind = ReflectionKind::kConstant;
    form.alpha = form.beta = form.reflection_point = beta;
    return form;
  }
  const double alpha = values[s];
  form.alpha = alpha;
  form.beta = beta;
  form.reflection_point = (alpha + beta) / 2.0;
  auto violation = [&](std::size_t i, std::size_t j, std::string note) {
    form.kind = ReflectionKind::kViolation;
    form.offending_points = std::make_pair(sweep_grid[i], sweep_grid[j]);
    form.note = std::move(note);
    return form;
  };
  for (std::size_t j = s + 1; j < values.size(); ++j) {
    if (values[j] != alpha) {
      return violation(s, j, "more than one switch along the sweep");
    }
  }
  if (!(beta > alpha)) {
    return violation(s - 1, s, "outcome increases along the sweep");
  }
  const double m = form.reflection_point;
  if (!(sweep_grid[s - 1] <= m && m <= sweep_grid[s])) {
    return violation(s - 1, s, "switch is not at the midpoint of the two outcomes");
  }
  form.kind = ReflectionKind::kStep;
  return form;
}

// ---------------------------------------------------------------------------
// Midpoint property on a grid (type-1 agents)
// ---------------------------------------------------------------------------

struct GridOptions {
  Interval interval = Interval::unit_pair();
  // Hard cap on (|grid|^n)^2 ordered profile pairs unless allow_large.
  std::size_t max_pairs = 1'000'000;
  bool allow_large = false;
};

struct MidpointCheckReport {
  bool passed = true;
  std::vector<double> range_points;
  double alpha = 0.0;
  double beta = 0.0;
  double midpoint = 0.0;
  std::size_t profiles = 0;
  std::size_t pairs_scanned = 0;
  // x with f(x) = beta, y with f(y) = alpha, and no agent crossing the
  // midpoint leftward from x to y.
  std::optional<ProfilePair> violating_pair;
  std::string failure;
};

namespace detail {

inline std::vector<Profile> grid_profiles(std::size_t n, std::span<const double> grid,
                                          const GridOptions& opts) {
  if (n < 1 || grid.empty()) throw DomainError("grid enumeration needs n >= 1 and a grid");
  double count = std::pow(static_cast<double>(grid.size()), static_cast<double>(n));
  if (!opts.allow_large && count * count > static_cast<double>(opts.max_pairs)) {
    throw DomainError("grid of " + std::to_string(grid.size()) + "^" +
                      std::to_string(n) +
                      " profiles exceeds the pair cap; set allow_large to override");
  }
  std::vector<Profile> out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    std::vector<AgentReport> agents;
    agents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      agents.emplace_back(AgentType::kType1, grid[digit[i]]);
    }
    out.emplace_back(opts.interval, std::move(agents));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < grid.size()) break;
      digit[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

}  // namespace detail

inline MidpointCheckReport midpoint_property_check(const Mechanism& mechanism,
                                                   std::size_t n,
                                                   std::span<const double> grid,
                                                   const GridOptions& opts = {}) {
  if (!mechanism.deterministic()) {
    throw UnsupportedError("midpoint_property_check needs a deterministic mechanism");
  }
  const std::vector<Profile> profiles = detail::grid_profiles(n, grid, opts);
  std::vector<double> outcome;
  outcome.reserve(profiles.size());
  std::set<double> range;
  for (const Profile& p : profiles) {
    outcome.push_back(mechanism(p).point_location());
    range.insert(outcome.back());
  }
  MidpointCheckReport report;
  report.profiles = profiles.size();
  report.range_points.assign(range.begin(), range.end());
  if (range.size() > 2) {
    report.passed = false;
    report.failure = "range has " + std::to_string(range.size()) +
                     " points; a strategyproof mechanism uses at most two";
    return report;
  }
  report.alpha = *range.begin();
  report.beta = *range.rbegin();
  report.midpoint = (report.alpha + report.beta) / 2.0;
  if (range.size() == 1) return report;

  const double m = report.midpoint;
  for (std::size_t xi = 0; xi < profiles.size(); ++xi) {
    if (outcome[xi] != report.beta) continue;
    for (std::size_t yi = 0; yi < profiles.size(); ++yi) {
      if (outcome[yi] != report.alpha) continue;
      ++report.pairs_scanned;
      bool crossed = false;
      for (std::size_t i = 0; i < n && !crossed; ++i) {
        const double xv = profiles[xi].agent(i).location();
        const double yv = profiles[yi].agent(i).location();
        // left -> middle, left -> right, middle -> right
        crossed = (xv < m && yv >= m) || (xv == m && yv > m);
      }
      if (!crossed) {
        report.passed = false;
        report.violating_pair = ProfilePair{profiles[xi], profiles[yi]};
        report.failure = "outcome moves from beta to alpha with no agent crossing the midpoint rightward";
        return report;
      }
    }
  }
  return report;
}

struct ProfileWitness {
  Profile profile;
  DeviationWitness witness;
};

// sp_check on every grid^n type-1 profile with every grid point as the
// misreport set.
inline std::vector<ProfileWitness> grid_sp_check(const Mechanism& mechanism,
                                                 std::size_t n,
                                                 std::span<const double> grid,
                                                 const GridOptions& opts = {},
                                                 double tolerance = kSpTolerance) {
  const std::vector<Profile> profiles = detail::grid_profiles(n, grid, opts);
  std::vector<AgentReport> lies;
  for (double g : grid) lies.emplace_back(AgentType::kType1, g);
  const std::vector<std::vector<AgentReport>> sets(n, lies);
  std::vector<ProfileWitness> out;
  for (const Profile& p : profiles) {
    for (auto& w : sp_check(mechanism, p, sets, tolerance)) {
      out.push_back({p, std::move(w)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lower-bound certificates
// ---------------------------------------------------------------------------

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

struct CertificateReport {
  std::string name;
  std::string mechanism;
  double claimed_c = 0.0;
  std::vector<std::pair<std::string, double>> measurements;
  std::vector<InequalityCheck> checks;
  bool sp_holds = true;
  bool consistent = true;
  std::string verdict;

  double measurement(std::string_view key) const {
    for (const auto& [k, v] : measurements) {
      if (k == key) return v;
    }
    throw std::out_of_range("no measurement named " + std::string(key));
  }
  const InequalityCheck& check(std::string_view key) const {
    for (const auto& c : checks) {
      if (c.name == key) return c;
    }
    throw std::out_of_range("no check named " + std::string(key));
  }
};

inline constexpr double kCertificateTolerance = 1e-9;

namespace detail {

// Location of Y in coordinates where the deviating agent sits on the left.
inline double reflect(double y, bool mirrored, const Interval& I) {
  return mirrored ? I.lo() + I.hi() - y : y;
}

}  // namespace detail

// Two type-1 agents on [0, 2] at 1 -+ a, a = 2*sqrt(3) - 3. The agent on the
// side the mechanism leans away from misreports its location as the nearby
// endpoint; the report measures the chain of bounds that forces this
// misreport to pay off whenever both ratios stay below 2/sqrt(3).
inline CertificateReport certificate_61(const Mechanism& mechanism, double claimed_c) {
  const double a = thm61_offset();
  const Interval I = Interval::unit_pair();
  const auto [x, y_left] = gen_thm61();
  const Lottery on_x = mechanism(x);
  const double x1 = 1.0 - a;
  const double x2 = 1.0 + a;
  double below = 0.0;
  double above = 0.0;
  for (const auto& o : on_x.support()) {
    if (o.location < x1) below += o.probability;
    if (o.location > x2) above += o.probability;
  }
  const bool mirrored = below < above;
  // Deviating agent index and its deviated profile.
  const std::size_t agent = mirrored ? 1 : 0;
  const Profile y =
      mirrored ? Profile(I, {AgentReport(AgentType::kType1, x1),
                             AgentReport(AgentType::kType1, I.hi())})
               : y_left;
  const Lottery on_y = mechanism(y);

  auto r = [&](double loc) { return detail::reflect(loc, mirrored, I); };
  const double dist_x = on_x.expectation([&](double t) { return std::abs(r(t) - x1); });
  const double dist_y = on_y.expectation([&](double t) { return std::abs(r(t) - x1); });
  double p = 0.0;
  double tail = 0.0;
  for (const auto& o : on_y.support()) {
    const double t = r(o.location);
    if (t > x2) {
      p += o.probability;
      tail += o.probability * (t - x2);
    }
  }
  const double b = p > 0.0 ? tail / p : 0.0;
  const double opt_x = opt_maxisum(x).value;
  const double opt_y = opt_maxisum(y).value;
  const double got_x = expected_social_benefit(x, on_x, Objective::kMaxisum);
  const double got_y = expected_social_benefit(y, on_y, Objective::kMaxisum);
  const double ratio_x = benefit_ratio(opt_x, got_x);
  const double ratio_y = benefit_ratio(opt_y, got_y);
  const double bp_bound = (3.0 - a) / (2.0 * claimed_c) - (1.0 + a) / 2.0;
  const double p_bound = bp_bound / (1.0 - a);
  const double chain_bound = (2.0 * a / (1.0 - a) + 1.0) * bp_bound;
  const double threshold_identity =
      (2.0 * a / (1.0 - a) + 1.0) * (std::sqrt(3.0) * (3.0 - a) / 4.0 - (1.0 + a) / 2.0);
  const double lower_bound_c = 2.0 / std::sqrt(3.0);
  const double tol = kCertificateTolerance;

  CertificateReport rep;
  rep.name = "randomized-maxisum-2-over-sqrt3";
  rep.mechanism = mechanism.name();
  rep.claimed_c = claimed_c;
  rep.measurements = {
      {"a", a},
      {"mirrored", mirrored ? 1.0 : 0.0},
      {"deviating_agent", static_cast<double>(agent)},
      {"p_below_x1_on_x", mirrored ? above : below},
      {"p_above_x2_on_x", mirrored ? below : above},
      {"expected_distance_on_x", dist_x},
      {"expected_distance_on_y", dist_y},
      {"p_above_y2_on_y", p},
      {"b_conditional_overshoot", b},
      {"bp", b * p},
      {"opt_x", opt_x},
      {"opt_y", opt_y},
      {"benefit_x", got_x},
      {"benefit_y", got_y},
      {"ratio_x", ratio_x},
      {"ratio_y", ratio_y},
      {"bp_bound", bp_bound},
      {"p_bound", p_bound},
      {"distance_chain_bound", chain_bound},
      {"threshold_identity", threshold_identity},
      {"lower_bound", lower_bound_c},
  };
  const bool ratio_y_ok = ratio_y <= claimed_c;
  rep.checks = {
      {"distance_on_x_at_most_1", dist_x, 1.0, dist_x <= 1.0 + tol},
      {"benefit_y_equals_1_plus_a_plus_2bp", got_y, 1.0 + a + 2.0 * b * p,
       std::abs(got_y - (1.0 + a + 2.0 * b * p)) <= tol},
      {"opt_y_equals_3_minus_a", opt_y, 3.0 - a, std::abs(opt_y - (3.0 - a)) <= tol},
      {"b_at_most_1_minus_a", b, 1.0 - a, b <= 1.0 - a + tol},
      {"ratio_y_within_c_implies_bp_bound", b * p, bp_bound,
       !ratio_y_ok || b * p >= bp_bound - tol},
      {"ratio_y_within_c_implies_p_bound", p, p_bound, !ratio_y_ok || p >= p_bound - tol},
      {"distance_on_y_at_least_2a_plus_b_times_p", dist_y, (2.0 * a + b) * p,
       dist_y >= (2.0 * a + b) * p - tol},
      {"ratio_y_within_c_implies_distance_chain", dist_y, chain_bound,
       !ratio_y_ok || dist_y >= chain_bound - tol},
      {"threshold_identity_equals_1", threshold_identity, 1.0,
       std::abs(threshold_identity - 1.0) <= 1e-12},
      {"strategyproof_misreport_to_endpoint", dist_y, dist_x, dist_y <= dist_x + tol},
  };
  rep.sp_holds = rep.checks.back().holds;
  bool derivations_hold = true;
  for (const auto& c : rep.checks) {
    if (c.name != "strategyproof_misreport_to_endpoint") {
      derivations_hold = derivations_hold && c.holds;
    }
  }
  const bool beats_bound =
      ratio_x < lower_bound_c && ratio_y < lower_bound_c && rep.sp_holds;
  rep.consistent = !beats_bound && derivations_hold;
  rep.verdict = rep.consistent ? "consistent" : "inconsistent";
  return rep;
}

// Egalitarian instance on [0, M+2]. Measures the probability p of an interior
// facility on x and p' on the spread-out profile x', checks the
// approximation-implied bounds on p and p', walks the chain of single-agent
// moves from x to x' checking that the moving agents never gain, and
// evaluates the final inequality that fails for large M when c < 3/2.
inline CertificateReport certificate_62(const Mechanism& mechanism, double M,
                                        double epsilon, double claimed_c) {
  if (!(claimed_c >= 1.0)) throw DomainError("certificate_62 needs c >= 1");
  Thm62Instance inst = gen_thm62(M, epsilon);
  const Interval I = inst.x.interval();
  Lottery on_x = mechanism(inst.x);
  {
    double low = 0.0;
    double high = 0.0;
    for (const auto& o : on_x.support()) {
      if (o.location < 1.0) low += o.probability;
      if (o.location > M + 1.0) high += o.probability;
    }
    if (low < high) inst = gen_thm62(M, epsilon, true);
  }
  const bool mirrored = inst.mirrored;
  auto r = [&](double loc) { return detail::reflect(loc, mirrored, I); };
  const Lottery on_xp = mechanism(inst.x_prime);

  double p = 0.0;
  double p_prime = 0.0;
  double low_mass = 0.0;
  for (const auto& o : on_x.support()) {
    const double t = r(o.location);
    if (t >= 1.0 && t <= M + 1.0) p += o.probability;
    if (t < 1.0) low_mass += o.probability;
  }
  for (const auto& o : on_xp.support()) {
    const double t = r(o.location);
    if (t <= M + 1.0) p_prime += o.probability;
  }
  const OptResult opt_x = opt_egalitarian(inst.x);
  const OptResult opt_xp = opt_egalitarian(inst.x_prime);
  const double got_x = expected_social_benefit(inst.x, on_x, Objective::kEgalitarian);
  const double got_xp =
      expected_social_benefit(inst.x_prime, on_xp, Objective::kEgalitarian);
  const double ratio_x = benefit_ratio(opt_x.value, got_x);
  const double ratio_xp = benefit_ratio(opt_xp.value, got_xp);
  const double shortfall = 0.5 * (1.0 - 1.0 / claimed_c);
  const double p_bound = shortfall / (0.5 - epsilon / 2.0);
  const double dist_x = on_x.expectation(r);
  const double dist_xp = on_xp.expectation(r);
  const double dist_x_upper =
      (1.0 - p) / 2.0 + p * (M + 1.0) + (1.0 - p) / 2.0 * (M + 2.0);
  const double dist_xp_lower = (1.0 - p_prime) * (M + 1.0);

  // Move the cluster agents from x to x' one at a time. Each mover truly sits
  // at the endpoint, so it gains iff the expected distance of the facility
  // from that endpoint grows.
  double worst_step_gain = -std::numeric_limits<double>::infinity();
  std::size_t chain_length = 0;
  {
    Profile cur = inst.x;
    double prev = dist_x;
    for (std::size_t idx : inst.moved_cluster) {
      const AgentReport& target = inst.x_prime.agent(idx);
      if (cur.agent(idx) == target) continue;
      cur = cur.with_agent(idx, target);
      const double next = mechanism(cur).expectation(r);
      worst_step_gain = std::max(worst_step_gain, next - prev);
      prev = next;
      ++chain_length;
    }
  }
  const bool sp_chain = chain_length == 0 || worst_step_gain <= kCertificateTolerance;

  const double combined_lhs = 0.5 + p_bound;
  const double combined_coeff = 0.5 - 1.5 * (1.0 - 1.0 / claimed_c) / (1.0 - epsilon);
  const double combined_rhs = combined_coeff * M;
  const double measured_lhs = (3.0 - p) / 2.0 + (1.0 + p) / 2.0 * M;
  const double measured_rhs = (1.0 - p_prime) * M + 1.0 - p_prime;
  const double tol = kCertificateTolerance;

  CertificateReport rep;
  rep.name = "randomized-egalitarian-3-over-2";
  rep.mechanism = mechanism.name();
  rep.claimed_c = claimed_c;
  rep.measurements = {
      {"M", M},
      {"epsilon", epsilon},
      {"n", static_cast<double>(inst.x.n())},
      {"mirrored", mirrored ? 1.0 : 0.0},
      {"opt_x_value", opt_x.value},
      {"opt_x_location", opt_x.location},
      {"opt_x_prime_value", opt_xp.value},
      {"benefit_x", got_x},
      {"benefit_x_prime", got_xp},
      {"ratio_x", ratio_x},
      {"ratio_x_prime", ratio_xp},
      {"p", p},
      {"p_prime", p_prime},
      {"mass_near_moved_endpoint_on_x", low_mass},
      {"p_bound", p_bound},
      {"expected_distance_on_x", dist_x},
      {"expected_distance_on_x_prime", dist_xp},
      {"chain_moves", static_cast<double>(chain_length)},
      {"chain_worst_step_gain", chain_length == 0 ? 0.0 : worst_step_gain},
      {"combined_lhs", combined_lhs},
      {"combined_rhs", combined_rhs},
  };
  const bool ratio_x_ok = ratio_x <= claimed_c;
  const bool ratio_xp_ok = ratio_xp <= claimed_c;
  rep.checks = {
      {"benefit_x_at_most_eps_p_plus_half_rest", got_x,
       epsilon / 2.0 * p + 0.5 * (1.0 - p),
       got_x <= epsilon / 2.0 * p + 0.5 * (1.0 - p) + tol},
      {"ratio_x_within_c_implies_p_bound", p, p_bound, !ratio_x_ok || p <= p_bound + tol},
      {"benefit_x_prime_at_most_eps_p_plus_half_rest", got_xp,
       epsilon / 2.0 * p_prime + 0.5 * (1.0 - p_prime),
       got_xp <= epsilon / 2.0 * p_prime + 0.5 * (1.0 - p_prime) + tol},
      {"ratio_x_prime_within_c_implies_p_bound", p_prime, p_bound,
       !ratio_xp_ok || p_prime <= p_bound + tol},
      {"distance_on_x_upper_bound", dist_x, dist_x_upper, dist_x <= dist_x_upper + tol},
      {"distance_on_x_prime_lower_bound", dist_xp, dist_xp_lower,
       dist_xp >= dist_xp_lower - tol},
      {"strategyproof_chain_implies_distance_order", dist_x, dist_xp,
       !sp_chain || dist_x >= dist_xp - tol},
      {"measured_inequality", measured_lhs, measured_rhs,
       !sp_chain || measured_lhs >= measured_rhs - tol},
      {"combined_inequality", combined_lhs, combined_rhs, combined_lhs >= combined_rhs},
      {"strategyproof_chain", chain_length == 0 ? 0.0 : worst_step_gain, tol, sp_chain},
  };
  rep.sp_holds = sp_chain;
  bool derivations_hold = true;
  for (const auto& c : rep.checks) {
    if (c.name == "combined_inequality" || c.name == "strategyproof_chain") continue;
    derivations_hold = derivations_hold && c.holds;
  }
  const bool premises = ratio_x_ok && ratio_xp_ok && sp_chain;
  rep.consistent = derivations_hold && !(premises && !rep.check("combined_inequality").holds);
  rep.verdict = rep.consistent ? "consistent" : "inconsistent";
  return rep;
}

// ---------------------------------------------------------------------------
// rand_multi p-rule audit
// ---------------------------------------------------------------------------

struct MonotonicityViolation {
  std::int64_t sum_right = 0;
  std::int64_t sum_left = 0;
  // "left+1" (p must not drop) or "right+1" (p must not rise).
  std::string step;
  double p_base = 0.0;
  double p_shifted = 0.0;
};

// Samples (sum_right, sum_left) uniformly from {0..max_sum}^2 minus (0, 0)
// and checks p(R, L+1) >= p(R, L) and p(R+1, L) <= p(R, L).
inline std::vector<MonotonicityViolation> monotonicity_audit_72(
    const PRule& p_rule, std::size_t samples, std::uint64_t seed,
    std::int64_t max_sum = 100) {
  if (samples < 1) throw DomainError("monotonicity_audit_72 needs samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, max_sum);
  std::vector<MonotonicityViolation> out;
  for (std::size_t s = 0; s < samples; ++s) {
    std::int64_t r = 0;
    std::int64_t l = 0;
    do {
      r = pick(rng);
      l = pick(rng);
    } while (r + l == 0);
    const double base = p_rule(r, l);
    const double more_left = p_rule(r, l + 1);
    const double more_right = p_rule(r + 1, l);
    if (more_left < base) out.push_back({r, l, "left+1", base, more_left});
    if (more_right > base) out.push_back({r, l, "right+1", base, more_right});
  }
  return out;
}

}  // namespace facmech

#endif  // FACMECH_VERIFICATION_HPP_
