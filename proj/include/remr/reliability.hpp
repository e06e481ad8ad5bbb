#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "remr/pathset.hpp"
#include "remr/pmf.hpp"
#include "remr/scenario.hpp"
#include "remr/timing.hpp"

namespace remr {

/// Largest MSV count accepted by the inclusion-exclusion oracle (2^m terms).
inline constexpr std::size_t kInclusionExclusionLimit = 25;

/// Pr(realized state >= d) for independent marginals: the product of the
/// component survival probabilities.
double event_probability(std::span<const int> joined, std::span<const Pmf> marginals);
double event_probability(const StateVector& v, const ResolvedPlan& plan);

/// Probability of the union of the dominance events {state >= d_j} by
/// recursive sum of disjoint products:
///   R({}) = 0
///   R(d_1..d_m) = R(d_1..d_{m-1}) + P(d_m) - R(min{d_j v d_m : j < m})
/// with v the componentwise max and min the minimal-element filter. Sub-results
/// are memoized on the canonical vector set for the duration of one call.
double rsdp_reliability(std::span<const std::vector<int>> vectors, std::span<const Pmf> marginals);
double rsdp_reliability(const MsvSet& msvs, const ResolvedPlan& plan);

/// Independent oracle: sums the point probability of every joint state, over
/// positive-probability levels, that meets the deadline. Uses compensated
/// summation in canonical order. Throws GuardExceeded when the joint state
/// space is larger than `guard`.
double exact_reliability(const ResolvedPlan& plan, double input_size, double deadline,
                         std::uint64_t guard = kDefaultSearchGuard);

/// Second oracle: sum over non-empty subsets S of (-1)^{|S|+1} P(v S).
/// Throws GuardExceeded when more than kInclusionExclusionLimit vectors.
double inclusion_exclusion_reliability(std::span<const std::vector<int>> vectors,
                                       std::span<const Pmf> marginals);
double inclusion_exclusion_reliability(const MsvSet& msvs, const ResolvedPlan& plan);

/// Reliability of independent alternatives,
///   R = R_1 + R_2 (1 - R_1) + R_3 (1 - R_1)(1 - R_2) + ...
/// Cross-checked against 1 - prod(1 - R_k); a mismatch beyond 1e-12 throws
/// std::logic_error.
double union_reliability(std::span<const double> per_plan);

enum class Method { rsdp, exact, inclusion_exclusion, monte_carlo };

const char* to_string(Method method) noexcept;

struct PlanReliability {
  std::string name;
  std::size_t feasible_count = 0;
  std::size_t msv_count = 0;
  double reliability = 0.0;
  MsvSet msvs;
};

struct ReliabilityReport {
  std::vector<PlanReliability> per_plan;
  double global = 0.0;
  double input_size = 0.0;
  double deadline = 0.0;
  Method method = Method::rsdp;
  /// Named oracle values and deltas, filled when cross-checked.
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// Feasible set, MSV reduction, and RSDP for one plan.
PlanReliability evaluate_plan(const ResolvedPlan& plan, double input_size, double deadline,
                              std::uint64_t guard = kDefaultSearchGuard);

/// Every plan of the scenario plus the union across plans.
ReliabilityReport evaluate(const Scenario& scenario, double input_size, double deadline,
                           std::uint64_t guard = kDefaultSearchGuard);

}  // namespace remr
