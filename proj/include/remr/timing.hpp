#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "remr/scenario.hpp"

namespace remr {

/// Slack allowed when comparing a completion time against a deadline, and
/// when rounding a transfer time up to whole seconds.
inline constexpr double kTimeTolerance = 1e-9;

/// One joint capacity assignment for a plan: a bandwidth level per branch and
/// a resource level per compute node, both in plan order. Ordering is
/// lexicographic over the concatenation (x, y).
struct StateVector {
  std::vector<int> x;
  std::vector<int> y;

  std::vector<int> joined() const;
  static StateVector split(std::span<const int> joined, std::size_t x_dim);

  friend bool operator==(const StateVector&, const StateVector&) = default;
  friend auto operator<=>(const StateVector&, const StateVector&) = default;
};

/// Data volumes along a plan. `sizes[i]` is the output of node i, which is
/// also the load carried by branch i + 1; the sink has no entry.
struct StageSizes {
  double input = 0.0;
  std::vector<double> sizes;

  /// Data entering node i (the plan input for node 0).
  double input_of(std::size_t node) const { return node == 0 ? input : sizes[node - 1]; }
};

struct CompletionTime {
  double lead = 0.0;
  double transmission = 0.0;
  double computation = 0.0;
  /// Set when a loaded branch or a compute node has zero capacity; the task
  /// never completes and `total()` is +infinity.
  bool unbounded = false;

  double total() const noexcept;
  bool meets(double deadline) const noexcept;
};

StageSizes data_sizes(const ResolvedPlan& plan, double input_size);

/// Throws std::invalid_argument when `v` is not dimensioned to the plan.
CompletionTime total_time(const ResolvedPlan& plan, double input_size, const StateVector& v);

/// Precomputed completion-time evaluator over joined state vectors. Used by
/// the enumeration and sampling loops, where StateVector allocation would
/// dominate.
class PlanTimer {
 public:
  PlanTimer(const ResolvedPlan& plan, double input_size);

  std::size_t dim() const noexcept { return loads_.size(); }
  double lead() const noexcept { return lead_; }

  /// Time contributed by component k (branch or compute node, state-vector
  /// order) at capacity `level`; +infinity when the component stalls.
  double term(std::size_t k, int level) const noexcept;

  /// Total completion time of a joined state vector; +infinity if it stalls.
  double total(std::span<const int> joined) const noexcept;

 private:
  double lead_ = 0.0;
  std::size_t x_dim_ = 0;       // components below x_dim_ are branches (rounded up)
  std::vector<double> loads_;   // data per component
};

}  // namespace remr
