#include "remr/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "remr/errors.hpp"

namespace remr {

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::rsdp: return "rsdp";
    case Method::exact: return "exact";
    case Method::inclusion_exclusion: return "inclusion-exclusion";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

double event_probability(std::span<const int> joined, std::span<const Pmf> marginals) {
  double p = 1.0;
  for (std::size_t i = 0; i < joined.size(); ++i) p *= marginals[i].survival(joined[i]);
  return p;
}

double event_probability(const StateVector& v, const ResolvedPlan& plan) {
  if (v.x.size() != plan.x_dim() || v.y.size() != plan.y_dim()) {
    throw std::invalid_argument("state vector does not match plan '" + plan.name + "'");
  }
  const auto marginals = plan.marginals();
  return event_probability(v.joined(), marginals);
}

namespace {

using VectorList = std::vector<std::vector<int>>;

std::vector<int> join_max(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

class Rsdp {
 public:
  explicit Rsdp(std::span<const Pmf> marginals) : marginals_(marginals) {}

  // `set` must already be canonical (sorted antichain).
  double operator()(const VectorList& set) {
    if (set.empty()) return 0.0;
    if (set.size() == 1) return event_probability(set.front(), marginals_);
    if (auto it = memo_.find(set); it != memo_.end()) return it->second;

    double r = 0.0;
    VectorList joins;
    for (std::size_t m = 0; m < set.size(); ++m) {
      const double p = event_probability(set[m], marginals_);
      if (p == 0.0) continue;  // every intersection with it is null as well
      joins.clear();
      for (std::size_t j = 0; j < m; ++j) joins.push_back(join_max(set[j], set[m]));
      r += p - (*this)(minimal_elements(joins));
    }
    memo_.emplace(set, r);
    return r;
  }

 private:
  std::span<const Pmf> marginals_;
  std::map<VectorList, double> memo_;
};

VectorList joined_vectors(const MsvSet& msvs) {
  VectorList out;
  out.reserve(msvs.size());
  for (const auto& v : msvs.vectors) out.push_back(v.joined());
  return out;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

double rsdp_reliability(std::span<const std::vector<int>> vectors, std::span<const Pmf> marginals) {
  Rsdp rsdp(marginals);
  return rsdp(minimal_elements(VectorList(vectors.begin(), vectors.end())));
}

double rsdp_reliability(const MsvSet& msvs, const ResolvedPlan& plan) {
  const auto marginals = plan.marginals();
  return rsdp_reliability(joined_vectors(msvs), marginals);
}

double exact_reliability(const ResolvedPlan& plan, double input_size, double deadline,
                         std::uint64_t guard) {
  const auto marginals = plan.marginals();
  std::vector<std::vector<int>> levels;
  std::uint64_t space = 1;
  for (const Pmf& m : marginals) {
    levels.push_back(m.support());
    space *= levels.back().size();
    if (space > guard) {
      throw GuardExceeded("joint state space of plan '" + plan.name + "' exceeds " +
                          std::to_string(guard) + " states");
    }
  }

  const PlanTimer timer(plan, input_size);
  const double limit = deadline + kTimeTolerance;
  const std::size_t dim = levels.size();
  std::vector<std::size_t> index(dim, 0);
  std::vector<int> state(dim);
  CompensatedSum total;
  for (;;) {
    double p = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      state[k] = levels[k][index[k]];
      p *= marginals[k].probability(state[k]);
    }
    if (timer.total(state) <= limit) total.add(p);

    // odometer, last component fastest (canonical order)
    std::size_t k = dim;
    while (k > 0) {
      --k;
      if (++index[k] < levels[k].size()) break;
      index[k] = 0;
      if (k == 0) return total.value();
    }
    if (dim == 0) return total.value();
  }
}

double inclusion_exclusion_reliability(std::span<const std::vector<int>> vectors,
                                       std::span<const Pmf> marginals) {
  if (vectors.size() > kInclusionExclusionLimit) {
    throw GuardExceeded("inclusion-exclusion over " + std::to_string(vectors.size()) +
                        " vectors exceeds the limit of " + std::to_string(kInclusionExclusionLimit));
  }
  if (vectors.empty()) return 0.0;

  CompensatedSum total;
  // Depth-first over subsets, carrying the running join.
  auto visit = [&](auto&& self, std::size_t next, const std::vector<int>& join, int size) -> void {
    for (std::size_t i = next; i < vectors.size(); ++i) {
      std::vector<int> j = size == 0 ? vectors[i] : join_max(join, vectors[i]);
      const double p = event_probability(j, marginals);
      total.add((size % 2 == 0) ? p : -p);
      if (p > 0.0) self(self, i + 1, j, size + 1);
    }
  };
  visit(visit, 0, {}, 0);
  return total.value();
}

double inclusion_exclusion_reliability(const MsvSet& msvs, const ResolvedPlan& plan) {
  const auto marginals = plan.marginals();
  return inclusion_exclusion_reliability(joined_vectors(msvs), marginals);
}

double union_reliability(std::span<const double> per_plan) {
  double telescoped = 0.0;
  double all_fail = 1.0;
  for (double r : per_plan) {
    telescoped += r * all_fail;
    all_fail *= 1.0 - r;
  }
  const double product_form = 1.0 - all_fail;
  if (std::abs(telescoped - product_form) > 1e-12) {
    throw std::logic_error("union reliability forms disagree");
  }
  return telescoped;
}

PlanReliability evaluate_plan(const ResolvedPlan& plan, double input_size, double deadline,
                              std::uint64_t guard) {
  const SolutionSet solutions = feasible_vectors(plan, input_size, deadline, guard);
  PlanReliability out;
  out.name = plan.name;
  out.feasible_count = solutions.size();
  out.msvs = minimal_vectors(solutions);
  out.msv_count = out.msvs.size();
  out.reliability = rsdp_reliability(out.msvs, plan);
  return out;
}

ReliabilityReport evaluate(const Scenario& scenario, double input_size, double deadline,
                           std::uint64_t guard) {
  ReliabilityReport report;
  report.input_size = input_size;
  report.deadline = deadline;
  report.method = Method::rsdp;
  std::vector<double> values;
  for (const auto& plan : scenario.resolved_plans()) {
    report.per_plan.push_back(evaluate_plan(plan, input_size, deadline, guard));
    values.push_back(report.per_plan.back().reliability);
  }
  report.global = union_reliability(values);
  return report;
}

}  // namespace remr
