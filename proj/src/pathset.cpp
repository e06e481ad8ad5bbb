#include "remr/pathset.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "remr/errors.hpp"

namespace remr {

bool dominates(std::span<const int> a, std::span<const int> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

namespace {

class FeasibleSearch {
 public:
  FeasibleSearch(const ResolvedPlan& plan, double input_size, double deadline, std::uint64_t guard)
      : timer_(plan, input_size), deadline_(deadline + kTimeTolerance), guard_(guard) {
    for (const Pmf& m : plan.marginals()) levels_.push_back(m.support());
    // best_rest_[k]: time of components k.. at their top levels
    best_rest_.assign(levels_.size() + 1, 0.0);
    for (std::size_t k = levels_.size(); k-- > 0;) {
      best_rest_[k] = best_rest_[k + 1] + timer_.term(k, levels_[k].back());
    }
    current_.resize(levels_.size());
  }

  std::vector<std::vector<int>> run() {
    descend(0, timer_.lead());
    return std::move(found_);
  }

 private:
  void descend(std::size_t k, double elapsed) {
    if (k == levels_.size()) {
      found_.push_back(current_);
      return;
    }
    // Levels ascend and terms are antitone in level, so once one level's
    // optimistic bound fits the deadline every higher level fits too.
    bool fits = false;
    for (int level : levels_[k]) {
      if (++visited_ > guard_) {
        throw GuardExceeded("feasible-set search visited more than " + std::to_string(guard_) +
                            " states");
      }
      const double t = elapsed + timer_.term(k, level);
      if (!fits && !(t + best_rest_[k + 1] <= deadline_)) continue;
      fits = true;
      current_[k] = level;
      descend(k + 1, t);
    }
  }

  PlanTimer timer_;
  double deadline_;
  std::uint64_t guard_;
  std::uint64_t visited_ = 0;
  std::vector<std::vector<int>> levels_;
  std::vector<double> best_rest_;
  std::vector<int> current_;
  std::vector<std::vector<int>> found_;
};

}  // namespace

SolutionSet feasible_vectors(const ResolvedPlan& plan, double input_size, double deadline,
                             std::uint64_t guard) {
  SolutionSet out;
  out.plan = plan.name;
  out.x_dim = plan.x_dim();
  out.deadline = deadline;
  out.input_size = input_size;
  // Depth-first in ascending level order already yields canonical order.
  for (const auto& v : FeasibleSearch(plan, input_size, deadline, guard).run()) {
    out.vectors.push_back(StateVector::split(v, plan.x_dim()));
  }
  return out;
}

std::vector<std::vector<int>> minimal_elements(std::vector<std::vector<int>> vectors) {
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
  std::vector<std::vector<int>> out;
  for (const auto& v : vectors) {
    // In lexicographic order a dominating vector never precedes the vector
    // it dominates, so only earlier survivors can dominate-from-below.
    const bool dominated = std::any_of(out.begin(), out.end(),
                                       [&](const std::vector<int>& m) { return dominates(v, m); });
    if (!dominated) out.push_back(v);
  }
  return out;
}

MsvSet minimal_vectors(const SolutionSet& solutions) {
  std::vector<std::vector<int>> joined;
  joined.reserve(solutions.size());
  for (const auto& v : solutions.vectors) joined.push_back(v.joined());

  MsvSet out;
  out.plan = solutions.plan;
  out.x_dim = solutions.x_dim;
  out.deadline = solutions.deadline;
  out.input_size = solutions.input_size;
  for (const auto& v : minimal_elements(std::move(joined))) {
    out.vectors.push_back(StateVector::split(v, solutions.x_dim));
  }
  return out;
}

}  // namespace remr
