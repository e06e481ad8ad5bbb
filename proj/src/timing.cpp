#include "remr/timing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace remr {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double transfer_seconds(double load, int bandwidth) noexcept {
  if (load <= 0.0) return 0.0;
  if (bandwidth <= 0) return kInfinity;
  return std::ceil(load / bandwidth - kTimeTolerance);
}

double compute_seconds(double load, int resource) noexcept {
  if (resource <= 0) return kInfinity;
  return load / resource;
}

}  // namespace

std::vector<int> StateVector::joined() const {
  std::vector<int> out(x);
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

StateVector StateVector::split(std::span<const int> joined, std::size_t x_dim) {
  const auto mid = joined.begin() + static_cast<std::ptrdiff_t>(x_dim);
  return StateVector{{joined.begin(), mid}, {mid, joined.end()}};
}

double CompletionTime::total() const noexcept {
  return unbounded ? kInfinity : lead + transmission + computation;
}

bool CompletionTime::meets(double deadline) const noexcept {
  return !unbounded && total() <= deadline + kTimeTolerance;
}

StageSizes data_sizes(const ResolvedPlan& plan, double input_size) {
  StageSizes out;
  out.input = input_size;
  double current = input_size;
  for (std::size_t i = 0; i + 1 < plan.nodes.size(); ++i) {
    const NodeSpec& node = plan.nodes[i];
    if (node.computes()) current = node.output_override.value_or(current * node.ratio);
    out.sizes.push_back(current);
  }
  return out;
}

CompletionTime total_time(const ResolvedPlan& plan, double input_size, const StateVector& v) {
  if (v.x.size() != plan.x_dim() || v.y.size() != plan.y_dim()) {
    throw std::invalid_argument("state vector is " + std::to_string(v.x.size()) + "+" +
                                std::to_string(v.y.size()) + " components, plan '" + plan.name +
                                "' needs " + std::to_string(plan.x_dim()) + "+" +
                                std::to_string(plan.y_dim()));
  }
  const StageSizes sizes = data_sizes(plan, input_size);
  CompletionTime t;
  t.lead = plan.lead_time_sum();
  for (std::size_t i = 0; i < plan.x_dim(); ++i) {
    const double s = transfer_seconds(sizes.sizes[i], v.x[i]);
    if (std::isinf(s)) t.unbounded = true; else t.transmission += s;
  }
  for (std::size_t j = 0; j < plan.y_dim(); ++j) {
    const double s = compute_seconds(sizes.input_of(plan.compute_positions[j]), v.y[j]);
    if (std::isinf(s)) t.unbounded = true; else t.computation += s;
  }
  return t;
}

PlanTimer::PlanTimer(const ResolvedPlan& plan, double input_size)
    : lead_(plan.lead_time_sum()), x_dim_(plan.x_dim()) {
  const StageSizes sizes = data_sizes(plan, input_size);
  loads_ = sizes.sizes;
  for (auto pos : plan.compute_positions) loads_.push_back(sizes.input_of(pos));
}

double PlanTimer::term(std::size_t k, int level) const noexcept {
  return k < x_dim_ ? transfer_seconds(loads_[k], level) : compute_seconds(loads_[k], level);
}

double PlanTimer::total(std::span<const int> joined) const noexcept {
  double t = lead_;
  for (std::size_t k = 0; k < loads_.size(); ++k) t += term(k, joined[k]);
  return t;
}

}  // namespace remr
