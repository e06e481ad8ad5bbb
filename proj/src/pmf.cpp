#include "remr/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "remr/errors.hpp"

namespace remr {

Pmf::Pmf(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw ScenarioError(ScenarioErrorKind::schema, "distribution has no levels");
  }
  std::sort(entries_.begin(), entries_.end());
  double total = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto [level, p] = entries_[i];
    if (level < 0) {
      throw ScenarioError(ScenarioErrorKind::schema,
                          "negative capacity level " + std::to_string(level));
    }
    if (i > 0 && entries_[i - 1].first == level) {
      throw ScenarioError(ScenarioErrorKind::schema,
                          "repeated capacity level " + std::to_string(level));
    }
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ScenarioError(ScenarioErrorKind::schema,
                          "invalid probability at level " + std::to_string(level));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw ScenarioError(ScenarioErrorKind::pmf_sum,
                        "probabilities sum to " + std::to_string(total) + ", expected 1");
  }

  const int top = max_level();
  tail_.assign(static_cast<std::size_t>(top) + 2, 0.0);
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first <= top) tail_[static_cast<std::size_t>(it->first)] += it->second;
  }
  for (int k = top - 1; k >= 0; --k) {
    tail_[static_cast<std::size_t>(k)] += tail_[static_cast<std::size_t>(k) + 1];
  }
  // survival(0) is exactly 1; rounding in the sums must not exceed it
  for (auto& t : tail_) t = std::min(t, 1.0);
}

Pmf Pmf::degenerate(int level) { return Pmf({{level, 1.0}}); }

std::vector<int> Pmf::support() const {
  std::vector<int> out;
  for (const auto& [level, p] : entries_) {
    if (p > 0.0) out.push_back(level);
  }
  return out;
}

double Pmf::probability(int level) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{level, -1.0});
  return (it != entries_.end() && it->first == level) ? it->second : 0.0;
}

double Pmf::survival(int level) const noexcept {
  if (level <= 0) return entries_.empty() ? 0.0 : 1.0;
  const auto k = static_cast<std::size_t>(level);
  return k < tail_.size() ? tail_[k] : 0.0;
}

int Pmf::max_level() const noexcept {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->second > 0.0) return it->first;
  }
  return 0;
}

}  // namespace remr
