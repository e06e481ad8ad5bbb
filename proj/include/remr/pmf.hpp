#pragma once

#include <utility>
#include <vector>

namespace remr {

/// Tolerance used for every probability equality check.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Discrete probability mass function over non-negative integer capacity
/// levels. Entries are kept in ascending level order; zero-probability
/// entries are retained so a parsed file renders back unchanged.
class Pmf {
 public:
  using Entry = std::pair<int, double>;

  Pmf() = default;

  /// Validates and sorts `entries`. Throws ScenarioError (schema) on a
  /// negative or repeated level or a negative probability, and
  /// ScenarioError (pmf_sum) when the total is off by more than 1e-9.
  explicit Pmf(std::vector<Entry> entries);

  /// All mass on one level.
  static Pmf degenerate(int level);

  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Levels with positive probability, ascending.
  std::vector<int> support() const;

  double probability(int level) const noexcept;

  /// Pr(level >= k). Equals 1 for k <= 0 and 0 above the highest
  /// positive level.
  double survival(int level) const noexcept;

  /// Highest level with positive probability.
  int max_level() const noexcept;

  friend bool operator==(const Pmf& a, const Pmf& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
  std::vector<double> tail_;  // tail_[k] = Pr(level >= k), k in [0, max_level + 1]
};

inline double survival(const Pmf& pmf, int level) noexcept { return pmf.survival(level); }

}  // namespace remr
