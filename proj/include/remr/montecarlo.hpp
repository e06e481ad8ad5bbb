#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "remr/scenario.hpp"
#include "remr/timing.hpp"

namespace remr {

/// Seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20211016;

/// Trials are split into this many logical blocks, each with its own stream.
/// The split is fixed, so results do not depend on the worker count.
inline constexpr std::size_t kSimulationBlocks = 64;

/// 64-bit Mersenne Twister; its output sequence is fixed by the C++ standard.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng) noexcept;

/// Seed of logical block `block`: splitmix64 applied to seed + block.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept;

struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  double confidence_z = 3.0;
};

struct SimResult {
  double estimate = 0.0;
  double half_width = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t successes = 0;
  std::vector<double> per_plan_estimates;
  std::vector<double> per_plan_half_widths;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Draws plan states by inverse CDF over ascending levels. Zero-probability
/// levels are never produced.
class StateSampler {
 public:
  explicit StateSampler(const ResolvedPlan& plan);

  std::size_t dim() const noexcept { return levels_.size(); }
  void sample(Rng& rng, std::span<int> joined) const noexcept;

 private:
  std::vector<std::vector<int>> levels_;
  std::vector<std::vector<double>> cumulative_;
};

StateVector sample_state(const ResolvedPlan& plan, Rng& rng);

/// z * sqrt(p (1 - p) / n).
double binomial_half_width(double p, std::uint64_t n, double z) noexcept;

/// Samples one independent state per plan per trial; a trial succeeds when
/// any plan meets the deadline. Deterministic in (scenario, inputs, trials,
/// seed). Throws std::invalid_argument when trials == 0.
SimResult simulate(const Scenario& scenario, double input_size, double deadline,
                   const SimConfig& config);

}  // namespace remr
