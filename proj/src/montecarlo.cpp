#include "remr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace remr {

double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept {
  std::uint64_t z = seed + block * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

StateSampler::StateSampler(const ResolvedPlan& plan) {
  for (const Pmf& m : plan.marginals()) {
    std::vector<int> levels;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& [level, p] : m.entries()) {
      if (p <= 0.0) continue;
      acc += p;
      levels.push_back(level);
      cumulative.push_back(acc);
    }
    levels_.push_back(std::move(levels));
    cumulative_.push_back(std::move(cumulative));
  }
}

void StateSampler::sample(Rng& rng, std::span<int> joined) const noexcept {
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const double u = uniform01(rng);
    const auto& cum = cumulative_[k];
    std::size_t i = 0;
    // the last level absorbs any rounding shortfall in the cumulative sum
    while (i + 1 < cum.size() && !(u < cum[i])) ++i;
    joined[k] = levels_[k][i];
  }
}

StateVector sample_state(const ResolvedPlan& plan, Rng& rng) {
  const StateSampler sampler(plan);
  std::vector<int> joined(sampler.dim());
  sampler.sample(rng, joined);
  return StateVector::split(joined, plan.x_dim());
}

double binomial_half_width(double p, std::uint64_t n, double z) noexcept {
  if (n == 0) return 0.0;
  return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace {

struct BlockCounts {
  std::uint64_t successes = 0;
  std::vector<std::uint64_t> per_plan;
};

struct PlanModel {
  StateSampler sampler;
  PlanTimer timer;
};

BlockCounts run_block(const std::vector<PlanModel>& plans, double limit, std::uint64_t seed,
                      std::uint64_t trials) {
  BlockCounts counts;
  counts.per_plan.assign(plans.size(), 0);
  Rng rng(seed);
  std::vector<std::vector<int>> states;
  for (const auto& p : plans) states.emplace_back(p.sampler.dim());

  for (std::uint64_t t = 0; t < trials; ++t) {
    bool any = false;
    for (std::size_t k = 0; k < plans.size(); ++k) {
      plans[k].sampler.sample(rng, states[k]);
      if (plans[k].timer.total(states[k]) <= limit) {
        ++counts.per_plan[k];
        any = true;
      }
    }
    if (any) ++counts.successes;
  }
  return counts;
}

}  // namespace

SimResult simulate(const Scenario& scenario, double input_size, double deadline,
                   const SimConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("simulation needs at least one trial");

  std::vector<PlanModel> plans;
  for (const auto& plan : scenario.resolved_plans()) {
    plans.push_back({StateSampler(plan), PlanTimer(plan, input_size)});
  }
  const double limit = deadline + kTimeTolerance;

  std::vector<BlockCounts> blocks(kSimulationBlocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < kSimulationBlocks; b = next++) {
      const std::uint64_t begin = config.trials * b / kSimulationBlocks;
      const std::uint64_t end = config.trials * (b + 1) / kSimulationBlocks;
      blocks[b] = run_block(plans, limit, block_seed(config.seed, b), end - begin);
    }
  };
  const unsigned workers =
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, kSimulationBlocks);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  SimResult result;
  result.trials = config.trials;
  result.seed = config.seed;
  std::vector<std::uint64_t> per_plan(plans.size(), 0);
  for (const auto& b : blocks) {
    result.successes += b.successes;
    for (std::size_t k = 0; k < plans.size(); ++k) per_plan[k] += b.per_plan[k];
  }
  const auto n = static_cast<double>(config.trials);
  result.estimate = static_cast<double>(result.successes) / n;
  result.half_width = binomial_half_width(result.estimate, config.trials, config.confidence_z);
  for (auto count : per_plan) {
    const double p = static_cast<double>(count) / n;
    result.per_plan_estimates.push_back(p);
    result.per_plan_half_widths.push_back(binomial_half_width(p, config.trials, config.confidence_z));
  }
  return result;
}

}  // namespace remr
