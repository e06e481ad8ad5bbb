#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "remr/scenario.hpp"
#include "remr/timing.hpp"

namespace remr {

/// Default cap on states visited by any exhaustive search.
inline constexpr std::uint64_t kDefaultSearchGuard = 100'000'000;

/// State vectors of one plan under fixed (input size, deadline), in
/// canonical (lexicographic) order.
struct VectorSet {
  std::string plan;
  std::size_t x_dim = 0;
  std::vector<StateVector> vectors;
  double deadline = 0.0;
  double input_size = 0.0;

  std::size_t size() const noexcept { return vectors.size(); }
  bool empty() const noexcept { return vectors.empty(); }
};

/// Every realizable state vector that meets the deadline.
struct SolutionSet : VectorSet {};

/// The minimal elements of a SolutionSet under componentwise <=.
struct MsvSet : VectorSet {};

/// True when a[i] >= b[i] for every i.
bool dominates(std::span<const int> a, std::span<const int> b) noexcept;

/// Implicit enumeration of the feasible set. Components are assigned in
/// state-vector order over positive-probability levels; a partial assignment
/// is abandoned as soon as its completion time, with every unassigned
/// component at its best level, already misses the deadline. Throws
/// GuardExceeded after `guard` visited states.
SolutionSet feasible_vectors(const ResolvedPlan& plan, double input_size, double deadline,
                             std::uint64_t guard = kDefaultSearchGuard);

/// Pairwise O(m^2) minimal-element filter; keeps canonical order.
MsvSet minimal_vectors(const SolutionSet& solutions);

/// Same filter over raw joined vectors. Duplicates collapse to one copy.
std::vector<std::vector<int>> minimal_elements(std::vector<std::vector<int>> vectors);

}  // namespace remr
