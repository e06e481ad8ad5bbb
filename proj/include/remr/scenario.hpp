#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remr/pmf.hpp"

namespace remr {

/// A link between two nodes. Bandwidth levels are data-units per second,
/// lead time is a fixed per-branch store-and-forward cost in seconds.
struct BranchSpec {
  std::string id;
  double lead_time = 0.0;
  Pmf bandwidth;

  friend bool operator==(const BranchSpec&, const BranchSpec&) = default;
};

enum class NodeKind { compute, transit, sink };

const char* to_string(NodeKind kind) noexcept;

/// A device, edge server, or terminal. Only compute nodes carry a data-size
/// ratio (output / input) and an available-resource distribution.
struct NodeSpec {
  std::string id;
  NodeKind kind = NodeKind::transit;
  double ratio = 1.0;
  Pmf resource;
  /// Replaces the ratio-derived output size of a compute node.
  std::optional<double> output_override;

  bool computes() const noexcept { return kind == NodeKind::compute; }

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// node_0, branch_1, node_1, ..., branch_n, node_n by id.
struct DeploymentPlan {
  std::string name;
  std::vector<std::string> path;

  friend bool operator==(const DeploymentPlan&, const DeploymentPlan&) = default;
};

struct ScenarioDefaults {
  std::optional<double> input_size;
  std::optional<double> deadline;

  friend bool operator==(const ScenarioDefaults&, const ScenarioDefaults&) = default;
};

/// A plan with every id replaced by the definition it names. Self-contained copy,
/// so it stays valid independently of the Scenario it came from.
struct ResolvedPlan {
  std::string name;
  std::vector<NodeSpec> nodes;       // node_0 .. node_n
  std::vector<BranchSpec> branches;  // branch_1 .. branch_n
  std::vector<std::size_t> compute_positions;  // indices into `nodes`

  std::size_t x_dim() const noexcept { return branches.size(); }
  std::size_t y_dim() const noexcept { return compute_positions.size(); }
  std::size_t dim() const noexcept { return x_dim() + y_dim(); }

  /// Component distributions in state-vector order: branch bandwidths in
  /// plan order followed by compute-node resources in plan order.
  std::vector<Pmf> marginals() const;

  double lead_time_sum() const noexcept;
};

/// Immutable, fully validated scenario. Construction either succeeds or
/// throws ScenarioError; there is no partially valid state.
class Scenario {
 public:
  Scenario(std::vector<BranchSpec> branches, std::vector<NodeSpec> nodes,
           std::vector<DeploymentPlan> plans, ScenarioDefaults defaults = {});

  const std::vector<BranchSpec>& branches() const noexcept { return branches_; }
  const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
  const std::vector<DeploymentPlan>& plans() const noexcept { return plans_; }
  const ScenarioDefaults& defaults() const noexcept { return defaults_; }

  const BranchSpec* find_branch(std::string_view id) const noexcept;
  const NodeSpec* find_node(std::string_view id) const noexcept;
  const DeploymentPlan* find_plan(std::string_view name) const noexcept;

  ResolvedPlan resolve(const DeploymentPlan& plan) const;
  std::vector<ResolvedPlan> resolved_plans() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  void validate() const;

  std::vector<BranchSpec> branches_;
  std::vector<NodeSpec> nodes_;
  std::vector<DeploymentPlan> plans_;
  ScenarioDefaults defaults_;
};

/// Parses the JSON scenario dialect (top-level keys `branches`, `nodes`,
/// `plans`, optional `defaults`).
Scenario parse_scenario(std::string_view text);

/// Inverse of parse_scenario: parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);

/// Reads a Pmf from its `{"level": probability, ...}` object form.
Pmf parse_pmf(std::string_view text);
std::string render_pmf(const Pmf& pmf);

}  // namespace remr
