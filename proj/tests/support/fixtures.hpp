#pragma once

#include <string>

#include "remr/scenario.hpp"

namespace remr::fixtures {

inline std::string golden_path() { return std::string(REMR_SOURCE_DIR) + "/scenarios/remr-paper.scenario"; }
inline std::string data_path(const std::string& name) {
  return std::string(REMR_SOURCE_DIR) + "/scenarios/" + name;
}

inline const Scenario& golden() {
  static const Scenario s = load_scenario(golden_path());
  return s;
}

inline ResolvedPlan golden_plan(const std::string& name) {
  return golden().resolve(*golden().find_plan(name));
}

/// Resource distribution shared by every compute node of the bundled scenario.
inline Pmf table2_resource() {
  return Pmf({{1, 0.01}, {2, 0.09}, {3, 0.26}, {4, 0.37}, {5, 0.20}, {6, 0.07}});
}

/// One compute source feeding a sink over one branch.
inline Scenario single_stage(double ratio, double lead, Pmf bandwidth, Pmf resource) {
  return Scenario({BranchSpec{"b1", lead, std::move(bandwidth)}},
                  {NodeSpec{"src", NodeKind::compute, ratio, std::move(resource), {}},
                   NodeSpec{"sink", NodeKind::sink, 1.0, {}, {}}},
                  {DeploymentPlan{"p", {"src", "b1", "sink"}}});
}

}  // namespace remr::fixtures
