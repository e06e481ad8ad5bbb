#include "remr/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "remr/errors.hpp"

namespace remr {

using Json = nlohmann::ordered_json;

const char* to_string(ScenarioErrorKind kind) noexcept {
  switch (kind) {
    case ScenarioErrorKind::io: return "io";
    case ScenarioErrorKind::schema: return "schema";
    case ScenarioErrorKind::pmf_sum: return "pmf-sum";
    case ScenarioErrorKind::dangling_reference: return "dangling-reference";
    case ScenarioErrorKind::structure: return "structure";
  }
  return "unknown";
}

const char* to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::compute: return "compute";
    case NodeKind::transit: return "transit";
    case NodeKind::sink: return "sink";
  }
  return "unknown";
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw ScenarioError(ScenarioErrorKind::schema, what);
}

[[noreturn]] void structure_error(const std::string& what) {
  throw ScenarioError(ScenarioErrorKind::structure, what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + ": missing field '" + key + "'");
  return *it;
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where + ": expected a number");
  return j.get<double>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where + ": expected a string");
  return j.get<std::string>();
}

Pmf pmf_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where + ": expected an object of level -> probability");
  std::vector<Pmf::Entry> entries;
  for (const auto& [key, value] : j.items()) {
    int level = 0;
    const auto* first = key.data();
    const auto* last = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(first, last, level);
    if (ec != std::errc{} || ptr != last || key.empty()) {
      schema_error(where + ": level '" + key + "' is not an integer");
    }
    entries.emplace_back(level, as_number(value, where + "[" + key + "]"));
  }
  try {
    return Pmf(std::move(entries));
  } catch (const ScenarioError& e) {
    throw ScenarioError(e.kind(), where + ": " + e.what());
  }
}

Json pmf_to_json(const Pmf& pmf) {
  Json j = Json::object();
  for (const auto& [level, p] : pmf.entries()) j[std::to_string(level)] = p;
  return j;
}

BranchSpec branch_from_json(const Json& j, std::size_t index) {
  std::string where = "branches[" + std::to_string(index) + "]";
  if (!j.is_object()) schema_error(where + ": expected an object");
  BranchSpec b;
  b.id = as_string(require(j, "id", where), where + ".id");
  where = "branch '" + b.id + "'";
  b.lead_time = as_number(require(j, "lead_time", where), where + ".lead_time");
  b.bandwidth = pmf_from_json(require(j, "bandwidth", where), where + ".bandwidth");
  return b;
}

NodeSpec node_from_json(const Json& j, std::size_t index) {
  std::string where = "nodes[" + std::to_string(index) + "]";
  if (!j.is_object()) schema_error(where + ": expected an object");
  NodeSpec n;
  n.id = as_string(require(j, "id", where), where + ".id");
  where = "node '" + n.id + "'";
  const std::string kind = as_string(require(j, "kind", where), where + ".kind");
  if (kind == "compute") {
    n.kind = NodeKind::compute;
    n.ratio = as_number(require(j, "ratio", where), where + ".ratio");
    n.resource = pmf_from_json(require(j, "resource", where), where + ".resource");
    if (auto it = j.find("output_override"); it != j.end()) {
      n.output_override = as_number(*it, where + ".output_override");
    }
  } else if (kind == "transit" || kind == "sink") {
    n.kind = kind == "transit" ? NodeKind::transit : NodeKind::sink;
    for (const char* key : {"ratio", "resource", "output_override"}) {
      if (j.contains(key)) schema_error(where + ": " + kind + " node cannot carry '" + key + "'");
    }
  } else {
    schema_error(where + ": unknown kind '" + kind + "'");
  }
  return n;
}

DeploymentPlan plan_from_json(const Json& j, std::size_t index) {
  std::string where = "plans[" + std::to_string(index) + "]";
  if (!j.is_object()) schema_error(where + ": expected an object");
  DeploymentPlan p;
  p.name = as_string(require(j, "name", where), where + ".name");
  where = "plan '" + p.name + "'";
  const Json& path = require(j, "path", where);
  if (!path.is_array()) schema_error(where + ".path: expected an array");
  for (std::size_t i = 0; i < path.size(); ++i) {
    p.path.push_back(as_string(path[i], where + ".path[" + std::to_string(i) + "]"));
  }
  return p;
}

}  // namespace

std::vector<Pmf> ResolvedPlan::marginals() const {
  std::vector<Pmf> out;
  out.reserve(dim());
  for (const auto& b : branches) out.push_back(b.bandwidth);
  for (auto pos : compute_positions) out.push_back(nodes[pos].resource);
  return out;
}

double ResolvedPlan::lead_time_sum() const noexcept {
  double sum = 0.0;
  for (const auto& b : branches) sum += b.lead_time;
  return sum;
}

Scenario::Scenario(std::vector<BranchSpec> branches, std::vector<NodeSpec> nodes,
                   std::vector<DeploymentPlan> plans, ScenarioDefaults defaults)
    : branches_(std::move(branches)),
      nodes_(std::move(nodes)),
      plans_(std::move(plans)),
      defaults_(defaults) {
  validate();
}

void Scenario::validate() const {
  std::set<std::string, std::less<>> ids;
  auto claim = [&](const std::string& id, const char* what) {
    if (id.empty()) schema_error(std::string(what) + " with empty id");
    if (!ids.insert(id).second) schema_error("duplicate id '" + id + "'");
  };

  for (const auto& b : branches_) {
    claim(b.id, "branch");
    if (!(b.lead_time >= 0.0) || !std::isfinite(b.lead_time)) {
      schema_error("branch '" + b.id + "': lead_time must be a non-negative number");
    }
    if (b.bandwidth.empty()) schema_error("branch '" + b.id + "': missing bandwidth distribution");
  }
  for (const auto& n : nodes_) {
    claim(n.id, "node");
    if (n.computes()) {
      if (!(n.ratio > 0.0) || !std::isfinite(n.ratio)) {
        schema_error("node '" + n.id + "': ratio must be positive");
      }
      if (n.resource.empty()) schema_error("node '" + n.id + "': missing resource distribution");
      if (n.output_override && !(*n.output_override >= 0.0)) {
        schema_error("node '" + n.id + "': output_override must be non-negative");
      }
    } else if (!n.resource.empty() || n.output_override || n.ratio != 1.0) {
      schema_error("node '" + n.id + "': " + to_string(n.kind) +
                   " node cannot carry ratio or resource");
    }
  }

  if (plans_.empty()) schema_error("scenario defines no plans");
  std::set<std::string, std::less<>> names;
  for (const auto& plan : plans_) {
    if (plan.name.empty()) schema_error("plan with empty name");
    if (!names.insert(plan.name).second) schema_error("duplicate plan name '" + plan.name + "'");
    resolve(plan);
  }

  if (defaults_.input_size && !(*defaults_.input_size > 0.0)) {
    schema_error("defaults.input_size must be positive");
  }
  if (defaults_.deadline && !(*defaults_.deadline > 0.0)) {
    schema_error("defaults.deadline must be positive");
  }
}

const BranchSpec* Scenario::find_branch(std::string_view id) const noexcept {
  for (const auto& b : branches_) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

const NodeSpec* Scenario::find_node(std::string_view id) const noexcept {
  for (const auto& n : nodes_) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const DeploymentPlan* Scenario::find_plan(std::string_view name) const noexcept {
  for (const auto& p : plans_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

ResolvedPlan Scenario::resolve(const DeploymentPlan& plan) const {
  const std::string where = "plan '" + plan.name + "'";
  const auto& path = plan.path;
  if (path.size() < 3 || path.size() % 2 == 0) {
    structure_error(where + ": path must be node, branch, node, ... with at least one branch");
  }

  ResolvedPlan out;
  out.name = plan.name;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const std::string& id = path[i];
    const bool want_node = i % 2 == 0;
    const NodeSpec* node = find_node(id);
    const BranchSpec* branch = find_branch(id);
    if (node == nullptr && branch == nullptr) {
      throw ScenarioError(ScenarioErrorKind::dangling_reference,
                          where + ": unknown id '" + id + "'");
    }
    if (want_node && node == nullptr) {
      structure_error(where + ": expected a node at position " + std::to_string(i) + ", found branch '" +
                      id + "'");
    }
    if (!want_node && branch == nullptr) {
      structure_error(where + ": expected a branch at position " + std::to_string(i) +
                      ", found node '" + id + "'");
    }
    if (want_node) {
      const bool last = i + 1 == path.size();
      if (last && node->kind != NodeKind::sink) {
        structure_error(where + ": path must end at a sink, '" + id + "' is " + to_string(node->kind));
      }
      if (!last && node->kind == NodeKind::sink) {
        structure_error(where + ": sink '" + id + "' appears before the end of the path");
      }
      if (node->computes()) out.compute_positions.push_back(out.nodes.size());
      out.nodes.push_back(*node);
    } else {
      out.branches.push_back(*branch);
    }
  }
  return out;
}

std::vector<ResolvedPlan> Scenario::resolved_plans() const {
  std::vector<ResolvedPlan> out;
  out.reserve(plans_.size());
  for (const auto& p : plans_) out.push_back(resolve(p));
  return out;
}

Scenario parse_scenario(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema_error(std::string("malformed document: ") + e.what());
  }
  if (!root.is_object()) schema_error("top level must be an object");

  auto array_at = [&](const char* key) -> const Json& {
    const Json& a = require(root, key, "scenario");
    if (!a.is_array()) schema_error(std::string("'") + key + "' must be an array");
    return a;
  };

  std::vector<BranchSpec> branches;
  const Json& jb = array_at("branches");
  for (std::size_t i = 0; i < jb.size(); ++i) branches.push_back(branch_from_json(jb[i], i));

  std::vector<NodeSpec> nodes;
  const Json& jn = array_at("nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) nodes.push_back(node_from_json(jn[i], i));

  std::vector<DeploymentPlan> plans;
  const Json& jp = array_at("plans");
  for (std::size_t i = 0; i < jp.size(); ++i) plans.push_back(plan_from_json(jp[i], i));

  ScenarioDefaults defaults;
  if (auto it = root.find("defaults"); it != root.end()) {
    if (!it->is_object()) schema_error("'defaults' must be an object");
    if (auto c = it->find("input_size"); c != it->end()) {
      defaults.input_size = as_number(*c, "defaults.input_size");
    }
    if (auto t = it->find("deadline"); t != it->end()) {
      defaults.deadline = as_number(*t, "defaults.deadline");
    }
  }

  return Scenario(std::move(branches), std::move(nodes), std::move(plans), defaults);
}

std::string render_scenario(const Scenario& scenario) {
  Json root = Json::object();
  Json& branches = root["branches"] = Json::array();
  for (const auto& b : scenario.branches()) {
    branches.push_back({{"id", b.id}, {"lead_time", b.lead_time}, {"bandwidth", pmf_to_json(b.bandwidth)}});
  }
  Json& nodes = root["nodes"] = Json::array();
  for (const auto& n : scenario.nodes()) {
    Json j = {{"id", n.id}, {"kind", to_string(n.kind)}};
    if (n.computes()) {
      j["ratio"] = n.ratio;
      j["resource"] = pmf_to_json(n.resource);
      if (n.output_override) j["output_override"] = *n.output_override;
    }
    nodes.push_back(std::move(j));
  }
  Json& plans = root["plans"] = Json::array();
  for (const auto& p : scenario.plans()) plans.push_back({{"name", p.name}, {"path", p.path}});

  const auto& d = scenario.defaults();
  if (d.input_size || d.deadline) {
    Json defaults = Json::object();
    if (d.input_size) defaults["input_size"] = *d.input_size;
    if (d.deadline) defaults["deadline"] = *d.deadline;
    root["defaults"] = std::move(defaults);
  }
  return root.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError(ScenarioErrorKind::io, "cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Pmf parse_pmf(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema_error(std::string("malformed distribution: ") + e.what());
  }
  return pmf_from_json(j, "distribution");
}

std::string render_pmf(const Pmf& pmf) { return pmf_to_json(pmf).dump(); }

}  // namespace remr
