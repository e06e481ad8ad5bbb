#include "remr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "remr/errors.hpp"
#include "remr/montecarlo.hpp"
#include "remr/reliability.hpp"
#include "remr/scenario.hpp"
#include "remr/trace.hpp"

namespace remr::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { table, csv, structured };

struct Invocation {
  std::string scenario_path;
  std::optional<double> input_size;
  std::optional<double> deadline;
  std::vector<double> sweep_c;
  std::vector<double> sweep_t;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t guard = kDefaultSearchGuard;
  bool cross_check = false;
  Format format = Format::table;
  std::string out_path;
  // ingest
  std::string trace_path;
  std::string machine;
  int levels = 6;
  double capacity = 6.0;
  bool google = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed5(double v) { return fmt::format("{:.5f}", v); }
std::string delta(double v) { return fmt::format("{:+.3e}", v); }

double resolve_input(const Invocation& inv, const Scenario& s) {
  if (inv.input_size) return *inv.input_size;
  if (s.defaults().input_size) return *s.defaults().input_size;
  throw UsageError("no --input-size given and the scenario has no defaults.input_size");
}

double resolve_deadline(const Invocation& inv, const Scenario& s) {
  if (inv.deadline) return *inv.deadline;
  if (s.defaults().deadline) return *s.defaults().deadline;
  throw UsageError("no --deadline given and the scenario has no defaults.deadline");
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) throw UsageError(fmt::format("{} must be positive", name));
}

Json msvs_to_json(const MsvSet& msvs) {
  Json arr = Json::array();
  for (const auto& v : msvs.vectors) arr.push_back({{"x", v.x}, {"y", v.y}});
  return arr;
}

Json sim_to_json(const SimResult& sim, const std::vector<PlanReliability>& plans) {
  Json j = {{"trials", sim.trials},
            {"seed", sim.seed},
            {"successes", sim.successes},
            {"estimate", sim.estimate},
            {"half_width", sim.half_width}};
  Json per = Json::array();
  for (std::size_t k = 0; k < sim.per_plan_estimates.size(); ++k) {
    per.push_back({{"name", plans[k].name},
                   {"estimate", sim.per_plan_estimates[k]},
                   {"half_width", sim.per_plan_half_widths[k]}});
  }
  j["per_plan"] = std::move(per);
  return j;
}

// ---- evaluate ------------------------------------------------------------

struct CrossCheck {
  std::vector<double> exact;
  SimResult sim;
};

std::string render_evaluate(const ReliabilityReport& r, const std::optional<CrossCheck>& cc,
                            Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::table: {
      os << fmt::format("input_size={} deadline={} method={}\n", r.input_size, r.deadline,
                        to_string(r.method));
      os << fmt::format("{:<12}{:>10}{:>8}{:>14}\n", "plan", "feasible", "msvs", "reliability");
      for (const auto& p : r.per_plan) {
        os << fmt::format("{:<12}{:>10}{:>8}{:>14}\n", p.name, p.feasible_count, p.msv_count,
                          fixed5(p.reliability));
      }
      os << fmt::format("{:<30}{:>14}\n", "global", fixed5(r.global));
      if (cc) {
        os << "\ncross-check\n";
        os << fmt::format("{:<12}{:>10}{:>10}{:>12}{:>10}{:>11}{:>12}\n", "plan", "rsdp", "exact",
                          "delta", "mc", "mc-hw", "mc-delta");
        for (std::size_t k = 0; k < r.per_plan.size(); ++k) {
          const double rk = r.per_plan[k].reliability;
          const double mk = cc->sim.per_plan_estimates[k];
          os << fmt::format("{:<12}{:>10}{:>10}{:>12}{:>10}{:>11.2e}{:>12}\n", r.per_plan[k].name,
                            fixed5(rk), fixed5(cc->exact[k]), delta(cc->exact[k] - rk), fixed5(mk),
                            cc->sim.per_plan_half_widths[k], delta(mk - rk));
        }
        os << fmt::format("{:<12}{:>10}{:>10}{:>12}{:>10}{:>11.2e}{:>12}\n", "global",
                          fixed5(r.global), "", "", fixed5(cc->sim.estimate), cc->sim.half_width,
                          delta(cc->sim.estimate - r.global));
        os << fmt::format("monte-carlo trials={} seed={}\n", cc->sim.trials, cc->sim.seed);
      }
      break;
    }
    case Format::csv: {
      os << "plan,feasible,msvs,reliability";
      if (cc) os << ",exact,exact_delta,mc_estimate,mc_half_width,mc_delta";
      os << "\n";
      for (std::size_t k = 0; k < r.per_plan.size(); ++k) {
        const auto& p = r.per_plan[k];
        os << fmt::format("{},{},{},{}", p.name, p.feasible_count, p.msv_count, fixed5(p.reliability));
        if (cc) {
          os << fmt::format(",{},{},{},{:.3e},{}", fixed5(cc->exact[k]),
                            delta(cc->exact[k] - p.reliability), fixed5(cc->sim.per_plan_estimates[k]),
                            cc->sim.per_plan_half_widths[k],
                            delta(cc->sim.per_plan_estimates[k] - p.reliability));
        }
        os << "\n";
      }
      os << fmt::format("global,,,{}", fixed5(r.global));
      if (cc) {
        os << fmt::format(",,,{},{:.3e},{}", fixed5(cc->sim.estimate), cc->sim.half_width,
                          delta(cc->sim.estimate - r.global));
      }
      os << "\n";
      break;
    }
    case Format::structured: {
      Json j;
      j["parameters"] = {{"input_size", r.input_size}, {"deadline", r.deadline}};
      j["method"] = to_string(r.method);
      Json plans = Json::array();
      for (std::size_t k = 0; k < r.per_plan.size(); ++k) {
        const auto& p = r.per_plan[k];
        Json jp = {{"name", p.name},
                   {"feasible_count", p.feasible_count},
                   {"msv_count", p.msv_count},
                   {"reliability", p.reliability}};
        jp["msvs"] = msvs_to_json(p.msvs);
        plans.push_back(std::move(jp));
      }
      j["plans"] = std::move(plans);
      j["global"] = r.global;
      if (cc) {
        Json diag = Json::object();
        for (std::size_t k = 0; k < r.per_plan.size(); ++k) {
          diag[r.per_plan[k].name] = {{"exact", cc->exact[k]},
                                      {"exact_delta", cc->exact[k] - r.per_plan[k].reliability}};
        }
        j["diagnostics"] = std::move(diag);
        j["simulation"] = sim_to_json(cc->sim, r.per_plan);
      }
      os << j.dump(2) << "\n";
      break;
    }
  }
  return os.str();
}

std::string cmd_evaluate(const Invocation& inv) {
  const Scenario s = load_scenario(inv.scenario_path);
  const double c = resolve_input(inv, s);
  const double t = resolve_deadline(inv, s);
  check_positive(c, "input size");
  check_positive(t, "deadline");
  const ReliabilityReport report = evaluate(s, c, t, inv.guard);
  std::optional<CrossCheck> cc;
  if (inv.cross_check) {
    CrossCheck x;
    for (const auto& plan : s.resolved_plans()) x.exact.push_back(exact_reliability(plan, c, t, inv.guard));
    x.sim = simulate(s, c, t, SimConfig{inv.trials, inv.seed, 3.0});
    cc = std::move(x);
  }
  return render_evaluate(report, cc, inv.format);
}

// ---- sweep ---------------------------------------------------------------

std::string cmd_sweep(const Invocation& inv) {
  const Scenario s = load_scenario(inv.scenario_path);
  std::vector<double> cs = inv.sweep_c;
  std::vector<double> ts = inv.sweep_t;
  if (cs.empty()) cs.push_back(resolve_input(inv, s));
  if (ts.empty()) ts.push_back(resolve_deadline(inv, s));
  std::sort(cs.begin(), cs.end());
  std::sort(ts.begin(), ts.end());
  for (double c : cs) check_positive(c, "input size");
  for (double t : ts) check_positive(t, "deadline");

  // grid[t][c]
  std::vector<std::vector<ReliabilityReport>> grid;
  for (double t : ts) {
    auto& row = grid.emplace_back();
    for (double c : cs) row.push_back(evaluate(s, c, t, inv.guard));
  }

  std::ostringstream os;
  switch (inv.format) {
    case Format::table:
      os << fmt::format("{:<8}", "");
      for (double c : cs) os << fmt::format("{:>10}", fmt::format("C={}", c));
      os << "\n";
      for (std::size_t i = 0; i < ts.size(); ++i) {
        os << fmt::format("{:<8}", fmt::format("T={}", ts[i]));
        for (const auto& cell : grid[i]) os << fmt::format("{:>10}", fixed5(cell.global));
        os << "\n";
      }
      break;
    case Format::csv:
      os << "T";
      for (double c : cs) os << fmt::format(",C={}", c);
      os << "\n";
      for (std::size_t i = 0; i < ts.size(); ++i) {
        os << fmt::format("{}", ts[i]);
        for (const auto& cell : grid[i]) os << "," << fixed5(cell.global);
        os << "\n";
      }
      break;
    case Format::structured: {
      Json j;
      j["input_sizes"] = cs;
      j["deadlines"] = ts;
      Json global = Json::array();
      Json plans = Json::object();
      for (std::size_t i = 0; i < ts.size(); ++i) {
        Json row = Json::array();
        for (const auto& cell : grid[i]) {
          row.push_back(cell.global);
          for (const auto& p : cell.per_plan) {
            Json& rows = plans[p.name];
            if (rows.size() <= i) rows.push_back(Json::array());
            rows[i].push_back(p.reliability);
          }
        }
        global.push_back(std::move(row));
      }
      j["global"] = std::move(global);
      j["plans"] = std::move(plans);
      os << j.dump(2) << "\n";
      break;
    }
  }
  return os.str();
}

// ---- simulate ------------------------------------------------------------

std::string cmd_simulate(const Invocation& inv) {
  const Scenario s = load_scenario(inv.scenario_path);
  const double c = resolve_input(inv, s);
  const double t = resolve_deadline(inv, s);
  check_positive(c, "input size");
  check_positive(t, "deadline");
  if (inv.trials == 0) throw UsageError("--trials must be at least 1");
  const SimResult sim = simulate(s, c, t, SimConfig{inv.trials, inv.seed, 3.0});
  std::optional<ReliabilityReport> analytic;
  if (inv.cross_check) analytic = evaluate(s, c, t, inv.guard);

  std::vector<std::string> names;
  for (const auto& p : s.plans()) names.push_back(p.name);

  std::ostringstream os;
  switch (inv.format) {
    case Format::table:
      os << fmt::format("monte-carlo input_size={} deadline={} trials={} seed={}\n", c, t, sim.trials,
                        sim.seed);
      os << fmt::format("{:<12}{:>10}{:>12}", "plan", "estimate", "half-width");
      if (analytic) os << fmt::format("{:>10}{:>12}{:>8}", "analytic", "delta", "within");
      os << "\n";
      for (std::size_t k = 0; k <= names.size(); ++k) {
        const bool global = k == names.size();
        const double est = global ? sim.estimate : sim.per_plan_estimates[k];
        const double hw = global ? sim.half_width : sim.per_plan_half_widths[k];
        os << fmt::format("{:<12}{:>10}{:>12.2e}", global ? "global" : names[k], fixed5(est), hw);
        if (analytic) {
          const double a = global ? analytic->global : analytic->per_plan[k].reliability;
          os << fmt::format("{:>10}{:>12}{:>8}", fixed5(a), delta(est - a),
                            std::abs(est - a) <= hw ? "yes" : "no");
        }
        os << "\n";
      }
      break;
    case Format::csv:
      os << "plan,estimate,half_width";
      if (analytic) os << ",analytic,delta";
      os << "\n";
      for (std::size_t k = 0; k <= names.size(); ++k) {
        const bool global = k == names.size();
        const double est = global ? sim.estimate : sim.per_plan_estimates[k];
        const double hw = global ? sim.half_width : sim.per_plan_half_widths[k];
        os << fmt::format("{},{},{:.3e}", global ? "global" : names[k], fixed5(est), hw);
        if (analytic) {
          const double a = global ? analytic->global : analytic->per_plan[k].reliability;
          os << fmt::format(",{},{}", fixed5(a), delta(est - a));
        }
        os << "\n";
      }
      break;
    case Format::structured: {
      std::vector<PlanReliability> named;
      for (const auto& n : names) {
        PlanReliability p;
        p.name = n;
        named.push_back(std::move(p));
      }
      Json j;
      j["parameters"] = {{"input_size", c}, {"deadline", t}};
      j["method"] = to_string(Method::monte_carlo);
      j["simulation"] = sim_to_json(sim, named);
      if (analytic) j["analytic_global"] = analytic->global;
      os << j.dump(2) << "\n";
      break;
    }
  }
  return os.str();
}

// ---- ingest --------------------------------------------------------------

std::string cmd_ingest(const Invocation& inv) {
  const TraceSeries series =
      load_trace(inv.trace_path, inv.google ? TraceFormat::google : TraceFormat::csv);
  const DiscretizationPolicy policy{inv.levels, inv.capacity};
  if (!inv.machine.empty()) return render_pmf(ingest_trace(series, inv.machine, policy)) + "\n";

  const auto machines = machines_in(series);
  if (machines.empty()) throw TraceError("trace contains no records");
  Json j = Json::object();
  for (const auto& m : machines) j[m] = Json::parse(render_pmf(ingest_trace(series, m, policy)));
  return j.dump(2) + "\n";
}

// ---- check ---------------------------------------------------------------

std::string cmd_check(const Invocation& inv, std::ostream& err) {
  const Scenario s = load_scenario(inv.scenario_path);
  std::ostringstream os;
  const auto sinks = static_cast<std::size_t>(std::count_if(
      s.nodes().begin(), s.nodes().end(), [](const NodeSpec& n) { return n.kind == NodeKind::sink; }));
  os << fmt::format("{} plans, {} branches, {} nodes, {} sink{}\n", s.plans().size(),
                    s.branches().size(), s.nodes().size() - sinks, sinks, sinks == 1 ? "" : "s");
  std::optional<double> c = inv.input_size ? inv.input_size : s.defaults().input_size;
  std::optional<double> t = inv.deadline ? inv.deadline : s.defaults().deadline;
  for (const auto& plan : s.resolved_plans()) {
    os << fmt::format("plan {}: {} branches, {} compute nodes, lead time {}", plan.name, plan.x_dim(),
                      plan.y_dim(), plan.lead_time_sum());
    if (c) {
      check_positive(*c, "input size");
      StateVector best;
      for (const auto& b : plan.branches) best.x.push_back(b.bandwidth.max_level());
      for (auto pos : plan.compute_positions) best.y.push_back(plan.nodes[pos].resource.max_level());
      const CompletionTime ct = total_time(plan, *c, best);
      os << fmt::format(", minimum time {:.4g} at input {}", ct.total(), *c);
      if (t && !ct.meets(*t)) {
        err << fmt::format("warning: plan {} cannot meet deadline {}: minimum achievable time {:.4g}\n",
                           plan.name, *t, ct.total());
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  CLI::App app{"Deadline reliability of staged tasks on edge computing networks", "remr"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{
      {"table", Format::table}, {"csv", Format::csv}, {"structured", Format::structured}};

  auto add_scenario = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--scenario", inv.scenario_path, "Scenario file");
    if (required) opt->required();
    sub->add_option("--input-size", inv.input_size, "Input data size C");
    sub->add_option("--deadline", inv.deadline, "Deadline T in seconds");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", inv.format, "table, csv or structured")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", inv.out_path, "Write results to this file instead of stdout");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--trials", inv.trials, "Monte Carlo trials");
    sub->add_option("--seed", inv.seed, "Monte Carlo seed");
  };

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Reliability of every plan and of the union");
  add_scenario(evaluate_cmd, true);
  add_output(evaluate_cmd);
  add_sim(evaluate_cmd);
  evaluate_cmd->add_flag("--cross-check", inv.cross_check, "Also run the exact and Monte Carlo oracles");
  evaluate_cmd->add_option("--guard", inv.guard, "Maximum states visited by exhaustive searches");

  auto* sweep_cmd = app.add_subcommand("sweep", "Global reliability over a (C, T) grid");
  add_scenario(sweep_cmd, true);
  add_output(sweep_cmd);
  sweep_cmd->add_option("--sweep-c", inv.sweep_c, "Input sizes, comma separated")->delimiter(',');
  sweep_cmd->add_option("--sweep-t", inv.sweep_t, "Deadlines, comma separated")->delimiter(',');
  sweep_cmd->add_option("--guard", inv.guard, "Maximum states visited by exhaustive searches");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of the global reliability");
  add_scenario(simulate_cmd, true);
  add_output(simulate_cmd);
  add_sim(simulate_cmd);
  simulate_cmd->add_flag("--cross-check", inv.cross_check, "Compare against the analytic value");
  simulate_cmd->add_option("--guard", inv.guard, "Maximum states visited by exhaustive searches");

  auto* ingest_cmd = app.add_subcommand("ingest", "Resource distribution from a CPU-usage trace");
  ingest_cmd->add_option("--trace", inv.trace_path, "Trace file")->required();
  ingest_cmd->add_option("--machine", inv.machine, "Machine id (default: every machine)");
  ingest_cmd->add_option("--levels", inv.levels, "Number of capacity levels K")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--capacity", inv.capacity, "Machine capacity at zero usage")
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_flag("--google", inv.google, "Input is a Google cluster-trace task_usage table");
  ingest_cmd->add_option("--out", inv.out_path, "Write the fragment to this file");

  auto* check_cmd = app.add_subcommand("check", "Validate a scenario and summarize its plans");
  add_scenario(check_cmd, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitScenario;
  }

  try {
    std::string result;
    if (*evaluate_cmd) result = cmd_evaluate(inv);
    else if (*sweep_cmd) result = cmd_sweep(inv);
    else if (*simulate_cmd) result = cmd_simulate(inv);
    else if (*ingest_cmd) result = cmd_ingest(inv);
    else if (*check_cmd) result = cmd_check(inv, err);

    if (inv.out_path.empty()) {
      out << result;
    } else {
      std::ofstream file(inv.out_path, std::ios::binary);
      if (!file) {
        err << "error: cannot write '" << inv.out_path << "'\n";
        return kExitScenario;
      }
      file << result;
    }
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitScenario;
  } catch (const TraceError& e) {
    err << "error: trace: " << e.what() << "\n";
    return kExitScenario;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitScenario;
  } catch (const GuardExceeded& e) {
    err << "error: guard exceeded: " << e.what() << "\n";
    return kExitGuard;
  }
}

}  // namespace remr::cli
