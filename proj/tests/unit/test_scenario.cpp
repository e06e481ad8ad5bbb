#include <doctest.h>

#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "remr/errors.hpp"
#include "remr/pmf.hpp"
#include "remr/scenario.hpp"

using namespace remr;

namespace {

ScenarioErrorKind rejection(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.kind();
  }
  FAIL("scenario was accepted");
  return ScenarioErrorKind::io;
}

const char* kMinimal = R"({
  "branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
  "nodes": [{"id": "src", "kind": "transit"}, {"id": "sink", "kind": "sink"}],
  "plans": [{"name": "p", "path": ["src", "b", "sink"]}]
})";

}  // namespace

TEST_SUITE("decn-core") {
  TEST_CASE("survival reads upper tails") {
    const Pmf i1({{0, 0.04}, {1, 0.01}, {3, 0.02}, {5, 0.93}});
    CHECK(i1.survival(2) == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(i1.survival(0) == 1.0);
    CHECK(i1.survival(6) == 0.0);
    CHECK(fixtures::table2_resource().survival(6) == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(survival(fixtures::table2_resource(), 0) == 1.0);
  }

  TEST_CASE("pmf rejects malformed distributions") {
    CHECK_THROWS_AS(Pmf({{0, 0.5}, {1, 0.4}}), ScenarioError);
    CHECK_THROWS_AS(Pmf({{-1, 1.0}}), ScenarioError);
    CHECK_THROWS_AS(Pmf({{1, 0.5}, {1, 0.5}}), ScenarioError);
    CHECK_THROWS_AS(Pmf({{0, 1.2}, {1, -0.2}}), ScenarioError);
    CHECK_THROWS_AS(Pmf(std::vector<Pmf::Entry>{}), ScenarioError);
  }

  TEST_CASE("support skips zero-probability levels") {
    const Pmf p({{0, 0.0}, {2, 0.25}, {4, 0.75}, {7, 0.0}});
    CHECK(p.support() == std::vector<int>{2, 4});
    CHECK(p.max_level() == 4);
    CHECK(p.survival(3) == doctest::Approx(0.75));
    CHECK(p.probability(7) == 0.0);
  }

  TEST_CASE("survival is non-increasing and vanishes past the top level") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const Pmf p = oracle::random_pmf(rng, 6, 9);
      for (int k = 0; k <= p.max_level(); ++k) CHECK(p.survival(k + 1) <= p.survival(k));
      CHECK(p.survival(p.max_level() + 1) == 0.0);
      CHECK(p.survival(0) == 1.0);
    }
  }

  TEST_CASE("minimal scenario parses") {
    const Scenario s = parse_scenario(kMinimal);
    CHECK(s.branches().size() == 1);
    CHECK(s.plans().size() == 1);
    const ResolvedPlan p = s.resolve(s.plans()[0]);
    CHECK(p.x_dim() == 1);
    CHECK(p.y_dim() == 0);
  }

  TEST_CASE("golden scenario carries Tables 1 and 2 and three plans") {
    const Scenario& s = fixtures::golden();
    CHECK(s.branches().size() == 10);
    CHECK(s.nodes().size() == 9);  // eight devices/servers plus the cloud sink
    CHECK(s.plans().size() == 3);
    CHECK(s.find_branch("i9")->lead_time == 2);
    CHECK(s.find_branch("i6")->bandwidth.probability(2) == doctest::Approx(0.95));
    CHECK(s.find_node("s0")->ratio == doctest::Approx(0.8));
    CHECK(s.find_node("s12")->kind == NodeKind::transit);
    CHECK(*s.defaults().input_size == 15);
    CHECK(*s.defaults().deadline == 25);
    const ResolvedPlan a = fixtures::golden_plan("a");
    CHECK(a.x_dim() == 4);
    CHECK(a.y_dim() == 3);
    CHECK(a.lead_time_sum() == 5);
  }

  TEST_CASE("error classes") {
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 0.9}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "b", "t"]}]})") == ScenarioErrorKind::pmf_sum);
    CHECK(rejection(R"({"branches": [{"id": "b", "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "b", "t"]}]})") == ScenarioErrorKind::schema);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "zz", "t"]}]})") == ScenarioErrorKind::dangling_reference);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "b", "s"]}]})") == ScenarioErrorKind::structure);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "t", "b"]}]})") == ScenarioErrorKind::structure);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": []})") == ScenarioErrorKind::schema);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit", "ratio": 2}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "b", "t"]}]})") == ScenarioErrorKind::schema);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "compute", "ratio": 0, "resource": {"1": 1}}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "b", "t"]}]})") == ScenarioErrorKind::schema);
    CHECK(rejection(R"({"branches": [{"id": "s", "lead_time": 0, "bandwidth": {"1": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "s", "t"]}]})") == ScenarioErrorKind::schema);
    CHECK(rejection(R"({"branches": [{"id": "b", "lead_time": 0, "bandwidth": {"x": 1.0}}],
      "nodes": [{"id": "s", "kind": "transit"}, {"id": "t", "kind": "sink"}],
      "plans": [{"name": "p", "path": ["s", "b", "t"]}]})") == ScenarioErrorKind::schema);
    CHECK(rejection("[1, 2") == ScenarioErrorKind::schema);
  }

  TEST_CASE("missing file is an io error") {
    try {
      load_scenario("/nonexistent/file.scenario");
      FAIL("expected failure");
    } catch (const ScenarioError& e) {
      CHECK(e.kind() == ScenarioErrorKind::io);
    }
  }

  TEST_CASE("render then parse reproduces the scenario") {
    CHECK(parse_scenario(render_scenario(fixtures::golden())) == fixtures::golden());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const auto inst = oracle::random_instance(rng);
      CHECK(parse_scenario(render_scenario(inst.scenario)) == inst.scenario);
    }
    const Scenario with_override(
        {BranchSpec{"b", 1.5, Pmf({{1, 0.3}, {2, 0.7}})}},
        {NodeSpec{"s", NodeKind::compute, 0.01, Pmf::degenerate(3), 0.01},
         NodeSpec{"t", NodeKind::sink, 1.0, {}, {}}},
        {DeploymentPlan{"p", {"s", "b", "t"}}}, ScenarioDefaults{14.0, 20.0});
    CHECK(parse_scenario(render_scenario(with_override)) == with_override);
  }

  TEST_CASE("pmf fragments round-trip") {
    const Pmf p({{0, 0.25}, {1, 0.5}, {2, 0.25}});
    CHECK(parse_pmf(render_pmf(p)) == p);
  }
}
