#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../support/fixtures.hpp"
#include "../support/toys.hpp"
#include "remr/cli.hpp"
#include "remr/reliability.hpp"

using namespace remr;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "remr");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("remr-cli-" + name);
  std::ofstream(path) << content;
  return path;
}

std::string golden() { return fixtures::golden_path(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("missing scenario file") {
    const Result r = run({"evaluate", "--scenario", "/nonexistent/x.scenario"});
    CHECK(r.code == cli::kExitScenario);
    CHECK(r.out.empty());
    CHECK(r.err.find("io") != std::string::npos);
  }

  TEST_CASE("dangling reference names the offender") {
    std::ifstream in(golden());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto pos = text.find("\"i6\"", text.find("\"plans\""));
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 4, "\"i66\"");
    const auto path = temp_file("dangling.scenario", text);
    const Result r = run({"check", "--scenario", path.string()});
    CHECK(r.code == cli::kExitScenario);
    CHECK(r.err.find("i66") != std::string::npos);
    std::filesystem::remove(path);
  }

  TEST_CASE("bad flags are usage errors") {
    CHECK(run({}).code == cli::kExitScenario);
    CHECK(run({"evaluate"}).code == cli::kExitScenario);
    CHECK(run({"evaluate", "--scenario", golden(), "--format", "xml"}).code == cli::kExitScenario);
    CHECK(run({"evaluate", "--scenario", golden(), "--deadline", "-1"}).code == cli::kExitScenario);
    CHECK(run({"simulate", "--scenario", golden(), "--trials", "0"}).code == cli::kExitScenario);
  }

  TEST_CASE("guard exceeded exits with 3") {
    const Result r = run({"evaluate", "--scenario", golden(), "--guard", "50"});
    CHECK(r.code == cli::kExitGuard);
    CHECK(r.err.find("guard") != std::string::npos);
  }

  TEST_CASE("check summary and warning") {
    Result r = run({"check", "--scenario", golden()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("3 plans, 10 branches, 8 nodes", 0) == 0);
    CHECK(r.err.empty());
    r = run({"check", "--scenario", golden(), "--deadline", "9"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning: plan a cannot meet deadline") != std::string::npos);
  }

  TEST_CASE("evaluate prints five-decimal values") {
    const Result r = run({"evaluate", "--scenario", golden()});
    REQUIRE(r.code == 0);
    const ReliabilityReport rep = evaluate(fixtures::golden(), 15.0, 25.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", rep.global);
    CHECK(r.out.find(std::string("global")) != std::string::npos);
    CHECK(r.out.find(buf) != std::string::npos);
  }

  TEST_CASE("single-plan global equals the plan value") {
    const auto path = temp_file("toy.scenario", render_scenario(toys::two_msv_plan()));
    const Result r = run({"evaluate", "--scenario", path.string(), "--input-size", "6", "--deadline", "5",
                          "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "plan,feasible,msvs,reliability\np,5,2,0.74000\nglobal,,,0.74000\n");
    std::filesystem::remove(path);
  }

  TEST_CASE("single sweep cell equals evaluate") {
    const Result s = run({"sweep", "--scenario", golden(), "--sweep-c", "14", "--sweep-t", "22", "--format",
                          "structured"});
    const Result e = run({"evaluate", "--scenario", golden(), "--input-size", "14", "--deadline", "22",
                          "--format", "structured"});
    REQUIRE(s.code == 0);
    REQUIRE(e.code == 0);
    const auto js = nlohmann::json::parse(s.out);
    const auto je = nlohmann::json::parse(e.out);
    CHECK(js["global"][0][0].get<double>() == je["global"].get<double>());
    CHECK(js["plans"]["c"][0][0].get<double>() == je["plans"][2]["reliability"].get<double>());
  }

  TEST_CASE("sweep csv layout") {
    const Result r = run({"sweep", "--scenario", golden(), "--sweep-c", "16,14", "--sweep-t", "25,20",
                          "--format", "csv"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(header == "T,C=14,C=16");
    CHECK(row1.rfind("20,", 0) == 0);
    CHECK(row2.rfind("25,", 0) == 0);
  }

  TEST_CASE("structured evaluate parses as the scenario dialect") {
    const Result r = run({"evaluate", "--scenario", golden(), "--format", "structured", "--cross-check",
                          "--trials", "20000"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["plans"].size() == 3);
    CHECK(j["plans"][0]["msvs"].size() == j["plans"][0]["msv_count"].get<std::size_t>());
    CHECK(j["simulation"]["trials"] == 20000);
    CHECK(std::abs(j["diagnostics"]["c"]["exact_delta"].get<double>()) <= 1e-9);
  }

  TEST_CASE("identical invocations give identical bytes") {
    const std::vector<std::string> ev{"evaluate", "--scenario", golden(), "--cross-check", "--trials", "50000",
                                      "--seed", "9"};
    CHECK(run(ev).out == run(ev).out);
    const std::vector<std::string> sim{"simulate", "--scenario", golden(), "--trials", "50000"};
    const Result a = run(sim);
    CHECK(a.code == 0);
    CHECK(a.out == run(sim).out);
  }

  TEST_CASE("one trial is all or nothing") {
    const Result r = run({"simulate", "--scenario", golden(), "--trials", "1", "--format", "structured"});
    REQUIRE(r.code == 0);
    const double est = nlohmann::json::parse(r.out)["simulation"]["estimate"].get<double>();
    CHECK((est == 0.0 || est == 1.0));
  }

  TEST_CASE("simulate cross-check reports the analytic value") {
    const Result r = run({"simulate", "--scenario", golden(), "--trials", "200000", "--cross-check"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("analytic") != std::string::npos);
  }

  TEST_CASE("ingest writes a splice-ready fragment") {
    const auto trace = temp_file("trace.csv", "timestamp,machine_id,cpu_usage\n0,m,0.0\n1,m,0.5\n2,m,0.5\n3,m,1.0\n");
    const auto out = std::filesystem::temp_directory_path() / "remr-cli-fragment.json";
    const Result r = run({"ingest", "--trace", trace.string(), "--machine", "m", "--levels", "2", "--capacity",
                          "2", "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(parse_pmf(text) == Pmf({{0, 0.25}, {1, 0.5}, {2, 0.25}}));

    const Result all = run({"ingest", "--trace", fixtures::data_path("google-toy-task-usage.csv"), "--google",
                            "--levels", "10", "--capacity", "10"});
    REQUIRE(all.code == 0);
    CHECK(nlohmann::json::parse(all.out).size() == 3);

    CHECK(run({"ingest", "--trace", trace.string(), "--machine", "zz"}).code == cli::kExitScenario);
    std::filesystem::remove(trace);
    std::filesystem::remove(out);
  }
}
