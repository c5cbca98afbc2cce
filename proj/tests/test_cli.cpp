#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(DCPAIR_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp_system(const dcpair::CubicPairSystem& sys, const std::string& name) {
  std::string path = "/tmp/dcpair_test_" + name + ".json";
  std::ofstream f(path);
  f << dcpair::system_to_json_text(sys);
  return path;
}

}  // namespace

TEST_CASE("count np: closed-form family") {
  CliResult r = run_cli("count np --a 1,-1,0,0 --b 0,0,1,-1 --P 5");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["exact"] == "121");
}

TEST_CASE("count np with the quadrature oracle attached") {
  CliResult r = run_cli("count np --a 1,-1 --b 1,1 --P 2 --with-oracle");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["exact"] == "1");
  CHECK(j["oracle"] == "1");
}

TEST_CASE("malformed system file exits 3") {
  std::string path = "/tmp/dcpair_test_broken.json";
  std::ofstream(path) << "{\"a\": [1, 2";
  CliResult r = run_cli("count np --system " + path + " --P 2");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("MalformedJson") != std::string::npos);
}

TEST_CASE("missing system exits 3") {
  CliResult r = run_cli("local --pmax 5");
  CHECK(r.exit_code == 3);
}

TEST_CASE("search single returns the worked example") {
  CliResult r = run_cli("search single --c 1,1,-2 --H 50");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["solution"].is_array());
  CHECK(j["solution"].size() == 3);
}

TEST_CASE("local profile on the davenport-lewis file") {
  std::string path = write_temp_system(fixtures::davenport_lewis_15(), "dl15");
  CliResult r = run_cli("local --system " + path + " --pmax 7");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["verdicts"]["7"]["verdict"] == "insoluble");
  CHECK(j["verdicts"]["2"]["verdict"] == "soluble");
}

TEST_CASE("local --chi-p splices the density sequence into the output") {
  std::string path = write_temp_system(fixtures::davenport_lewis_15(), "dl15chi");
  CliResult r = run_cli("local --system " + path + " --pmax 2 --chi-p 7 --chi-hmax 3");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  REQUIRE(j.contains("chi"));
  CHECK(j["chi"]["p"] == 7);
  CHECK(j["chi"]["terms"].size() == 4);
  CHECK(j["chi"]["terms"][0] == "1/1");
}

TEST_CASE("analyze on the davenport-lewis pair suppresses the prediction") {
  std::string path = write_temp_system(fixtures::davenport_lewis_15(), "dl15an");
  CliResult r = run_cli("analyze --system " + path + " --pmax 7 --X-series 6");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["branch"] == "general-position");
  CHECK(j["local_profile"]["verdicts"]["7"]["verdict"] == "insoluble");
  CHECK(j["prediction_suppressed"] == true);
  CHECK_FALSE(j.contains("integral"));
}

TEST_CASE("series subcommand emits exact rationals") {
  std::mt19937_64 rng(171);
  std::string path = write_temp_system(fixtures::random_general_position(rng, 13, 6), "series");
  CliResult r = run_cli("series --system " + path + " --X 8");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["X"] == 8);
  CHECK(j["terms"].size() == 8);
  CHECK(j["terms"][0]["A"] == "1/1");
}

TEST_CASE("pipeline subcommand on a planted degenerate class") {
  std::mt19937_64 rng(173);
  std::string path = write_temp_system(fixtures::random_planted_class(rng, 13, 7, 9), "split");
  CliResult r = run_cli("pipeline --system " + path + " --H 128 --pmax 5");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["branch"] == "degenerate-split");
  CHECK(j["solution"].is_array());
}

TEST_CASE("plot-data writes deterministic csv files") {
  std::mt19937_64 rng(179);
  std::string path = write_temp_system(fixtures::random_general_position(rng, 13, 6), "plot");
  CliResult a = run_cli("analyze --system " + path +
                        " --P 8 --X-series 6 --X-integral 6 --pmax 3 --mc-samples 5000 --out "
                        "/tmp/dcpair_test_report.json");
  REQUIRE(a.exit_code == 0);
  CliResult p1 = run_cli("plot-data --in /tmp/dcpair_test_report.json --out-dir /tmp/dcpair_plots");
  CHECK(p1.exit_code == 0);
  std::ifstream f1("/tmp/dcpair_plots/series.csv");
  std::string csv1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  CliResult p2 = run_cli("plot-data --in /tmp/dcpair_test_report.json --out-dir /tmp/dcpair_plots");
  CHECK(p2.exit_code == 0);
  std::ifstream f2("/tmp/dcpair_plots/series.csv");
  std::string csv2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("q,A_exact,A_float,decay_product\n", 0) == 0);
}

TEST_CASE("count moment matches the library") {
  CliResult r = run_cli("count moment --kind sixth --P 2 --R 2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["exact"] == "20");
}

TEST_CASE("count trend emits the csv schema") {
  CliResult r = run_cli("count trend --kind sixth --P-list 2,3,4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("P,R,count,slope,ref_exponent\n", 0) == 0);
}

TEST_CASE("budget failures exit 2") {
  CliResult r = run_cli("count np --a 1,2,1,1,2,3,1,2,3 --b 2,1,3,1,1,1,2,2,2 --P 40 "
                        "--budget-mem 1000");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("BudgetExceeded") != std::string::npos);
}

TEST_CASE("integral subcommand reports both integral routes and the prediction") {
  std::mt19937_64 rng(181);
  std::string path = write_temp_system(fixtures::random_general_position(rng, 13, 6), "integral");
  CliResult r = run_cli("integral --system " + path +
                        " --P 8 --X 8 --mc-samples 20000 --seed 5 --X-series 10");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j.contains("J_truncated"));
  CHECK(j.contains("J_polytope"));
  CHECK(j.contains("J_polytope_stderr"));
  CHECK(j.contains("prediction"));
  CHECK(j["J_polytope"].get<double>() > 0.0);
}
