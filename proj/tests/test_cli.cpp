// End-to-end tests for the command-line tool: exit codes, output formats,
// JSON mode, document loading, and determinism across repeated invocations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef HPOLY_CLI_PATH
#error "HPOLY_CLI_PATH must point at the built command-line binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(HPOLY_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << body;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("bound prints the full recursion witness") {
  const RunResult r = run_cli("bound 2 2 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "k = 2, s = 2, ell = 2"));
  CHECK(contains(r.output, "a_0 = 3"));
  CHECK(contains(r.output, "a_1 = 1"));
  CHECK(contains(r.output, "nu_1 = 2"));
  CHECK(contains(r.output, "nu = 3"));
  CHECK(contains(r.output, "D = 3"));
}

TEST_CASE("bound handles documented parameter values") {
  CHECK(contains(run_cli("bound 2 3 2").output, "nu = 4"));
  CHECK(contains(run_cli("bound 2 2 6").output, "nu = 63"));
  CHECK(contains(run_cli("bound 2 3 8").output, "nu = 3280"));
  const RunResult one_flow = run_cli("bound 4 7 1");
  CHECK(contains(one_flow.output, "nu = 3"));
  CHECK(contains(one_flow.output, "D = 3"));
}

TEST_CASE("bound rejects out-of-range parameters with exit code 2") {
  for (const char* args : {"bound 0 2 2", "bound 2 0 2", "bound 2 2 0"}) {
    const RunResult r = run_cli(args);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "input error"));
  }
}

TEST_CASE("bound --json emits a machine-readable witness") {
  const RunResult r = run_cli("bound 2 2 2 --json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["command"] == "bound");
  CHECK(j["witness"]["k"] == 2);
  CHECK(j["witness"]["nu"] == "3");
  CHECK(j["witness"]["D"] == "3");
  CHECK(j["witness"]["a"] == nlohmann::json::array({"3", "1"}));
  CHECK(j["witness"]["nu_seq"] == nlohmann::json::array({"2"}));
}

TEST_CASE("solve reports a certified heisenberg run with the full basis") {
  const RunResult r = run_cli("solve builtin:heisenberg --S X1:2,X2:2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "chart: second kind"));
  CHECK(contains(r.output, "route: carnot-layer"));
  CHECK(contains(r.output, "completeness: certified"));
  CHECK(contains(r.output, "dimension: 8"));
  CHECK(contains(r.output, "x2*x3 - x1*x2^2"));
  CHECK(contains(r.output, "x3^2 - x1*x2*x3"));
}

TEST_CASE("solve reports a stabilization-checked engel subspace run") {
  const RunResult r = run_cli("solve builtin:engel --subspace V1 --k 2 --degree 6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "dimension: 5"));
  CHECK(contains(r.output, "2*x3 - x1*x2"));
  CHECK(contains(r.output, "3*x4 - x1*x3"));
  CHECK(contains(r.output, "stabilization-checked at degree 6 (re-solved at +1, +2)"));
}

TEST_CASE("solve reports the f23 direction run") {
  const RunResult r = run_cli("solve builtin:f23 --S X1:1,X2:2 --degree 6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "dimension: 6"));
  CHECK(contains(r.output, "2*x5 + x2*x3"));
  CHECK(contains(r.output, "2*x2*x4 - x3^2"));
}

TEST_CASE("solve --json is valid JSON with the expected fields") {
  const RunResult r = run_cli("solve builtin:heisenberg --S X1:2,X2:2 --json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["command"] == "solve");
  CHECK(j["algebra"] == "heisenberg");
  CHECK(j["chart"] == "second");
  CHECK(j["problem"]["mode"] == "directions");
  CHECK(j["route"] == "carnot-layer");
  CHECK(j["certificate"] == "certified-bound");
  CHECK(j["witness"]["nu"] == "63");
  CHECK(j["dimension"] == 8);
  CHECK(j["basis"].size() == 8);
  CHECK(j["basis_scaled"].size() == 8);
}

TEST_CASE("solve rejects an S that does not Lie generate, exit code 2") {
  const RunResult r = run_cli("solve builtin:heisenberg --S X3:1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "input error"));
  CHECK(contains(r.output, "Lie generate"));
  CHECK(contains(r.output, "X3"));
}

TEST_CASE("solve rejects contradictory or missing problem flags") {
  CHECK(run_cli("solve builtin:heisenberg").exit_code == 2);
  CHECK(run_cli("solve builtin:heisenberg --S X1:2 --subspace V1 --k 2").exit_code == 2);
  CHECK(run_cli("solve builtin:heisenberg --subspace V1").exit_code == 2);   // no --k
  CHECK(run_cli("solve builtin:heisenberg --S X1:0,X2:2").exit_code == 2);   // order < 1
  CHECK(run_cli("solve builtin:heisenberg --S X9:2").exit_code == 2);        // unknown name
  CHECK(run_cli("solve builtin:heisenberg --S X1:2 --chart middle").exit_code == 2);
}

TEST_CASE("solve rejects a user degree below the stabilized dimension") {
  const RunResult r = run_cli("solve builtin:heisenberg --S X1:2,X2:2 --degree 2");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "input error"));
  const RunResult ok = run_cli("solve builtin:heisenberg --S X1:2,X2:2 --degree 4");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "dimension: 8"));
}

TEST_CASE("identical invocations produce byte-identical output") {
  const std::string args = "solve builtin:engel --S X1:1,X2:2 --degree 6 --json";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(!a.output.empty());
}

TEST_CASE("fields prints the left-invariant coordinate fields") {
  const RunResult r = run_cli("fields builtin:heisenberg");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "X1 = d/dx1"));
  CHECK(contains(r.output, "X2 = d/dx2 + (x1)*d/dx3"));
  CHECK(contains(r.output, "X3 = d/dx3"));
  const RunResult f = run_cli("fields builtin:heisenberg --chart first");
  CHECK(f.exit_code == 0);
  CHECK(contains(f.output, "first kind"));
}

TEST_CASE("convert prints the chart conversion in both directions") {
  const RunResult r = run_cli("convert builtin:engel");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "x3 = a3 + 1/2*a1*a2"));
  CHECK(contains(r.output, "x4 = a4 + 1/2*a1*a3 + 1/6*a1^2*a2"));
  CHECK(contains(r.output, "a4 = x4 - 1/2*x1*x3 + 1/12*x1^2*x2"));
}

TEST_CASE("validate accepts a JSON algebra document") {
  const std::string path = write_temp(
      "hpoly_cli_heis.json",
      R"({"name": "h3", "dimension": 3, "basis": ["X1", "X2", "X3"],
          "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}],
          "weights": [1, 1, 2]})");
  const RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "antisymmetric: yes"));
  CHECK(contains(r.output, "jacobi: yes"));
  CHECK(contains(r.output, "nilpotent: yes"));
  CHECK(contains(r.output, "step: 2"));
  CHECK(contains(r.output, "lower central series dims: 3 1 0"));
}

TEST_CASE("solve works on a JSON algebra document") {
  const std::string path = write_temp(
      "hpoly_cli_heis2.json",
      R"({"name": "h3", "dimension": 3, "basis": ["X1", "X2", "X3"],
          "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}],
          "weights": [1, 1, 2], "chart": "second"})");
  const RunResult r = run_cli("solve " + path + " --S X1:2,X2:2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "algebra: h3"));
  CHECK(contains(r.output, "dimension: 8"));
}

TEST_CASE("validate rejects duplicate or mirrored bracket entries, exit code 2") {
  const std::string path = write_temp(
      "hpoly_cli_bad.json",
      R"({"name": "bad", "dimension": 3, "basis": ["X1", "X2", "X3"],
          "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"},
                       {"i": 2, "j": 1, "k": 3, "c": "1"}]})");
  const RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "conflicting or duplicate structure constant"));
}

TEST_CASE("validate accepts a non-nilpotent algebra and reports it") {
  // Axioms hold, so the report succeeds; nilpotency is informational.
  const std::string path = write_temp(
      "hpoly_cli_aff.json",
      R"({"name": "aff", "dimension": 2, "basis": ["X", "Y"],
          "brackets": [{"i": 1, "j": 2, "k": 2, "c": "1"}]})");
  const RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "nilpotent: no"));
}

TEST_CASE("validate flags a broken Jacobi identity with exit code 1") {
  const std::string path = write_temp(
      "hpoly_cli_jacobi.json",
      R"({"name": "broken", "dimension": 3, "basis": ["X1", "X2", "X3"],
          "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"},
                       {"i": 1, "j": 3, "k": 1, "c": "1"}]})");
  const RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "jacobi: no"));
  CHECK(contains(r.output, "Jacobi"));
}

TEST_CASE("malformed documents exit with code 2") {
  const std::string garbled = write_temp("hpoly_cli_garbled.json", "{ not json at all");
  CHECK(run_cli("validate " + garbled).exit_code == 2);
  CHECK(run_cli("validate /tmp/hpoly_absent_file.json").exit_code == 2);
}

TEST_CASE("verify suites pass with a fixed seed") {
  const RunResult r = run_cli("verify representation --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "PASS"));
  CHECK(contains(r.output, "all checks passed"));
  const RunResult c = run_cli("verify counterexamples");
  CHECK(c.exit_code == 0);
  CHECK(contains(c.output, "all checks passed"));
}

TEST_CASE("verify --json reports every check with its status") {
  const RunResult r = run_cli("verify leibman --json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["command"] == "verify");
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() >= 4);
  for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
}

TEST_CASE("examples lists the built-in algebras and the document format") {
  const RunResult r = run_cli("examples");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "heisenberg"));
  CHECK(contains(r.output, "engel"));
  CHECK(contains(r.output, "f23"));
  CHECK(contains(r.output, "\"brackets\""));
}

TEST_CASE("unknown subcommands and builtins exit with code 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("solve builtin:nosuch --S X1:2").exit_code == 2);
  CHECK(run_cli("verify nosuchsuite").exit_code == 2);
}
