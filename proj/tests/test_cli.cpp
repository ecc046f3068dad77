#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccspace/cli.hpp"

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ccspace");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = ccspace::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ccspace_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("suite report and exit code") {
  const auto r = invoke({"check-axioms", "--space", "euclidean", "--dim", "2", "--trials", "1000", "--seed", "7"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 17);
  CHECK(ls[0] == "check,worst_violation,trials,verdict");
  CHECK(ls[1].rfind("metric,", 0) == 0);
}

TEST_CASE("counterexample report") {
  const auto r = invoke({"counterexample"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "quantity,value");
  CHECK(std::abs(std::stod(ls[1].substr(4)) - 0.64) < 1e-15);
  CHECK(std::abs(std::stod(ls[2].substr(4)) - 0.60) < 1e-15);

  // At the origin both sides vanish, so no failure is confirmed.
  CHECK(invoke({"counterexample", "--x", "0", "--y", "0"}).code == 1);
}

TEST_CASE("convexify-rate rows") {
  const auto r = invoke({"convexify-rate", "--space", "compact-sets", "--fixture", "two-point"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 65);
  CHECK(ls[0] == "n,distance");
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto comma = ls[n].find(',');
    CHECK(std::stoul(ls[n].substr(0, comma)) == n);
    CHECK(std::abs(std::stod(ls[n].substr(comma + 1)) - 0.5 / static_cast<double>(n)) < 1e-15);
  }
}

TEST_CASE("json report") {
  const auto r = invoke({"prop55", "--space", "compact-sets", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"command", "space", "params", "seed", "verdict", "details", "paper_ref"})
    CHECK(j.contains(key));
  CHECK(j["command"] == "prop55");
  CHECK(j["verdict"] == "pass");
  CHECK(j["seed"] == 7);
  CHECK(j["details"]["distance"].size() == 12);
}

TEST_CASE("violations exit with 1 and carry a witness") {
  const auto r = invoke({"cancellation", "--space", "power", "--raw-points", "--trials", "50", "--format", "json"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "fail");
  CHECK(j["details"]["checks"][0].contains("witness"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"check-axioms", "--space", "hilbert"}).code == 2);
  CHECK(invoke({"check-axioms", "--space", "compact-sets", "--dim", "3"}).code == 2);
  CHECK(invoke({"check-axioms", "--space", "power", "--exponent", "1"}).code == 2);
  CHECK(invoke({"ergodic", "--modulus", "10", "--step", "4"}).code == 2);
  CHECK(invoke({"embed-verify", "--space", "euclidean"}).code == 2);
  CHECK(invoke({"jensen", "--space", "distributions", "--functional", "support-max"}).code == 2);
  CHECK(invoke({"martingale", "--atoms", "12"}).code == 2);
  CHECK(invoke({"check-axioms", "--format", "xml"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("identical configuration gives identical bytes") {
  const std::vector<std::string> args{"check-axioms", "--space", "distributions", "--trials", "60", "--seed", "3"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> slln{"slln", "--space", "compact-sets", "--n-max", "300", "--format", "json"};
  CHECK(invoke(slln).out == invoke(slln).out);
}

TEST_CASE("output file, config file and seed variable") {
  const auto out = scratch("report.csv");
  std::filesystem::remove(out);
  const auto r = invoke({"check-axioms", "--trials", "20", "--output", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  std::stringstream body;
  body << f.rdbuf();
  CHECK(body.str() == invoke({"check-axioms", "--trials", "20"}).out);

  const auto cfg = scratch("run.toml");
  std::ofstream(cfg) << "space = \"power\"\ndim = 2\nexponent = 3.0\ntrials = 20\nformat = \"json\"\n";
  auto j = nlohmann::json::parse(invoke({"check-axioms", "--config", cfg.string()}).out);
  CHECK(j["space"] == "power");
  CHECK(j["params"]["exponent"] == 3.0);
  // Flags win over the file.
  j = nlohmann::json::parse(invoke({"check-axioms", "--config", cfg.string(), "--dim", "1"}).out);
  CHECK(j["params"]["dim"] == 1);

  ::setenv("CCSPACE_SEED", "42", 1);
  j = nlohmann::json::parse(invoke({"prop52", "--trials", "10", "--format", "json"}).out);
  CHECK(j["seed"] == 42);
  j = nlohmann::json::parse(invoke({"prop52", "--trials", "10", "--format", "json", "--seed", "5"}).out);
  CHECK(j["seed"] == 5);
  ::setenv("CCSPACE_SEED", "nope", 1);
  CHECK(invoke({"prop52"}).code == 2);
  ::unsetenv("CCSPACE_SEED");
}
