#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MQUANT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("normal-order prints canonical forms") {
  auto r = run_cli("normal-order \"b(1,1) b+(1,1)\" --format pretty");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1 - b+(1,1) b(1,1)\n");

  auto r2 = run_cli("normal-order \"a(k) a+(k)\" --format pretty");
  CHECK(r2.out == "1 + a+(k) a(k)\n");

  auto r3 = run_cli("normal-order \"a(k) a+(k')\" --format pretty");
  CHECK(r3.out == "delta(k;k') + a+(k') a(k)\n");
}

TEST_CASE("normal-order cross-checks numerically") {
  auto r = run_cli("normal-order \"b(1) d(2) d+(2) b+(1)\" --check-numeric");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["residual"].get<double>() <= 1e-10);
  CHECK(j["pass"].get<bool>());
}

TEST_CASE("exit codes follow the documented contract") {
  CHECK(run_cli("normal-order \"b((\"").exit_code == 2);  // parse error
  CHECK(run_cli("normal-order \"x(1)\"").exit_code == 2);  // unknown species
  CHECK(run_cli("normal-order \"u(r) u+(r)\" --parabose-order 2").exit_code == 3);
  CHECK(run_cli("eq11 --sector 9 --cutoff 6").exit_code == 4);  // guard
  CHECK(run_cli("tower --lifts fermi,fermi,fermi,fermi").exit_code == 4);
  CHECK(run_cli("eq11 --sector 0 --draws 5").exit_code == 0);  // trivial sector
}

TEST_CASE("eq11 report is schema-stable and deterministic by seed") {
  auto r1 = run_cli("eq11 --modes 2 --cutoff 6 --sector 4 --draws 40 --seed 11");
  auto r2 = run_cli("eq11 --modes 2 --cutoff 6 --sector 4 --draws 40 --seed 11");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);  // byte-identical for identical seeds
  auto j = nlohmann::json::parse(r1.out);
  CHECK(j["max_deviation"].get<double>() <= 1e-10);
  CHECK(j["seed"] == 11);
}

TEST_CASE("tower default emits the named three-level demo") {
  auto r = run_cli("tower --draws 20 --seed 3");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["levels"].size() == 3);
  CHECK(j["levels"][0]["name"] == "ur");
  CHECK(j["levels"][1]["name"] == "particle");
  CHECK(j["levels"][2]["name"] == "quantized field");
  CHECK(j["parabose"]["pass"].get<bool>());
}

TEST_CASE("contrast report carries the advertised fields") {
  auto r = run_cli("contrast --momenta 0,0,1 --photon-cutoff 2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const char* key :
       {"hermiticity_defect_dirac", "hermiticity_defect_photon", "charge_commutator_norm",
        "photon_number_field_commutator_norm", "on_shell_current_max_abs"})
    CHECK(j.contains(key));
  CHECK(j["pass"].get<bool>());
}

TEST_CASE("config file supplies defaults and flags win") {
  std::string path = "/tmp/mquant_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"sector": 2, "draws": 10, "seed": 99})";
  }
  auto from_config = run_cli("eq11 --config " + path);
  CHECK(from_config.exit_code == 0);
  auto j1 = nlohmann::json::parse(from_config.out);
  CHECK(j1["sector"] == 2);
  CHECK(j1["draws"] == 10);
  CHECK(j1["seed"] == 99);

  auto overridden = run_cli("eq11 --config " + path + " --sector 3");
  auto j2 = nlohmann::json::parse(overridden.out);
  CHECK(j2["sector"] == 3);
  CHECK(j2["draws"] == 10);
  std::remove(path.c_str());
}

TEST_CASE("reports can be written to a file") {
  std::string path = "/tmp/mquant_test_out.json";
  auto r = run_cli("parabose --order 1 --modes 1 --cutoff 3 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  CHECK(j["p"] == 1);
  CHECK(j["pass"].get<bool>());
  std::remove(path.c_str());
}
