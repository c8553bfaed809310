#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef FRACSPEC_CLI_PATH
#error "FRACSPEC_CLI_PATH must point at the built binary"
#endif

namespace {

int counter = 0;

fs::path fresh_dir() {
  fs::path d = fs::temp_directory_path() /
               ("fracspec_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// run the binary; returns the exit code, with stdout/stderr captured to
// files inside `dir`
int run(const std::string& args, const fs::path& dir) {
  std::string cmd = std::string("\"") + FRACSPEC_CLI_PATH + "\" " + args +
                    " > \"" + (dir / "stdout.txt").string() + "\" 2> \"" +
                    (dir / "stderr.txt").string() + "\"";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classical identity command: outputs, checks, determinism") {
  fs::path d1 = fresh_dir();
  int rc = run("riemann-check --level 12 --terms 400 --s 2,4 --out \"" +
                   (d1 / "out").string() + "\"",
               d1);
  REQUIRE(rc == 0);

  // machine-readable summary parses and the checks pass
  json meta = json::parse(slurp(d1 / "out" / "riemann-check.json"));
  CHECK(meta["command"] == "riemann-check");
  CHECK(meta["config"]["level"] == 12);
  CHECK(meta["config"]["terms"] == 400);
  REQUIRE(meta["checks"].is_array());
  CHECK(meta["checks"].size() == 2);
  for (const auto& c : meta["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(c["residual"].get<double>() < c["tolerance"].get<double>());
  }

  std::string csv = slurp(d1 / "out" / "riemann-check.csv");
  CHECK(csv.find("s,") == 0);  // header row first
  CHECK(csv.find('\t') == std::string::npos);

  // byte-identical rerun: no timestamps or rng state in any output
  fs::path d2 = fresh_dir();
  REQUIRE(run("riemann-check --level 12 --terms 400 --s 2,4 --out \"" +
                  (d2 / "out").string() + "\"",
              d2) == 0);
  CHECK(slurp(d1 / "out" / "riemann-check.csv") ==
        slurp(d2 / "out" / "riemann-check.csv"));
  CHECK(slurp(d1 / "out" / "riemann-check.json") ==
        slurp(d2 / "out" / "riemann-check.json"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("spectrum command writes the decimated spectrum") {
  fs::path d = fresh_dir();
  int rc = run("sg-spectrum --level 3 --out \"" + (d / "out").string() + "\"", d);
  REQUIRE(rc == 0);

  std::string csv = slurp(d / "out" / "sg-spectrum.csv");
  REQUIRE(csv.rfind("value,multiplicity\n", 0) == 0);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 14);  // header + 13 distinct eigenvalues at level 3

  json meta = json::parse(slurp(d / "out" / "sg-spectrum.json"));
  CHECK(meta["eigenvalue_count"] == 39);
  CHECK(meta["checks"][0]["name"] == "oracle_match");
  CHECK(meta["checks"][0]["pass"] == true);
  fs::remove_all(d);
}

TEST_CASE("csv-only format suppresses the json sidecar") {
  fs::path d = fresh_dir();
  REQUIRE(run("sg-spectrum --level 2 --format csv --out \"" +
                  (d / "out").string() + "\"",
              d) == 0);
  CHECK(fs::exists(d / "out" / "sg-spectrum.csv"));
  CHECK_FALSE(fs::exists(d / "out" / "sg-spectrum.json"));
  fs::remove_all(d);
}

TEST_CASE("bad parameter exits with usage code and a meaningful message") {
  fs::path d = fresh_dir();
  int rc = run("sl-spectrum --alpha 0.7 --k 3 --out \"" + (d / "out").string() +
                   "\"",
               d);
  CHECK(rc == 2);
  std::string err = slurp(d / "stderr.txt");
  CHECK(err.find("delta") != std::string::npos);

  // unknown tolerance names are rejected the same way
  int rc2 = run("riemann-check --tol bogus=1 --out \"" + (d / "out2").string() +
                    "\"",
                d);
  CHECK(rc2 == 2);
  fs::remove_all(d);
}

TEST_CASE("tightened tolerance flips the exit code") {
  fs::path d = fresh_dir();
  int rc = run("riemann-check --level 11 --terms 200 --s 2 --tol riemann_s2=1e-12 --out \"" +
                   (d / "out").string() + "\"",
               d);
  CHECK(rc == 1);
  json meta = json::parse(slurp(d / "out" / "riemann-check.json"));
  CHECK(meta["checks"][0]["pass"] == false);
  fs::remove_all(d);
}

TEST_CASE("config file fills defaults, flags override") {
  fs::path d = fresh_dir();
  {
    std::ofstream cfg(d / "run.ini");
    cfg << "[riemann-check]\nlevel=11\nterms=200\n";
  }
  int rc = run("--config \"" + (d / "run.ini").string() +
                   "\" riemann-check --terms 300 --out \"" +
                   (d / "out").string() + "\"",
               d);
  REQUIRE(rc == 0);
  json meta = json::parse(slurp(d / "out" / "riemann-check.json"));
  CHECK(meta["config"]["level"] == 11);   // from the config file
  CHECK(meta["config"]["terms"] == 300);  // flag wins over the file
  fs::remove_all(d);
}

TEST_CASE("boundary-pair demo records substitution and orbit") {
  fs::path d = fresh_dir();
  int rc = run("hyperfunction-demo --out \"" + (d / "out").string() + "\"", d);
  REQUIRE(rc == 0);
  json meta = json::parse(slurp(d / "out" / "hyperfunction-demo.json"));
  double sub = meta["substitution"]["value_re"].get<double>();
  CHECK(sub == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(meta["orbit"]["outcome"] == "converged_x0");
  for (const auto& c : meta["checks"]) CHECK(c["pass"] == true);
  CHECK(fs::exists(d / "out" / "hyperfunction-demo.csv"));
  fs::remove_all(d);
}

TEST_CASE("missing subcommand is a usage error") {
  fs::path d = fresh_dir();
  CHECK(run("", d) == 2);
  CHECK(run("--help", d) == 0);
  fs::remove_all(d);
}
