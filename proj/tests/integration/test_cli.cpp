// Drives the qlw binary end to end: exit codes, files and determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "qlw/scalar.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qlw_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

// Runs qlw with the arguments, stdout to `out` (in the work dir); returns the exit status.
int run(const std::string& args, const std::string& out = "stdout.txt", const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(QLW_BIN) + "' " + args + " > '" + path(out) + "' 2> '" + path("stderr.txt") + "'";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& name) {
  std::ifstream in(path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const std::string& name) { return json::parse(slurp(name)); }

void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

}  // namespace

TEST_CASE("representation files") {
  REQUIRE(run("rep eval --n 1 --a 1 -o " + path("v.json")) == 0);
  CHECK(load("v.json")["dim"] == 2);
  REQUIRE(run("rep twist --zeta -1 " + path("v.json") + " -o " + path("w.json")) == 0);
  CHECK(qlw::ScalarQ::parse(load("w.json")["meta"]["twist"].get<std::string>()) == qlw::ScalarQ(-1L));
  REQUIRE(run("rep eval --n 2 --a q^2 -o " + path("v2.json")) == 0);
  CHECK(run("verify relations " + path("v2.json")) == 0);
  CHECK(load("stdout.txt")["status"] == "pass");
  REQUIRE(run("rep sum " + path("v.json") + " " + path("v2.json") + " -o " + path("s.json")) == 0);
  CHECK(load("s.json")["dim"] == 5);
  CHECK(run("rep load " + path("s.json"), "s2.json") == 0);
  CHECK(load("s2.json") == load("s.json"));
}

TEST_CASE("verification suites pass on small modules") {
  REQUIRE(run("rep eval --n 0 -o " + path("t.json")) == 0);
  REQUIRE(run("rep eval --n 1 --a 1 -o " + path("v.json")) == 0);
  CHECK(run("verify theorem " + path("t.json")) == 0);
  for (const char* kind : {"relations", "weyl", "cp", "theorem", "kernel", "euler", "eigen", "shift"}) {
    CAPTURE(kind);
    CHECK(run(std::string("verify ") + kind + " " + path("v.json")) == 0);
    json r = load("stdout.txt");
    CHECK(r["status"] == "pass");
    CHECK(r["summary"]["fail"] == 0);
    CHECK(r["summary"]["pass"] > 0);
  }
  CHECK(run("verify qpascal --rmax 8 --ymax 8") == 0);
}

TEST_CASE("check failures exit with status 1") {
  REQUIRE(run("rep eval --n 1 --a 1 -o " + path("v.json")) == 0);
  json j = load("v.json");
  j["E"]["2"][0][1] = "17";
  write("bad.json", j.dump());
  CHECK(run("verify cp " + path("bad.json")) == 1);
  CHECK(load("stdout.txt")["status"] == "fail");
}

TEST_CASE("bad input exits with status 2") {
  CHECK(run("verify theorem " + path("missing.json")) == 2);
  CHECK(run("rep eval --n -1") == 2);
  CHECK(run("rep eval --n 1 --a 'q^'") == 2);
  CHECK(run("rep eval --n 1 --a 0") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("--scalar rational:1 rep eval --n 1") == 2);
  write("garbage.json", "{not json");
  CHECK(run("verify cp " + path("garbage.json")) == 2);
  write("nocartan.json", R"({"V": []})");
  CHECK(run("ktheory " + path("nocartan.json")) == 2);
  REQUIRE(run("rep eval --n 1 -o " + path("v.json")) == 0);
  CHECK(run("verify cp " + path("v.json"), "stdout.txt", "QLW_DEFAULT_ORDER=zero") == 2);
}

TEST_CASE("reports are deterministic apart from timing") {
  REQUIRE(run("rep eval --n 2 --a 3/2 -o " + path("v.json")) == 0);
  REQUIRE(run("verify theorem " + path("v.json"), "r1.json") == 0);
  REQUIRE(run("verify theorem " + path("v.json"), "r2.json") == 0);
  json a = load("r1.json");
  json b = load("r2.json");
  a.erase("timing_seconds");
  b.erase("timing_seconds");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("series order from the environment and the flag") {
  REQUIRE(run("rep eval --n 1 -o " + path("v.json")) == 0);
  CHECK(run("verify cp " + path("v.json"), "stdout.txt", "QLW_DEFAULT_ORDER=15") == 0);
  CHECK(load("stdout.txt")["input"]["order"] == 15);
  CHECK(run("verify cp --order 13 " + path("v.json"), "stdout.txt", "QLW_DEFAULT_ORDER=15") == 0);
  CHECK(load("stdout.txt")["input"]["order"] == 13);
}

TEST_CASE("window and scalar flags") {
  REQUIRE(run("rep eval --n 1 --window 4 -o " + path("v.json")) == 0);
  CHECK(load("v.json")["window"] == json::array({-4, 4}));
  REQUIRE(run("--scalar rational:3/2 rep eval --n 1 --a q -o " + path("num.json")) == 0);
  CHECK(qlw::ScalarQ::parse(load("num.json")["q"].get<std::string>()) == qlw::ScalarQ(mpq_class(3, 2)));
  CHECK(run("verify theorem " + path("num.json")) == 0);
  CHECK(run("verify theorem --format text " + path("num.json")) == 0);
  CHECK(slurp("stdout.txt").find("PASS main-theorem") != std::string::npos);
}

TEST_CASE("K-theory instances") {
  write("a1.json", R"({"cartan": [[2]], "V": [["y"]], "W": [["x1", "x2"]]})");
  REQUIRE(run("ktheory " + path("a1.json")) == 0);
  CHECK(load("stdout.txt")["result"]["nodes"][0]["line"] == "q^0 * x1^-1 * x2^-1 * y^2");
  write("a1z.json", R"({"cartan": [[2]], "V": [[]], "W": [["1"]]})");
  CHECK(run("ktheory " + path("a1z.json")) == 0);
  write("a2.json", R"({"cartan": [[2, -1], [-1, 2]], "V": [["y1"], ["y2"]], "W": [["x1"], []]})");
  CHECK(run("ktheory --node 1 " + path("a2.json")) == 0);
  CHECK(load("stdout.txt")["input"]["nodes"] == json::array({1}));
  CHECK(run("ktheory --node 5 " + path("a2.json")) == 2);
}
