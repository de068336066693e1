#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "dualmap/json_io.hpp"
#include "dualmap/scenario.hpp"

using dualmap::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DUALMAP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(DUALMAP_SOURCE_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "dualmap_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

Json last_json_line(const std::string& text) {
  const auto end = text.find_last_not_of('\n');
  const auto start = text.rfind('\n', end);
  return Json::parse(text.substr(start == std::string::npos ? 0 : start + 1));
}

}  // namespace

TEST_CASE("eval in lp") {
  const auto r = run("eval --space lp --p 3 --vector '[1,1]'");
  REQUIRE(r.code == 0);
  const auto j = last_json_line(r.output);
  CHECK(j[0].get<double>() == doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-12));
  CHECK(j[1].get<double>() == doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("eval round trip through the conjugate exponent") {
  const auto a = run("eval --space lp --p 2.5 --vector '[2,-1,0.5]'");
  REQUIRE(a.code == 0);
  const auto j = last_json_line(a.output);
  const auto b = run("eval --space lp --p " + std::to_string(5.0 / 3.0) + " --vector '" + j.dump() + "'");
  REQUIRE(b.code == 0);
  const auto x = last_json_line(b.output);
  CHECK(x[0].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(x[1].get<double>() == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(x[2].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("eval in l1 and c01") {
  const auto a = run("eval --space l1 --weights '[1,1,1]' --values '[2,0,-1]'");
  REQUIRE(a.code == 0);
  const auto l1 = last_json_line(a.output);
  CHECK(l1["norm"] == 3.0);
  CHECK(l1["singleton"] == false);
  CHECK(l1["free_points"] == Json::array({1}));
  CHECK(l1["canonical"] == Json::array({3.0, 0.0, -3.0}));

  const auto b = run("eval --space c01 --f tent");
  REQUIRE(b.code == 0);
  const auto c = last_json_line(b.output);
  CHECK(c["norm"] == 1.0);
  CHECK(c["maximizing_set"]["atoms"] == Json::array({0.5}));

  const auto z = run("eval --space c01 --f zero");
  REQUIRE(z.code == 0);
  CHECK(last_json_line(z.output)["maximizing_set"].is_null());
}

TEST_CASE("eval input errors exit 2") {
  CHECK(run("eval --space lp --p 1 --vector '[1]'").code == 2);
  CHECK(run("eval --space lp --vector '[1,'").code == 2);
  CHECK(run("eval --space l1 --weights '[1,1]' --values '[1,2,3]'").code == 2);
  CHECK(run("eval --space hilbert --vector '[1]'").code == 2);
  CHECK(run("eval").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("run exit codes") {
  SUBCASE("full catalog certifies") {
    const auto out = scratch("all.json");
    const auto r = run("run " + fixture("fixtures/all.json") + " --out " + out.string());
    CHECK(r.code == 0);
    std::ifstream in(out);
    const auto j = Json::parse(in);
    CHECK(j["all_certified"] == true);
    REQUIRE(j["certificates"].size() == 18);
    for (const auto& rec : j["certificates"]) CHECK(dualmap::recheck_certificate_record(rec).ok);
  }
  SUBCASE("violated hypothesis") {
    const auto r = run("run " + fixture("tests/fixtures/thm58_c1.json") + " --out " + scratch("x.json").string());
    CHECK(r.code == 2);
    CHECK(r.output.find("hypothesis violated: c ≠ 1") != std::string::npos);
  }
  SUBCASE("unknown theorem") {
    const auto r = run("run " + fixture("tests/fixtures/unknown_theorem.json") + " --out " +
                       scratch("x.json").string());
    CHECK(r.code == 2);
    CHECK(r.output.find("thm99") != std::string::npos);
  }
  SUBCASE("malformed json") {
    CHECK(run("run " + fixture("tests/fixtures/malformed.json") + " --out " + scratch("x.json").string()).code ==
          2);
    CHECK(run("run /nonexistent/file.json").code == 2);
  }
  SUBCASE("empty list") {
    const auto out = scratch("empty.json");
    CHECK(run("run " + fixture("tests/fixtures/empty.json") + " --out " + out.string()).code == 0);
    std::ifstream in(out);
    CHECK(Json::parse(in)["certificates"].empty());
  }
  SUBCASE("uncertified scenario") {
    const auto out = scratch("rejected.json");
    CHECK(run("run " + fixture("tests/fixtures/rejected.json") + " --out " + out.string()).code == 1);
    std::ifstream in(out);
    const auto j = Json::parse(in);
    CHECK(j["all_certified"] == false);
    CHECK(j["certificates"][0]["verdict"] != "certified");
  }
}

TEST_CASE("suite exit codes") {
  const auto out = scratch("suite.json");
  const auto r = run("suite --space lp --p 3 --samples 20 --seed 7 --out " + out.string());
  CHECK(r.code == 0);
  std::ifstream in(out);
  const auto j = Json::parse(in);
  CHECK(j["seed"] == 7);
  CHECK(run("suite --space c01 --samples 20").code == 0);
  CHECK(run("suite --space l1 --weights '[1,2,0.5]' --samples 20").code == 0);
  CHECK(run("suite --space lp --p 0.5").code == 2);
  CHECK(run("suite --space lp --samples 0").code == 2);
}
