#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CENTROIDCUT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/centroidcut_cli_" + name;
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("rho") {
  auto r = run("rho --body simplex --n 3");
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["rho"].get<double>() == doctest::Approx(37.0 / 27.0).epsilon(1e-9));
  CHECK(doc["rho_n"] == "37/27");
  CHECK(std::abs(doc["gap"].get<double>()) < 1e-9);
  CHECK(doc["exact_witnesses"].is_array());
  r = run("rho --body cube --n 4");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rho"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  r = run("rho --body square --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("rho,rho_n,gap,phi", 0) == 0);
}

TEST_CASE("exit codes") {
  const auto bad = temp_path("bad.json");
  write_file(bad, "{\"dim\": 2, \"vertices\": [[0, 0], [1");
  auto r = run("rho --input " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  const auto flat = temp_path("flat.json");
  write_file(flat, R"({"dim": 2, "vertices": [[0, 0], [1, 1], [2, 2]]})");
  r = run("rho --input " + flat);
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(run("nonsense").code == 1);
  CHECK(run("rho --body cube").code == 1);
  CHECK(run("floatbody --body square --delta 3/5").code == 1);
  // No partial file on failure.
  const auto out = temp_path("never.json");
  std::remove(out.c_str());
  CHECK(run("rho --input " + flat + " --out " + out).code == 2);
  CHECK_FALSE(std::ifstream(out).good());
}

TEST_CASE("floatbody") {
  auto r = run("floatbody --body square --delta 1/4 --dirs axes");
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["delta"] == "1/4");
  REQUIRE(doc["halfspaces"].size() == 4);
  for (const auto& h : doc["halfspaces"]) {
    const bool positive = h["theta"][0] == "1" || h["theta"][1] == "1";
    CHECK(h["t_hi"] == (positive ? "3/4" : "-1/4"));
    CHECK(h["t_lo"] == h["t_hi"]);
  }
  r = run("floatbody --body simplex --n 2 --delta 1/3 --format svg");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("<svg", 0) == 0);
}

TEST_CASE("moment profile command") {
  auto r = run("lemma5 --M 1/6 --m 0 --n 2");
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["muMin"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(doc["muMax"].get<double>() == doctest::Approx(0.57735).epsilon(1e-5));
  r = run("lemma5 --M 1 --m -1 --n 1");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["feasible"] == false);
  r = run("lemma5 --M 1/6 --m 0 --n 2 --trials 200 --format svg");
  CHECK(r.code == 0);
  CHECK(r.out.find("<polyline") != std::string::npos);
}

TEST_CASE("gen and determinism") {
  const auto path = temp_path("pyr.json");
  auto r = run("gen --kind pyramid --n 3 --out " + path);
  REQUIRE(r.code == 0);
  std::stringstream ss;
  ss << std::ifstream(path).rdbuf();
  const auto doc = json::parse(ss.str());
  CHECK(doc["dim"] == 3);
  CHECK(doc["vertices"].size() == 5);
  r = run("rho --input " + path);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["exact_equality"] == true);

  CHECK(run("gen --body random-hull --n 3 --seed 9").out == run("--seed 9 gen --body random-hull --n 3").out);
  CHECK(run("gen --body random-hull --n 3 --seed 9").out != run("gen --body random-hull --n 3 --seed 10").out);
  CHECK(run("rho --body random-hull --n 3 --seed 4").out == run("rho --body random-hull --n 3 --seed 4 --threads 2").out);
  const std::string spec = R"('{"kind": "pyramid", "n": 2, "base": "cube", "apex_height": "3"}')";
  r = run("rho --spec " + spec);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["rho_n"] == "5/4");
}

TEST_CASE("verify and profile") {
  auto r = run("verify --suite pyramids --format json");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)[0]["ok"] == true);
  r = run("verify --suite fleet --bodies 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run("verify --suite nothing").code == 1);
  r = run("profile --body simplex --n 2 --grid 5");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,f,h", 0) == 0);
  r = run("phi --body cube --n 2");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["hi"].get<double>() == 0.5);
}
