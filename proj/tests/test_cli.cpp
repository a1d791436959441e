// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using conebessel::cli::run_cli;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("conebessel_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("eval prints values") {
  const Run r = run({"eval", "--fn", "bessel", "--q", "1", "--mu", "1", "--x", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.22389077914") != std::string::npos);
  const Run j = run({"eval", "--fn", "bessel", "--q", "2", "--field", "C", "--mu", "3", "--x", "1,0.5", "--json"});
  REQUIRE(j.code == 0);
  const Json v = Json::parse(j.out);
  CHECK(v["converged"] == true);
  CHECK(v["value"]["re"].get<double>() == doctest::Approx(0.6002945091185411).epsilon(1e-12));
  const Run p = run({"eval", "--fn", "pochhammer", "--mu", "3", "--partition", "2,1", "--alpha", "2", "--json"});
  REQUIRE(p.code == 0);
  CHECK(Json::parse(p.out)["value"]["re"].get<double>() == doctest::Approx(30.0));
  const Run g = run({"eval", "--fn", "gamma-omega", "--q", "2", "--field", "R", "--mu", "2", "--json"});
  REQUIRE(g.code == 0);
  CHECK(Json::parse(g.out)["value"]["re"].get<double>() == doctest::Approx(2.2214414690791831));
}

TEST_CASE("exit codes") {
  CHECK(run({"eval", "--fn", "bessel", "--q", "1", "--mu", "abc", "--x", "1"}).code == 2);
  CHECK(run({"eval", "--fn", "nonsense"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval", "--fn", "bessel", "--q", "1", "--mu", "1", "--x", "900"}).code == 3);
  CHECK(run({"eval", "--fn", "bessel", "--q", "1", "--mu", "0", "--x", "1"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify list") {
  const Run r = run({"verify", "--list"});
  CHECK(r.code == 0);
  for (const char* id : {"product-formula", "sonine-phi", "polar-route", "beta-projection", "wolf-haar"})
    CHECK(r.out.find(id) != std::string::npos);
}

TEST_CASE("verify emits a JSON report") {
  const Run r = run({"verify", "--identity", "sonine", "--q", "1", "--mu", "1.5", "--nu", "2", "--m", "0",
                     "--no-timestamp"});
  REQUIRE(r.code == 0);
  const Json v = Json::parse(r.out);
  CHECK(v["identity"] == "sonine");
  CHECK(v["pass"] == true);
  const Run pf = run({"verify", "--identity", "product-formula", "--q", "1", "--mu", "2", "--r", "1", "--s", "1",
                      "--samples", "20000", "--seed", "5", "--no-timestamp"});
  REQUIRE(pf.code == 0);
  const Json p = Json::parse(pf.out);
  CHECK(p["pass"] == true);
  CHECK(p["seed"] == 5);
  const Run bp = run({"verify", "--identity", "beta-projection", "--field", "R", "--ptilde", "2", "--q", "1", "--p",
                      "3", "--r", "3", "--samples", "5000", "--no-timestamp"});
  CHECK(bp.code == 0);
  CHECK(Json::parse(bp.out)["identity"] == "beta-projection");
}

TEST_CASE("results do not depend on the thread count") {
  std::vector<std::string> base{"verify", "--identity", "product-formula", "--q", "2", "--field", "C", "--mu", "3",
                                "--r", "1,0.5", "--s", "0.8,0.3", "--samples", "20000", "--seed", "9",
                                "--no-timestamp"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const Run a = run(one), b = run(four);
  REQUIRE(a.code == b.code);
  CHECK(Json::parse(a.out)["lhs"] == Json::parse(b.out)["lhs"]);
  CHECK(Json::parse(a.out)["rhs"] == Json::parse(b.out)["rhs"]);
}

TEST_CASE("seed from the environment") {
  std::vector<std::string> args{"sample", "--dist", "wishart", "--q", "2", "--p", "3", "--samples", "3"};
  setenv("CONEBESSEL_SEED", "17", 1);
  const Run env = run(args);
  unsetenv("CONEBESSEL_SEED");
  auto explicit_args = args;
  explicit_args.insert(explicit_args.end(), {"--seed", "17"});
  const Run flag = run(explicit_args);
  const Run zero = run(args);
  REQUIRE(env.code == 0);
  CHECK(env.out == flag.out);
  CHECK(env.out != zero.out);
}

TEST_CASE("config and matrix files") {
  const auto cfg = temp_file("cfg.txt", "# defaults\nfn=bessel\nq=1\nmu=1\nx=5\njson=true\n");
  const Run r = run({"eval", "--config", cfg.string(), "--x", "1"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["value"]["re"].get<double>() == doctest::Approx(0.22389077914123567));
  const auto mat = temp_file("x.txt", "2 0.5\n0.5 1\n");
  const Run m = run({"verify", "--identity", "laplace", "--q", "2", "--mu", "2", "--matrix-file", "y=" + mat.string(),
                     "--no-timestamp"});
  REQUIRE(m.code == 0);
  const Json v = Json::parse(m.out);
  CHECK(v["pass"] == true);
  CHECK(v["params"]["y"][0][1].get<double>() == doctest::Approx(0.5));
  const auto bad = temp_file("bad.txt", "1 2\n3\n");
  CHECK(run({"verify", "--identity", "laplace", "--q", "2", "--mu", "2", "--matrix-file", "y=" + bad.string()}).code ==
        2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(mat);
  std::filesystem::remove(bad);
}

TEST_CASE("sample CSV") {
  const Run r = run({"sample", "--dist", "beta", "--q", "1", "--mu", "2", "--nu", "3", "--samples", "4", "--seed", "1"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 5);
  CHECK(run({"sample", "--dist", "ball", "--q", "2", "--field", "R", "--mu", "0.75", "--samples", "4"}).code == 3);
}
