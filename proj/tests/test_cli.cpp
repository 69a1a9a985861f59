#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lds/copula.hpp"
#include "lds/discrepancy.hpp"
#include "lds/sequences.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LDS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/lds_cli_test_") + name;
}

}  // namespace

TEST_CASE("generate vdc single point") {
  auto r = run("generate --family vdc --base 2 --n 1");
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
}

TEST_CASE("generate ls emits the first 8 exact points") {
  auto r = run("generate --family ls --L 1 --S 1 --n 8");
  CHECK(r.code == 0);
  auto pts = lds::sequences::ls_points(lds::partitions::make_ls_params(1, 1), 8);
  std::istringstream is(r.out);
  std::string line;
  size_t i = 0;
  while (std::getline(is, line)) {
    REQUIRE(i < pts.size());
    CHECK(std::stod(line) == doctest::Approx(pts[i].to_double()).epsilon(1e-15));
    ++i;
  }
  CHECK(i == 8);
}

TEST_CASE("generate with exact column") {
  auto r = run("generate --family ls --L 1 --S 1 --n 3 --exact");
  CHECK(r.code == 0);
  CHECK(r.out.find("·α") != std::string::npos);
}

TEST_CASE("identical invocations are bit-identical") {
  std::string args = "generate --family beta-halton --system 1,0,1 --n 64";
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  std::string cb = "copula-bound --integrand sin-sum --sense max --level 4";
  auto j1 = json::parse(run(cb).out), j2 = json::parse(run(cb).out);
  CHECK(j1["lb"] == j2["lb"]);
  CHECK(j1["ub"] == j2["ub"]);
  CHECK(j1["sigma"] == j2["sigma"]);
}

TEST_CASE("csv round trip matches in-process discrepancy") {
  std::string csv = temp_path("halton.csv");
  auto g = run("generate --family halton --bases 2,3 --n 200 --output " + csv);
  REQUIRE(g.code == 0);
  auto d = run("discrepancy --input " + csv);
  REQUIRE(d.code == 0);
  json rep = json::parse(d.out);

  auto stream = lds::sequences::make_halton_stream({2, 3});
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(stream->next().x);
  auto expect = lds::discrepancy::star_discrepancy_multi(pts);
  CHECK(rep["dn_star"].get<double>() == expect.dn_star);
  CHECK(rep["N"] == 200);
  CHECK(rep["method"] == "grid-exact");
  std::remove(csv.c_str());
}

TEST_CASE("1-D csv round trip reproduces the in-process report exactly") {
  std::string csv = temp_path("vdc.csv");
  REQUIRE(run("generate --family vdc --base 2 --n 128 --output " + csv).code == 0);
  json rep = json::parse(run("discrepancy --input " + csv).out);
  auto stream = lds::sequences::make_vdc_stream(2);
  std::vector<double> pts;
  for (int i = 0; i < 128; ++i) pts.push_back(stream->next().x[0]);
  auto expect = lds::discrepancy::discrepancy_1d(pts);
  CHECK(rep["dn"].get<double>() == expect.dn);
  CHECK(rep["dn_star"].get<double>() == expect.dn_star);
  std::remove(csv.c_str());
}

TEST_CASE("output is independent of the worker-thread count") {
  std::string base = "copula-bound --integrand product --sense max --level 6 --sampler grid:4";
  auto with_env = [&](const std::string& threads) {
    std::string cmd = "env LDS_THREADS=" + threads + " " + std::string(LDS_CLI_PATH) + " " +
                      base + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    pclose(p);
    return out;
  };
  json a = json::parse(with_env("1"));
  json b = json::parse(with_env("7"));
  CHECK(a["lb"] == b["lb"]);
  CHECK(a["ub"] == b["ub"]);
  CHECK(a["sigma"] == b["sigma"]);
}

TEST_CASE("discrepancy of an in-process family") {
  auto d = run("discrepancy --family vdc --base 2 --n 64");
  REQUIRE(d.code == 0);
  json rep = json::parse(d.out);
  CHECK(rep["method"] == "exact-1d");
  CHECK(rep["dn"].get<double>() > 0);
}

TEST_CASE("copula-bound json fields") {
  auto r = run("copula-bound --integrand sin-sum --sense max --level 5 --sampler exact");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  auto expect = lds::copula::sandwich_bounds(lds::copula::exact_extrema_sin_sum(), 5,
                                             lds::copula::Sense::max);
  CHECK(rep["lb"].get<double>() == expect.lb);
  CHECK(rep["ub"].get<double>() == expect.ub);
  CHECK(rep["n"] == 5);
  CHECK(rep.contains("runtime_ms"));
  CHECK(rep["sigma"].is_array());
}

TEST_CASE("ftd subcommand emits both senses") {
  auto r = run("ftd --level 3 --sampler grid:4");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["max"]["ub"].get<double>() >= rep["max"]["lb"].get<double>());
  CHECK(rep["min"]["ub"].get<double>() >= rep["min"]["lb"].get<double>());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("generate --family nope --n 4").code == 2);
  CHECK(run("generate --n 4").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("copula-bound --sense sideways").code == 2);
}

TEST_CASE("computation errors exit with 1") {
  std::string csv = temp_path("bad.csv");
  {
    std::ofstream os(csv);
    os << "0.5,junk\n";
  }
  CHECK(run("discrepancy --input " + csv).code == 1);
  std::remove(csv.c_str());
}

TEST_CASE("verify subcommand") {
  auto r = run("verify --n 400");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS orbit-identity") != std::string::npos);
  CHECK(r.out.find("PASS conjugacy") != std::string::npos);
}
