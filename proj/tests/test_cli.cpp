#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orbitavg/cli.hpp"

using namespace orbitavg;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "orbitavg");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("orbitavg_test_" + name);
}

}  // namespace

TEST_CASE("classify") {
  const Run r = run({"classify", "--theorem", "6", "--a", "1", "--r", "1", "--d", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Delta2=3452544 ") != std::string::npos);
  CHECK(r.out.find("count=1") != std::string::npos);

  const Run b = run({"classify", "--theorem", "5", "--a", "1.3888888889", "--l", "-1", "--d", "0.4166666667"});
  CHECK(b.code == 2);
  CHECK(b.out.find("boundary") != std::string::npos);

  const Run exact = run({"classify", "--theorem", "5", "--a", "25/18", "--l", "-1", "--d", "5/12"});
  CHECK(exact.code == 0);
  CHECK(exact.out.find("D=0 ") != std::string::npos);

  const Run h = run({"classify", "--theorem", "7", "--a", "sqrt(1/3)", "--r", "1", "--d", "1", "--l", "-sqrt(1/75)"});
  CHECK(h.code == 2);
  CHECK(h.out.find("D=2752 ") != std::string::npos);
  CHECK(h.out.find("count=3") != std::string::npos);

  const Run t8 = run({"classify", "--theorem", "8", "--r", "sqrt(31/16)", "--l", "1/20", "--d", "1"});
  CHECK(t8.code == 0);
  CHECK(t8.out.find("N5=-258261575/1048576") != std::string::npos);

  CHECK(run({"classify", "--subcase", "15", "--d", "1"}).out == "subcase=15 count=0\n");
  CHECK(run({"classify", "--theorem", "1"}).out.find("count=1") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({"classify", "--theorem", "9"}).code == 64);
  CHECK(run({"classify"}).code == 64);
  CHECK(run({"classify", "--theorem", "6", "--subcase", "3"}).code == 64);
  CHECK(run({"frobnicate", "--theorem", "6"}).code == 64);
  CHECK(run({"classify", "--theorem", "6", "--a", "one"}).code == 64);
  CHECK(run({"classify", "--theorem", "6", "--d", "-1"}).code == 64);
  CHECK(run({"classify", "--theorem", "6", "--r", "1/0"}).code == 64);
  CHECK(run({"verify", "--theorem", "1", "--eps", "0.5"}).code == 64);
  CHECK(run({"classify", "--theorem", "6", "--n1", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("predict") {
  const Run t2 = run({"predict", "--theorem", "2", "--a", "1.333333", "--d", "1"});
  CHECK(t2.code == 0);
  const auto l2 = lines(t2.out);
  REQUIRE(l2.size() == 2);
  CHECK(l2[0] == "x0,y0,det,trace,stability");
  CHECK(l2[1].rfind("1.0000", 0) == 0);
  CHECK(l2[1].find(",0,") != std::string::npos);
  CHECK(l2[1].substr(l2[1].size() - 10) == ",undecided");

  const Run t4 = run({"predict", "--theorem", "4", "--r", "1", "--d", "1"});
  CHECK(t4.out.find("unstable-repellor") != std::string::npos);

  const Run z = run({"predict", "--subcase", "16"});
  CHECK(z.code == 2);
  CHECK(z.err.find("zero first-order field") != std::string::npos);

  CHECK(lines(run({"predict", "--theorem", "6"}).out).size() == 4);
}

TEST_CASE("verify and sweep") {
  const Run v = run({"verify", "--theorem", "1", "--r", "1", "--d", "1", "--eps", "0.01"});
  CHECK(v.code == 0);
  const auto lv = lines(v.out);
  REQUIRE(lv.size() == 2);
  CHECK(lv[0] == "eps,x_pred,y_pred,x_star,y_star,error,residual,mult1_abs,mult2_abs,stability,status");
  std::vector<std::string> cells;
  std::istringstream row(lv[1]);
  for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 11);
  CHECK(std::stod(cells[5]) <= 0.5 * 0.01);
  CHECK(cells[9] == "stable");
  CHECK(cells[10] == "OK");

  const Run s = run({"sweep", "--theorem", "1", "--r", "1", "--d", "1", "--eps-list", "0.1,0.05,0.02,0.01"});
  CHECK(s.code == 0);
  CHECK(lines(s.out).size() == 5);
  const auto pos = s.err.find("SLOPE=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(s.err.substr(pos + 6)) >= 0.8);

  const Run empty = run({"sweep", "--theorem", "1", "--eps-list", ""});
  CHECK(empty.code == 0);
  CHECK(lines(empty.out).size() == 1);

  const auto path = temp("sweep.csv");
  const Run f = run({"sweep", "--theorem", "4", "--eps-list", "0.1,0.05", "--out", path.string()});
  CHECK(f.code == 0);
  CHECK(f.out.rfind("SLOPE=", 0) == 0);
  CHECK(lines(slurp(path)).size() == 3);
  std::filesystem::remove(path);

  CHECK(run({"verify", "--theorem", "4", "--m", "0"}).code == 2);
}

TEST_CASE("all-failing sweep exits 1") {
  ::setenv("ORBITAVG_TOL", "1e-30", 1);
  const Run r = run({"verify", "--theorem", "4", "--eps", "0.1"});
  ::unsetenv("ORBITAVG_TOL");
  CHECK(r.code == 1);
  CHECK(r.out.find(",FAIL") != std::string::npos);
  ::setenv("ORBITAVG_TOL", "-1", 1);
  CHECK(run({"verify", "--theorem", "4"}).code == 64);
  ::unsetenv("ORBITAVG_TOL");
}

TEST_CASE("config file and precedence") {
  const auto cfg = temp("run.cfg");
  {
    std::ofstream f(cfg);
    f << "# theorem 6 golden point\ntheorem = 6\na = 1\nr = 1\nd = 6\n";
  }
  const Run a = run({"classify", "--config", cfg.string()});
  CHECK(a.code == 0);
  CHECK(a.out.find("Delta2=3452544 ") != std::string::npos);
  const Run b = run({"classify", "--config", cfg.string(), "--a", "1/4", "--r", "3", "--d", "2"});
  CHECK(b.out.find("count=3") != std::string::npos);
  {
    std::ofstream f(cfg);
    f << "bogus = 1\n";
  }
  CHECK(run({"classify", "--theorem", "6", "--config", cfg.string()}).code == 64);
  std::filesystem::remove(cfg);
}

TEST_CASE("certify") {
  const Run c = run({"certify"});
  CHECK(c.code == 0);
  CHECK(c.out.find("expected=2752 ") != std::string::npos);
  CHECK(c.out.find("expected=-258261575/1048576 ") != std::string::npos);
  CHECK(c.out.find("status=FAIL") == std::string::npos);
  CHECK(run({"certify"}).out == c.out);
}

TEST_CASE("plot") {
  const Run a = run({"plot", "--theorem", "1"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("<svg", 0) == 0);
  CHECK(a.out.find("</svg>") != std::string::npos);
  CHECK(run({"plot", "--theorem", "1"}).out == a.out);
  // the orbit closes: first and last polyline vertices coincide within the line width
  const auto p0 = a.out.find("points=\"") + 8;
  const auto p1 = a.out.find('"', p0);
  std::istringstream pts(a.out.substr(p0, p1 - p0));
  std::vector<std::pair<double, double>> v;
  for (std::string tok; pts >> tok;) {
    const auto comma = tok.find(',');
    v.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
  }
  REQUIRE(v.size() == 513);
  CHECK(std::hypot(v.front().first - v.back().first, v.front().second - v.back().second) <= 1.5);

  const auto path = temp("plot.svg");
  CHECK(run({"plot", "--theorem", "8", "--out", path.string()}).code == 0);
  CHECK(slurp(path).find("<polyline") != std::string::npos);
  std::filesystem::remove(path);
}
