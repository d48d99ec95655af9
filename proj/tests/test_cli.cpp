#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(INTREP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "intrep_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, BesselVerifyDefaultGrid) {
  const auto r = run("bessel-verify");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 27u);
  EXPECT_EQ(ls[0].rfind("# command=bessel-verify", 0), 0u);
  EXPECT_EQ(ls[1], "d,q,r,s,closed,numeric,residual,ok");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto f = split(ls[i], ',');
    ASSERT_EQ(f.size(), 8u) << ls[i];
    EXPECT_LE(std::stod(f[6]), 1e-6) << ls[i];
    if (std::stod(f[3]) == 0.0) EXPECT_LE(std::stod(f[6]), 1e-8) << ls[i];
    EXPECT_EQ(f[7], "true");
  }
}

TEST(Cli, HypothesisViolationIsConfigError) {
  EXPECT_EQ(run("bessel-verify --grid 'params=1:1:1'").code, 3);
  EXPECT_EQ(run("bessel-verify --grid 'params=2:2:0.5;s=1'").code, 3);
}

TEST(Cli, InvalidConfigIsExitThree) {
  EXPECT_EQ(run("bessel-verify --tol -1").code, 3);
  EXPECT_EQ(run("bessel-verify --tol 0").code, 3);
  EXPECT_EQ(run("converge --n-schedule 32,16").code, 3);
  EXPECT_EQ(run("bessel-verify --grid 'nonsense=1'").code, 3);
  EXPECT_EQ(run("bessel-verify --format xml").code, 3);
  EXPECT_EQ(run("no-such-command").code, 3);
  EXPECT_EQ(run("").code, 3);
  EXPECT_EQ(run("bessel-verify --config /nonexistent/intrep.cfg").code, 3);
  EXPECT_EQ(run("varnorm --input /nonexistent/samples.csv").code, 3);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, ViolationIsExitOne) {
  // x = 0.9 carries a few ulps of round-off
  EXPECT_EQ(run("counterexample --pointwise-tol 1e-300 --grid 'x=0.9'").code, 1);
}

TEST(Cli, GammaScanQOneHasZeroSlack) {
  const auto r = run("gamma-scan --grid 'q=1'");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 3u);
  EXPECT_EQ(ls[1], "a,s,q,d,lhs,rhs,slack,ok");
  for (std::size_t i = 2; i < ls.size(); ++i) EXPECT_LE(std::fabs(std::stod(split(ls[i], ',')[6])), 1e-12) << ls[i];
}

TEST(Cli, DeterministicOutput) {
  for (const char* cmd : {"converge --n-schedule 16,32,64", "varnorm", "gamma-scan"}) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    EXPECT_EQ(a.code, 0) << cmd;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

TEST(Cli, SeedChangesRandomizedRows) {
  const auto a = run("varnorm --seed 1");
  const auto b = run("varnorm --seed 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(a.out, b.out);
}

TEST(Cli, ConvergeHeaderAndMonotone) {
  const auto r = run("converge --n-schedule 16,64,256");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[1], "n,error,ratio,coef_sum,w_l1,coef_ok,monotone_ok");
  double prev = INFINITY;
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const double e = std::stod(split(ls[i], ',')[1]);
    EXPECT_LE(e, 1.05 * prev);
    prev = e;
  }
}

TEST(Cli, CounterexampleStrictlyIncreasing) {
  const auto r = run("counterexample");
  ASSERT_EQ(r.code, 0);
  double prev = -INFINITY;
  int truncated = 0;
  for (const auto& l : lines(r.out)) {
    const auto f = split(l, ',');
    if (f[0] != "truncated") continue;
    const double v = std::stod(f[2]);
    EXPECT_GT(v, prev);
    prev = v;
    ++truncated;
  }
  EXPECT_EQ(truncated, 5);
}

TEST(Cli, JsonFormat) {
  const auto r = run("bessel-verify --format json --grid 'params=1:2:1;s=0,1'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.front(), '{');
  EXPECT_NE(r.out.find("\"command\": \"bessel-verify\""), std::string::npos);
  EXPECT_NE(r.out.find("\"residual\": \"verify_prop61\""), std::string::npos);
  EXPECT_NE(r.out.find("\"violation\": false"), std::string::npos);
}

TEST(Cli, ConfigFileWithCommandLineOverride) {
  const auto cfg = scratch("run.cfg");
  {
    std::ofstream os(cfg);
    os << "# bessel rows\n"
       << "grid = params=1:2:1.5;s=0,2\n"
       << "tol = 1e-7\n"
       << "format = json\n";
  }
  const auto j = run("bessel-verify --config " + cfg.string());
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(j.out.front(), '{');

  const auto c = run("bessel-verify --config " + cfg.string() + " --format csv");
  ASSERT_EQ(c.code, 0);
  const auto ls = lines(c.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[2].rfind("1,2,1.5,0,", 0), 0u);
  EXPECT_EQ(ls[3].rfind("1,2,1.5,2,", 0), 0u);
}

TEST(Cli, OutWritesFile) {
  const auto path = scratch("gamma.csv");
  fs::remove(path);
  const auto r = run("gamma-scan --grid 's=1;a=0.5;q=2' --out " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  const auto ls = lines(ss.str());
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[2].rfind("0.5,1,2,2,", 0), 0u);
}

TEST(Cli, SeventeenSignificantDigits) {
  const auto r = run("bessel-verify --grid 'params=1:2:1;s=1'");
  ASSERT_EQ(r.code, 0);
  // closed = 2^{-1/2}
  EXPECT_NE(r.out.find(",0.70710678118654757,"), std::string::npos);
}

TEST(Cli, VarnormReadsSamples) {
  const auto path = scratch("samples.csv");
  {
    std::ofstream os(path);
    os << "x,value\n0,0\n0.5,1\n1,1\n";
  }
  const auto r = run("varnorm --input " + path.string());
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(split(ls[2], ',')[1], "1");
}

TEST(Cli, BoundsAndBvSucceed) {
  EXPECT_EQ(run("bounds --n-schedule 16").code, 0);
  EXPECT_EQ(run("bv --n-schedule 4").code, 0);
}
