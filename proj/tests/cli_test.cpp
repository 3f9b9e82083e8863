#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fermat/census.hpp"
#include "fermat/cli.hpp"
#include "fermat/error.hpp"
#include "fermat/expr.hpp"
#include "support/golden.hpp"

namespace fermat {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t k = text.find(needle); k != std::string::npos; k = text.find(needle, k + 1)) ++n;
  return n;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("fermat_cli_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

class ReportDirUnset : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv(cli::kReportDirEnv); }
};

TEST(Expr, ParsesArithmetic) {
  Tower t({{5, 7}, true});
  const TowerElem x0 = t.gen_x(0), y0 = t.gen_y(0), x1 = t.gen_x(1);
  const TowerElem want =
      t.add(t.sub(t.mul(x0, x0), t.mul(t.rational(Rational(3, 4)), y0)), t.inv(t.add(x1, t.integer(2))));
  EXPECT_EQ(parse_element(t, "x0^2 - 3/4*y0 + 1/(x1+2)"), want);
  EXPECT_EQ(parse_element(t, " -x0 ^ -2"), t.neg(t.inv(t.mul(x0, x0))));
  EXPECT_EQ(parse_element(t, "(2^3)^2"), t.integer(64));
  EXPECT_EQ(parse_element(t, "z1"), z_element(t, 1));
  EXPECT_TRUE(t.eq(parse_element(t, "x0^5 + y0^5"), t.one()));
  EXPECT_EQ(parse_element(t, "123456789012345678901234567890"),
            t.rational(Rational(Integer("123456789012345678901234567890"))));
}

TEST(Expr, Errors) {
  Tower t({{5}});
  for (const char* bad : {"", "x", "x1", "(x0", "x0)", "x0 +", "2 ** 3", "w0", "x0^y0", "1e3", "2^3^2"}) {
    EXPECT_THROW(parse_element(t, bad), ConfigError) << bad;
  }
  EXPECT_THROW(parse_element(t, "x0/(x0-x0)"), DivisionByZero);
  EXPECT_THROW(parse_element(t, "0^-1"), DivisionByZero);
}

TEST(RunConfig, RoundTrip) {
  cli::RunConfig c;
  EXPECT_EQ(cli::RunConfig::parse(c.serialize()), c);
  c.command = "basis";
  c.primes = {5, 7, 11};
  c.unchecked = true;
  c.op = "annihilator";
  c.element = "x0*y1 + 1/2";
  c.gens = {"x0", "z1"};
  c.spec = "swap=0;relabel=2,1";
  c.seed = 18446744073709551615ULL;
  c.output = "out dir/report.txt";
  const cli::RunConfig back = cli::RunConfig::parse(c.serialize());
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.serialize(), c.serialize());
  c.primes.clear();
  c.gens.clear();
  EXPECT_EQ(cli::RunConfig::parse(c.serialize()), c);
}

TEST(RunConfig, ParseRejectsGarbage) {
  EXPECT_THROW(cli::RunConfig::parse("colour: red\n"), ConfigError);
  EXPECT_THROW(cli::RunConfig::parse("count: -1\n"), ConfigError);
  EXPECT_THROW(cli::RunConfig::parse("unchecked: yes\n"), ConfigError);
  EXPECT_THROW(cli::RunConfig::parse("seed: 18446744073709551616\n"), ConfigError);
  EXPECT_THROW(cli::RunConfig::parse("just text\n"), ConfigError);
}

TEST(RunConfig, ArgsMatchConfig) {
  const cli::RunConfig c = cli::parse_args(
      {"synthesize", "--primes", "5,7", "--unchecked", "--levels", "2", "--spec", "swap=all", "--seed", "9"});
  EXPECT_EQ(c.command, "synthesize");
  EXPECT_EQ(c.primes, (std::vector<std::uint64_t>{5, 7}));
  EXPECT_TRUE(c.unchecked);
  EXPECT_EQ(c.levels, 2u);
  EXPECT_EQ(c.spec, "swap=all");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_NO_THROW(c.validate());
}

TEST_F(ReportDirUnset, ScheduleListsTheFirstTwoPrimes) {
  const CliRun r = run_cli({"schedule", "--count", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("p0: 5\n"), std::string::npos);
  EXPECT_NE(r.out.find("p1: 2309\n"), std::string::npos);
  EXPECT_NE(r.out.find("p0: genus=6 threshold=2304\n"), std::string::npos);
  EXPECT_TRUE(testing::matches_golden("schedule_2.txt", r.out));
}

TEST_F(ReportDirUnset, CensusCatalogReport) {
  const CliRun r = run_cli({"census", "--primes", "5", "--level", "0", "--bound", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("entries: 8\n"), std::string::npos);
  EXPECT_EQ(count_of(r.out, "  proof: x^5 + y^5 = 1\n"), 8u);
  EXPECT_NE(r.out.find("found: 8\n"), std::string::npos);
  EXPECT_EQ(count_of(r.out, "FAIL"), 0u);
  EXPECT_TRUE(testing::matches_golden("census_5_level0_bound500.txt", r.out));
}

TEST_F(ReportDirUnset, SynthesizeIdentity) {
  const CliRun r = run_cli({"synthesize", "--primes", "5", "--levels", "1", "--samples", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verify_hom: samples=200 checks=600 failures=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("verify_image level 0: relabeling 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nfailures: 0\n"), std::string::npos);
  EXPECT_TRUE(testing::matches_golden("synthesize_5_identity.txt", r.out));
}

TEST_F(ReportDirUnset, BuildAndScrambleDumps) {
  const CliRun b = run_cli({"build", "--primes", "5", "--dump", "8"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_TRUE(testing::matches_golden("build_5_dump8.txt", b.out));
  const CliRun s = run_cli({"scramble", "--primes", "5,7", "--unchecked", "--spec", "swap=0;relabel=3,1",
                         "--seed", "2024", "--dump", "6"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(testing::matches_golden("scramble_5_7_dump6.txt", s.out));
}

TEST_F(ReportDirUnset, BasisOperations) {
  const CliRun a = run_cli({"basis", "--op", "annihilator", "--primes", "5", "--element", "y0", "--gens", "x0"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("witness: T^5 + (g0^5 - 1)\n"), std::string::npos);
  EXPECT_NE(a.out.find("c0 = (g0^5 - 1)/(1)\n"), std::string::npos);
  EXPECT_TRUE(testing::matches_golden("basis_annihilator_y0_x0.txt", a.out));

  const CliRun m = run_cli({"basis", "--op", "member", "--primes", "5", "--element", "z0"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("member: true\nn: 0\n"), std::string::npos);
  const CliRun n = run_cli({"basis", "--op", "member", "--primes", "5", "--element", "x0 + 1"});
  ASSERT_EQ(n.code, 0) << n.err;
  EXPECT_NE(n.out.find("member: false\n"), std::string::npos);

  const CliRun d = run_cli({"basis", "--op", "interdep", "--primes", "5", "--level", "0"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(count_of(d.out, "witness vanishes: pass"), 2u);
}

struct ExitCase {
  std::vector<std::string> args;
  int code;
  const char* reason;
};

TEST_F(ReportDirUnset, ExitCodesAndReasons) {
  const std::vector<ExitCase> cases = {
      {{}, 2, "usage"},
      {{"bogus"}, 2, "usage"},
      {{"schedule"}, 2, "usage"},
      {{"schedule", "--count", "2", "--bound", "3"}, 2, "usage"},
      {{"census", "--primes", "5", "--level", "-1", "--bound", "9"}, 2, "usage"},
      {{"census", "--primes", "5", "--level", "3", "--bound", "10"}, 2, "invalid-config"},
      {{"census", "--primes", "4", "--level", "0", "--bound", "10"}, 2, "invalid-config"},
      {{"census", "--primes", "7", "--level", "0", "--bound", "10"}, 2, "invalid-config"},
      {{"basis", "--op", "member", "--primes", "5", "--element", "x0+"}, 2, "invalid-config"},
      {{"basis", "--op", "annihilator", "--primes", "5", "--element", "x0"}, 2, "invalid-config"},
      {{"basis", "--op", "guess", "--primes", "5", "--element", "x0"}, 2, "invalid-config"},
      {{"scramble", "--primes", "5", "--spec", "relabel=9", "--seed", "1", "--dump", "2"}, 2, "invalid-config"},
      {{"synthesize", "--primes", "5", "--levels", "2"}, 2, "invalid-config"},
      {{"basis", "--op", "annihilator", "--primes", "5", "--element", "1/0", "--gens", "x0"}, 1,
       "division-by-zero"},
      {{"census", "--primes", "5", "--level", "0", "--bound", "4"}, 3, "insufficient-bound"},
      {{"synthesize", "--primes", "5", "--levels", "1", "--budget", "1"}, 3, "budget-exhausted"},
      {{"basis", "--op", "member", "--primes", "5,7", "--unchecked", "--element", "x1", "--max-prefix", "1"},
       3, "budget-exhausted"},
      {{"schedule", "--count", "6"}, 5, "resource-limit"},
  };
  for (const auto& c : cases) {
    const CliRun r = run_cli(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(r.code, c.code) << joined << "\n" << r.err;
    EXPECT_NE(r.err.find(std::string("reason: ") + c.reason + "\n"), std::string::npos) << joined << r.err;
    EXPECT_TRUE(r.out.empty()) << joined;
    if (c.code == 2) EXPECT_NE(r.err.find("usage:\n"), std::string::npos) << joined;
  }
}

TEST_F(ReportDirUnset, HelpPrintsGrammar) {
  const CliRun r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fermat-tower census"), std::string::npos);
}

TEST_F(ReportDirUnset, OutputOptionAndEnvironmentDirectory) {
  const auto dir = scratch_dir("out");
  const CliRun o = run_cli({"schedule", "--count", "2", "--output", (dir / "a" / "s.txt").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  const std::string file = slurp(dir / "a" / "s.txt");
  EXPECT_NE(file.find("p1: 2309\n"), std::string::npos);

  setenv(cli::kReportDirEnv, (dir / "env").c_str(), 1);
  const CliRun e = run_cli({"schedule", "--count", "2"});
  unsetenv(cli::kReportDirEnv);
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_TRUE(e.out.empty());
  EXPECT_EQ(slurp(dir / "env" / "schedule.txt"), run_cli({"schedule", "--count", "2"}).out);
}

TEST_F(ReportDirUnset, ConfigFileReplaysTheRun) {
  const auto dir = scratch_dir("cfg");
  const std::vector<std::string> args = {"scramble", "--primes", "5",   "--spec",
                                         "swap=0",   "--seed",   "77", "--dump", "5"};
  const CliRun direct = run_cli(args);
  ASSERT_EQ(direct.code, 0) << direct.err;
  std::ofstream(dir / "c.txt") << cli::parse_args(args).serialize();
  const CliRun replay = run_cli({"--config", (dir / "c.txt").string()});
  ASSERT_EQ(replay.code, 0) << replay.err;
  EXPECT_EQ(replay.out, direct.out);
}

TEST_F(ReportDirUnset, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> runs = {
      {"census", "--primes", "5", "--level", "0", "--bound", "200"},
      {"synthesize", "--primes", "5,7", "--unchecked", "--levels", "2", "--spec", "swap=all", "--seed", "4",
       "--samples", "100"},
      {"scramble", "--primes", "5", "--spec", "relabel=4", "--seed", "3", "--dump", "6"},
  };
  for (const auto& a : runs) {
    const CliRun first = run_cli(a), second = run_cli(a);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out) << a[0];
  }
}

}  // namespace
}  // namespace fermat
