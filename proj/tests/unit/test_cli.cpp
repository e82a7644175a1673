#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(VANDCOND_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, CondOnDft) {
  const CliRun r = run("cond --gen dft --n 16");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("n,sigma1,sigma_min,kappa,log10kappa,trustworthy\n16,", 0), 0u);
  EXPECT_NE(r.out.find(",true"), std::string::npos);
}

TEST(Cli, BoundsEmitsJsonLines) {
  const CliRun r = run("bounds --gen quasi-cyclic --n 48");
  ASSERT_EQ(r.code, 0);
  std::size_t lines = 0, pos = 0;
  bool saw_base = false;
  while (pos < r.out.size()) {
    const auto end = r.out.find('\n', pos);
    const auto j = nlohmann::json::parse(r.out.substr(pos, end - pos));
    EXPECT_TRUE(j.contains("bound_id"));
    EXPECT_TRUE(j.contains("applicable"));
    saw_base = saw_base || j.at("bound_id") == "QuasiCyclic-base";
    ++lines;
    pos = end + 1;
  }
  EXPECT_GE(lines, 8u);
  EXPECT_TRUE(saw_base);
}

TEST(Cli, TableT4Markdown) {
  const CliRun r = run("table --id 4 --sizes 8,16");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("| n | q | kappa |"), std::string::npos);
  EXPECT_NE(r.out.find("1.53E+01"), std::string::npos);
}

TEST(Cli, GenpCsv) {
  const CliRun r = run("genp --n 16 --trials 3 --seed 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("n,trials,seed,mean_rn,std_rn\n16,3,7,", 0), 0u);
}

TEST(Cli, InvertLogDomain) {
  const CliRun r = run("invert --gen dft --n 4 --method cv --log-domain --f 0.6,0.8");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("i,j,log10mag,phase\n", 0), 0u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("cond --gen nope --n 4").code, 2);
  EXPECT_EQ(run("cond --gen dft").code, 2);
  EXPECT_EQ(run("table --id 9").code, 2);
  EXPECT_EQ(run("bounds --knots /nonexistent/knots.txt").code, 2);
}

TEST(Cli, NumericFailuresExitThree) {
  EXPECT_EQ(run("table --id 3 --sizes 13").code, 3);
}
