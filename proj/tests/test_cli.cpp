#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + PARSTAT_CLI_PATH + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
    r.out += buf.data();
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

} // namespace

TEST(Cli, ExactRow) {
  const auto r = run("exact --n-grid 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\r\n4,5,3/5,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(",9/5,"), std::string::npos);
}

TEST(Cli, AsymptAndJson) {
  const auto r = run("asympt --n-grid 100,1000 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"name\": \"asympt\""), std::string::npos) << r.out;
}

TEST(Cli, SampleIsReproducible) {
  const auto a = run("sample --n-grid 50 --samples 5 --seed 9");
  const auto b = run("sample --n-grid 50 --samples 5 --seed 9 --workers 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("sample --n-grid 50 --samples 5 --seed 9 --method exact").code, 0);
}

TEST(Cli, OeisCheckPasses) {
  const auto r = run("oeis-check");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("false"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("experiment not_a_kind").code, 1);
  EXPECT_EQ(run("experiment mnexact_convergence --n-grid 5,3").code, 1);
  EXPECT_EQ(run("experiment fristedt_check --n-grid 10 --samples 10").code, 1);
  EXPECT_EQ(run("exact").code, 1);
  EXPECT_EQ(run("oeis-check --n-grid 41").code, 1);
  EXPECT_EQ(run("experiment gumbel_ks --method other").code, 1);
}

TEST(Cli, BudgetExhaustionExitsThree) {
  EXPECT_EQ(run("sample --n-grid 1000000 --samples 1 --boltzmann-mode rejection --max-attempts 1")
                .code,
            3);
}

TEST(Cli, CacheDirFromEnvironment) {
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("parstat_cli_" + std::to_string(rd()) + std::to_string(rd()));
  const auto r = run("experiment eel_convergence --n-grid 100,300",
                     "PARSTAT_CACHE_DIR=" + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir));
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "parstat_cli_out.csv";
  EXPECT_EQ(run("experiment f2_direct_check --out " + path.string()).code, 0);
  EXPECT_TRUE(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
  EXPECT_EQ(run("experiment f2_direct_check --out /proc/nope/x.csv").code, 1);
}
