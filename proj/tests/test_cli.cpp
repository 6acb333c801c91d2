// End-to-end checks of the CLI contract: point queries, rewrite rendering,
// exit codes, report emission.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(QJC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 256> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int rc = pclose(pipe);
  return {WEXITSTATUS(rc), out};
}

}  // namespace

TEST(Cli, QnumPointQuery) {
  auto r = run_cli("qnum --kind boson --n 3 --q 0.5");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "5.25\n");
  auto f = run_cli("qnum --kind fermion --n 2 --q 0.5");
  EXPECT_EQ(f.out, "0.5\n");
  auto fact = run_cli("qnum --kind boson --n 2 --q 0.5 --factorial");
  EXPECT_EQ(fact.out, "2.5\n");
}

TEST(Cli, RewriteSymbolic) {
  auto r = run_cli("rewrite \"a adag adag\" --q symbolic --out /tmp/qjc_cli_rw");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "q^2*adag^2 a + (q + q^-1)*adag qN(-1)\n");
}

TEST(Cli, RewriteSyntaxErrorExits2) {
  auto r = run_cli("rewrite \"a [unclosed\" --out /tmp/qjc_cli_rw");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("column 3"), std::string::npos);
}

TEST(Cli, UnknownSubcommandExits2) {
  auto r = run_cli("frobnicate");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, CompleteWritesReportAndPasses) {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "qjc_cli_complete";
  fs::remove_all(dir);
  auto r = run_cli("complete --q 0.5 --nb 6 --mf 4 --format both --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(fs::exists(dir / "complete.csv"));
  EXPECT_TRUE(fs::exists(dir / "complete.json"));
  std::ifstream in(dir / "complete.csv");
  std::string line, all;
  while (std::getline(in, line)) all += line + "\n";
  EXPECT_NE(all.find("q,n,m,diagonal,deviation"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, FailedCheckExits1) {
  auto r = run_cli("euler --q 0.9 --tol 1e-30 --out /tmp/qjc_cli_fail");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("failed: q-Euler"), std::string::npos);
}

TEST(Cli, StrictTightensTolerances) {
  // q = 0.5 margins are wide enough to survive the 100x tightening
  auto ok = run_cli("jc-trace --q 0.5 --strict --out /tmp/qjc_cli_strict");
  EXPECT_EQ(ok.exit_code, 0);
}
