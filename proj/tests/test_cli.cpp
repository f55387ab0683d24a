#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Output {
  int code;
  std::string out;
};

Output run(const std::string& args) {
  std::string cmd = std::string(DIGITLANG_CLI) + " " + args + " 2>/dev/null";
  Output o{-1, ""};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), p)) o.out += buf.data();
  int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

}  // namespace

TEST(Cli, CountWithOracle) {
  auto o = run("count preset:L1 --upto 4 --oracle");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("4\t8721\t8721"), std::string::npos) << o.out;
}

TEST(Cli, SpecFilesAndPresetsAgree) {
  auto a = run("--json count " + std::string(DIGITLANG_SPECS) + "/L2.json --upto 6");
  auto b = run("--json count preset:L2 --upto 6");
  ASSERT_EQ(a.code, 0);
  auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  EXPECT_EQ(ja["result"], jb["result"]);
  EXPECT_EQ(ja["manifest"]["spec"], jb["manifest"]["spec"]);
  EXPECT_EQ(ja["manifest"]["command"], "count");
  EXPECT_TRUE(ja["manifest"].contains("versions"));
}

TEST(Cli, RepeatRunsAreIdentical) {
  auto a = run("--json abscissa preset:L5 --empirical 6");
  auto b = run("--json abscissa preset:L5 --empirical 6");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GeneratingFunctions) {
  auto o = run("gf --base 10 --even 12 --odd 89");
  EXPECT_NE(o.out.find("(1 + 10x - x^2) / (1 - 10x + x^2)"), std::string::npos) << o.out;
  o = run("gf --base 10 --even 12 --odd 21");
  EXPECT_NE(o.out.find("(1 + 11x + 9x^2) / (1 - 9x - 9x^2)"), std::string::npos) << o.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("count").code, 2);                        // missing argument
  EXPECT_EQ(run("count /nonexistent.json").code, 2);      // unreadable spec
  EXPECT_EQ(run("count preset:nope").code, 2);            // unknown preset
  EXPECT_EQ(run("kernel preset:LJ").code, 3);             // non-regular
  EXPECT_EQ(run("eval preset:kempner --z 0.5").code, 3);  // divergent
  EXPECT_EQ(run("gf --even 123").code, 3);                // unsupported block length
  EXPECT_EQ(run("oeis lookup 1 2 3").code, 2);            // too few terms
  EXPECT_EQ(run("oeis --fixtures /nonexistent catalog").code, 4);
}

TEST(Cli, OutDirectoryGetsManifest) {
  std::string dir = testing::TempDir() + "digitlang_cli_out";
  auto o = run("--out " + dir + " evil abscissa");
  EXPECT_EQ(o.code, 0);
  FILE* f = fopen((dir + "/evil_abscissa.manifest.json").c_str(), "r");
  ASSERT_NE(f, nullptr);
  fclose(f);
}
