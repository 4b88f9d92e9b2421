#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef TFAG_CLI
#error "TFAG_CLI must name the command line binary"
#endif

namespace {

struct Case {
  std::string name;
  std::vector<std::string> args;
};

void PrintTo(const Case& c, std::ostream* os) { *os << c.name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Case> load_cases() {
  std::vector<Case> out;
  std::istringstream in(slurp(std::string(TFAG_GOLDEN_DIR) + "/cases.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    Case c{line.substr(0, tab), {}};
    std::istringstream words(line.substr(tab + 1));
    for (std::string w; words >> w;) c.args.push_back(w);
    out.push_back(std::move(c));
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// stdout and stderr of the CLI run from the samples directory, then "[exit N]"
std::string run(const std::vector<std::string>& args) {
  std::string cmd = "cd " + quote(TFAG_SAMPLES_DIR) + " && " + quote(TFAG_CLI);
  for (auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "popen failed";
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  out += "[exit " + std::to_string(WEXITSTATUS(status)) + "]\n";
  return out;
}

class Golden : public ::testing::TestWithParam<Case> {};

TEST_P(Golden, MatchesAcrossRunsAndThreads) {
  const Case& c = GetParam();
  std::string want = slurp(std::string(TFAG_GOLDEN_DIR) + "/" + c.name + ".out");
  ASSERT_FALSE(want.empty()) << c.name;
  EXPECT_EQ(run(c.args), want);
  EXPECT_EQ(run(c.args), want);
  auto threaded = c.args;
  threaded.push_back("--threads");
  threaded.push_back("4");
  EXPECT_EQ(run(threaded), want);
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(load_cases()),
                         [](const auto& info) { return info.param.name; });

TEST(CliErrors, ExitCodes) {
  EXPECT_NE(run({"member", "missing.grp", "--vector", "(1)"}).find("[exit 1]"), std::string::npos);
  EXPECT_EQ(run({"member", "G1.grp", "--vector", "(1,2,3)"}).substr(0, 6), "error:");
  EXPECT_NE(run({"frobnicate"}).find("[exit 1]"), std::string::npos);
  EXPECT_NE(run({"member", "G1.grp", "--vector", "(1,2,3)"}).find("[exit 1]"), std::string::npos);
}

}  // namespace
