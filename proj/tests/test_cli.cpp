#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "zagier/config.hpp"

using namespace zagier;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with the given arguments (and optional config file).
RunResult run(const std::string& args, const std::string& config = "") {
  const char* cli = std::getenv("ZAGIER_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "ZAGIER_CLI must point at the zagier executable");
  std::string cmd;
  if (!config.empty()) cmd += "ZAGIER_CONFIG='" + config + "' ";
  else cmd += "env -u ZAGIER_CONFIG ";
  cmd += std::string("'") + cli + "' " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kData = ZAGIER_DATA_DIR;
const std::string kExamples = (kData / "examples").string();

fs::path temp_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("zagier_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config parsing and invariants") {
  Config c = parse_config(R"({"cache_dir": "/tmp/x", "precision_bits": 128, "tolerance": "1/1000"})");
  CHECK(c.cache_dir == "/tmp/x");
  CHECK(c.precision_bits == 128);
  CHECK(c.default_trunc == 64);
  CHECK(c.tolerance == mpq_class(1, 1000));
  CHECK(!c.seed_dir.empty());
  CHECK_THROWS(parse_config(R"({"precision_bits": 32})"));
  CHECK_THROWS(parse_config(R"({"default_trunc": 10})"));
  CHECK_THROWS(parse_config(R"({"tolerance": "-1/2"})"));
  CHECK_THROWS(parse_config(R"({"tolerance": "abc"})"));
  CHECK_THROWS(parse_config(R"({"precision": 128})"));  // unknown key
  CHECK_THROWS(parse_config(R"({"precision_bits": "many"})"));
  CHECK_THROWS(parse_config("[1, 2]"));
  CHECK_THROWS(parse_config("{"));
}

TEST_CASE("basis command") {
  RunResult r = run("basis --level 28 --weight2 -7 --m 12 --trunc 9");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kData / "examples" / "remark_28_m7_12.golden"));
  r = run("basis --level 5 --weight2 -4 --m 2 --trunc 6");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kData / "examples" / "f5_basis.golden"));
  CHECK(run("basis --level 11 --weight2 -4 --m 2").code == 2);
  CHECK(run("basis --level 20 --weight2 4 --m 2").code == 2);
  CHECK(run("basis --level 5 --weight2 -4").code == 2);  // missing --m
  CHECK(run("frobnicate").code == 2);
  // missing leads print the zero series
  r = run("basis --level 5 --weight2 -4 --m 1 --trunc 6");
  CHECK(r.code == 0);
  CHECK(r.out == "#qseries lead=6 trunc=6\n");
}

TEST_CASE("lift command reproduces the golden files") {
  RunResult r = run("lift --p 5 --s 2 --D 1 --trunc 16 " + kExamples + "/f5.qs");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kData / "examples" / "f5_lift_D1.golden"));
  r = run("lift --p 7 --s 3 --D -3 --trunc 9 " + kExamples + "/g7.qs");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kData / "examples" / "g7_lift_Dm3.golden"));
  CHECK(run("lift --p 5 --s 2 --D 8 " + kExamples + "/f5.qs").code == 0);
  CHECK(run("lift --p 5 --s 2 --D 12 " + kExamples + "/f5.qs").code == 0);
  CHECK(run("lift --p 5 --s 2 --D 9 " + kExamples + "/f5.qs").code == 2);  // not fundamental
  CHECK(run("lift --p 5 --s 2 --D 1 /nonexistent.qs").code == 2);
  const fs::path dir = temp_dir("lift");
  std::ofstream(dir / "empty.qs") << "#qseries lead=0 trunc=0\n";
  r = run("lift --p 5 --s 2 --D 1 --trunc 10 " + (dir / "empty.qs").string());
  CHECK(r.code == 0);
  CHECK(r.out == "#qseries lead=10 trunc=10\n");
  std::ofstream(dir / "missing.qs") << "#qseries lead=-1 trunc=0\n-1 1/1\n";
  CHECK(run("lift --p 5 --s 2 --D 1 " + (dir / "missing.qs").string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("trace command") {
  RunResult r = run("trace --p 5 --s 2 --D 1 --d -4 --d -11 --d -15 " + kExamples + "/f5.qs");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kData / "examples" / "f5_traces.golden"));
  CHECK(run("trace --p 5 --s 2 --D 1 --d 4 " + kExamples + "/f5.qs").code == 2);
  CHECK(run("trace --p 5 --s 2 --D 1 --d -4 --precision 32 " + kExamples + "/f5.qs").code == 2);
}

TEST_CASE("classes command") {
  RunResult r = run("classes --disc -4 --level 5 --digits 10");
  CHECK(r.code == 0);
  CHECK(r.out == "5 -4 1 2 1 0.4 0.2\n5 4 1 2 1 -0.4 0.2\n");
}

TEST_CASE("verify command and the corrupted-cache detector") {
  CHECK(run("verify duality --level 20").code == 0);
  CHECK(run("verify nonsense").code == 2);
  CHECK(run("verify duality --level 11").code == 2);
  const fs::path dir = temp_dir("verify");
  const std::string cfg = (dir / "config.json").string();
  std::ofstream(cfg) << R"({"cache_dir": ")" << (dir / "cache").string() << R"("})";
  CHECK(run("verify duality --level 5 --weight2 0", cfg).code == 0);
  const fs::path victim = dir / "cache" / "5" / "0" / "f" / "10.qs";
  REQUIRE(fs::exists(victim));
  std::string text = slurp(victim);
  const std::string from = "\n1 -1500/1\n", to = "\n1 -1501/1\n";
  REQUIRE(text.find(from) != std::string::npos);
  text.replace(text.find(from), from.size(), to);
  std::ofstream(victim) << text;
  RunResult r = run("verify duality --level 5 --weight2 0", cfg);
  CHECK(r.code == 1);
  CHECK(r.out.find("(m, l) = (10, 1)") != std::string::npos);
  std::ofstream(dir / "bad.json") << R"({"precision_bits": 16})";
  CHECK(run("verify duality --level 20", (dir / "bad.json").string()).code == 2);
  fs::remove_all(dir);
}
