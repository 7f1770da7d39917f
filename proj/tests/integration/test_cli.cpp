#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Invocation {
  int exit_code = -1;
  std::string out;
};

Invocation cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BLFSIM_CLI_PATH + "\" " + args + " 2>&1";
  Invocation inv;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) inv.out.append(buf.data(), got);
  const int status = pclose(pipe);
  inv.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return inv;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name) : path(fs::temp_directory_path() / ("blfsim_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

std::string shell_arg(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("reference configuration exits with a property failure") {
  ScratchDir dir("reference");
  const auto csv = dir.path / "run.csv";
  const auto inv = cli("simulate " + shell_arg(blfsim::testing::config_path("paper_sec6.json")) + " --out " + shell_arg(csv));
  CHECK(inv.exit_code == 2);
  CHECK(inv.out.find("constraints: FAIL at level 2") != std::string::npos);
  CHECK(inv.out.find("WARNING: mu_2 = 0") != std::string::npos);
  CHECK(fs::exists(csv));
  CHECK(slurp(csv).rfind("t,x_1,x_2,", 0) == 0);
}

TEST_CASE("relaxed configuration passes and writes both outputs") {
  ScratchDir dir("relaxed");
  const auto csv = dir.path / "run.csv";
  const auto txt = dir.path / "report.txt";
  const auto inv = cli("simulate " + shell_arg(blfsim::testing::config_path("relaxed_envelope.json")) + " --out " +
                       shell_arg(csv) + " --report " + shell_arg(txt) + " --horizon 4");
  CHECK(inv.exit_code == 0);
  CHECK(inv.out.find("constraints: PASS") != std::string::npos);
  CHECK(slurp(txt) == inv.out);
  // horizon 4 at h = 1e-3, every 10th step: 401 rows plus the header
  std::istringstream rows(slurp(csv));
  std::string line;
  int count = 0;
  while (std::getline(rows, line)) ++count;
  CHECK(count == 402);
}

TEST_CASE("configuration errors exit with 1") {
  ScratchDir dir("bad");
  const auto bad = dir.path / "bad.json";
  std::ofstream(bad) << "{}";
  const auto inv = cli("simulate " + shell_arg(bad));
  CHECK(inv.exit_code == 1);
  CHECK(inv.out.find("plant") != std::string::npos);

  CHECK(cli("simulate " + shell_arg(dir.path / "missing.json")).exit_code == 1);
  CHECK(cli("simulate " + shell_arg(blfsim::testing::config_path("relaxed_envelope.json")) + " --step 0.003 --out " +
            shell_arg(dir.path / "x.csv"))
            .exit_code == 1);
  CHECK(cli("").exit_code == 1);
}

TEST_CASE("infeasible initial condition exits with 1") {
  ScratchDir dir("infeasible");
  std::string text = slurp(blfsim::testing::config_path("paper_sec6.json"));
  const auto pos = text.find("\"initial_x\"");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find(']', pos);
  text.replace(pos, end - pos + 1, "\"initial_x\": [0.0, 0.5]");
  const auto cfg = dir.path / "infeasible.json";
  std::ofstream(cfg) << text;
  const auto inv = cli("simulate " + shell_arg(cfg) + " --out " + shell_arg(dir.path / "x.csv"));
  CHECK(inv.exit_code == 1);
  CHECK(inv.out.find("initial error outside the barrier") != std::string::npos);
}

TEST_CASE("sweep reports the worst exit code") {
  const auto inv = cli("sweep --jobs 2 " + shell_arg(blfsim::testing::config_path("relaxed_envelope.json")) + " " +
                       shell_arg(blfsim::testing::config_path("paper_sec6.json")));
  CHECK(inv.exit_code == 2);
  CHECK(inv.out.find("relaxed_envelope.json: exit 0") != std::string::npos);
  CHECK(inv.out.find("paper_sec6.json: exit 2") != std::string::npos);
}
