#include <doctest.h>

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "blfsim/report.hpp"
#include "test_support.hpp"

using namespace blfsim;
using blfsim::testing::uniform;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

double parse(const std::string& cell) {
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  REQUIRE(res.ec == std::errc{});
  REQUIRE(res.ptr == cell.data() + cell.size());
  return v;
}

SimResult short_relaxed_run(double horizon = 1.0) {
  RunConfig cfg = blfsim::testing::relaxed_config();
  cfg.horizon = horizon;
  return run(cfg);
}

}  // namespace

TEST_CASE("csv header") {
  const auto h = csv_header(2);
  CHECK(h.size() == 17);  // 7n + 3
  CHECK(h == std::vector<std::string>{"t", "x_1", "x_2", "Psi_1", "Psi_2", "psi_1", "psi_2", "z_1", "z_2", "v_1", "u",
                                      "eps_hat_1", "eps_hat_2", "zeta_1", "zeta_2", "theta_norm", "y_d"});
  CHECK(csv_header(3).size() == 1 + 3 * 4 + 2 + 1 + 3 * 2 + 2);
}

TEST_CASE("empty result writes the header only") {
  SimResult empty;
  empty.order = 2;
  std::ostringstream out;
  write_csv(empty, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 1);
  CHECK(split(lines[0]).size() == csv_header(2).size());
}

TEST_CASE("first data row of the reference run") {
  const RunConfig cfg = blfsim::testing::sec6_config();
  const SimResult r = run(cfg);
  std::ostringstream out;
  write_csv(r, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() >= 2);
  const auto row = split(lines[1]);
  REQUIRE(row.size() == csv_header(2).size());
  CHECK(parse(row[0]) == 0.0);
  CHECK(parse(row[1]) == 0.0);
  CHECK(parse(row[2]) == 0.0);
  CHECK(parse(row[3]) == doctest::Approx(2.1).epsilon(1e-15));
  CHECK(parse(row[4]) == doctest::Approx(2.1).epsilon(1e-15));
}

TEST_CASE("csv cells parse back to the exact doubles") {
  const SimResult r = short_relaxed_run();
  std::ostringstream out;
  write_csv(r, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == r.records.size() + 1);
  for (std::size_t k = 0; k < r.records.size(); ++k) {
    const auto row = split(lines[k + 1]);
    REQUIRE(row.size() == 17);
    CHECK(parse(row[0]) == r.times[k]);
    CHECK(parse(row[1]) == r.trajectory[k].x()[0]);
    CHECK(parse(row[2]) == r.trajectory[k].x()[1]);
    CHECK(parse(row[9]) == r.records[k].v[0]);
    CHECK(parse(row[10]) == r.records[k].u);
    CHECK(parse(row[13]) == r.trajectory[k].zeta()[0]);
    CHECK(parse(row[14]) == r.trajectory[k].zeta()[1]);
    CHECK(parse(row[16]) == r.records[k].y_ref);
  }
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.0) == "-0");
  for (int trial = 0; trial < 10000; ++trial) {
    const double v = uniform(-1.0, 1.0) * std::pow(10.0, uniform(-300.0, 300.0));
    CHECK(parse(format_double(v)) == v);
  }
}

TEST_CASE("report of a barrier violation") {
  const RunConfig cfg = blfsim::testing::sec6_config();
  const Report rep = emit_report(run(cfg), cfg);
  CHECK(rep.constraints == Verdict::Fail);
  CHECK(rep.exit_code == kExitTheoremFailure);
  CHECK(rep.text.find("constraints: FAIL at level 2, t=") != std::string::npos);
  CHECK(rep.text.find("exit code: 2") != std::string::npos);
}

TEST_CASE("zero convergence rate raises a warning") {
  const RunConfig cfg = blfsim::testing::sec6_config();
  const Report rep = emit_report(run(cfg), cfg);
  REQUIRE(rep.mu.size() == 2);
  CHECK(rep.mu[0] == 10.0);
  CHECK(rep.text.find("mu_2 = 0\n") != std::string::npos);
  bool warned = false;
  for (const auto& w : rep.warnings) warned = warned || w.find("mu_2 = 0 is not positive") != std::string::npos;
  CHECK(warned);
  CHECK(rep.text.find("WARNING: mu_2 = 0") != std::string::npos);
}

TEST_CASE("report of a completed run") {
  const RunConfig cfg = blfsim::testing::relaxed_config();
  const Report rep = emit_report(run(cfg), cfg);
  CHECK(rep.constraints == Verdict::Pass);
  CHECK(rep.boundedness == Verdict::Pass);
  CHECK(rep.tracking == Verdict::Pass);
  CHECK(rep.exit_code == kExitPass);
  CHECK(rep.text.find("constraints: PASS") != std::string::npos);
  CHECK(rep.text.find("status: completed") != std::string::npos);
}

TEST_CASE("report of an infeasible start") {
  RunConfig cfg = blfsim::testing::sec6_config();
  cfg.initial_x = {1.5, 0.0};
  const Report rep = emit_report(run(cfg), cfg);
  CHECK(rep.exit_code == kExitConfigError);
  CHECK(rep.text.find("constraints: FAIL at level 1, t=0") != std::string::npos);
}

TEST_CASE("report of a level-1 violation") {
  const RunConfig cfg = blfsim::testing::relaxed_config();
  SimResult r = short_relaxed_run(0.5);
  r.abort = Abort{Abort::Kind::BarrierViolation, 1, 0.5, 1.2, 1.1, "barrier violated"};
  const Report rep = emit_report(r, cfg);
  CHECK(rep.constraints == Verdict::Fail);
  CHECK(rep.tracking == Verdict::Fail);
  CHECK(rep.exit_code == kExitTheoremFailure);
  CHECK(rep.text.find("constraints: FAIL at level 1, t=0.5") != std::string::npos);
}
