#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "blfsim/run_config.hpp"
#include "blfsim/simengine.hpp"

namespace blfsim {

/// Exit codes shared by the report and the CLI.
enum ExitCode : int { kExitPass = 0, kExitConfigError = 1, kExitTheoremFailure = 2 };

/// Column names: t, x_i, Psi_i, psi_i, z_i, v_1..v_{n-1}, u, eps_hat_i, zeta_i, theta_norm, y_d.
std::vector<std::string> csv_header(int n);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// One header line, then one row per recorded step.
void write_csv(const SimResult& result, std::ostream& out);
/// Throws std::runtime_error on I/O failure.
void emit_csv(const SimResult& result, const std::filesystem::path& path);

enum class Verdict { Pass, Fail, NotApplicable };

struct Report {
  Verdict constraints = Verdict::NotApplicable;
  Verdict boundedness = Verdict::NotApplicable;
  Verdict tracking = Verdict::NotApplicable;
  std::vector<double> mu;
  std::vector<std::string> warnings;
  std::string text;
  int exit_code = kExitPass;
};

/// Summarizes a run: one verdict per closed-loop property, the metrics,
/// the mu diagnostics and the ex-post check of the assumed bounds A_i.
///
/// Exit code: 1 when the initial condition is outside the barrier,
/// 2 when any property fails (barrier violation, non-finite state, state
/// constraint breach, no tracking improvement), 0 otherwise.
Report emit_report(const SimResult& result, const RunConfig& cfg);

}  // namespace blfsim
