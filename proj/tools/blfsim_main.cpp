// blfsim: run barrier-constrained adaptive backstepping simulations.
//
//   blfsim simulate <config.json> [--out <csv>] [--report <txt>] [--step H] [--horizon T]
//   blfsim sweep <config.json>... [--jobs N]
//
// Exit codes: 0 all closed-loop properties hold, 1 configuration error,
// 2 barrier violation or another property failure.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "blfsim/config.hpp"
#include "blfsim/errors.hpp"
#include "blfsim/report.hpp"
#include "blfsim/simengine.hpp"

namespace {

struct SimulateOptions {
  std::string config;
  std::string out;
  std::string report;
  std::optional<double> step;
  std::optional<double> horizon;
};

blfsim::RunConfig load_with_overrides(const SimulateOptions& opts) {
  auto cfg = blfsim::load_config(opts.config);
  if (opts.step) cfg.step = *opts.step;
  if (opts.horizon) cfg.horizon = *opts.horizon;
  if (auto problems = blfsim::validate(cfg); !problems.empty()) throw blfsim::ConfigError(std::move(problems));
  return cfg;
}

int simulate(const SimulateOptions& opts) {
  blfsim::RunConfig cfg = [&] {
    try {
      return load_with_overrides(opts);
    } catch (const blfsim::ConfigError& e) {
      std::cerr << "blfsim: " << e.what() << "\n";
      throw;
    }
  }();

  const auto result = blfsim::run(cfg);
  const auto report = blfsim::emit_report(result, cfg);

  const std::string csv_path = opts.out.empty() ? cfg.output_path : opts.out;
  if (!csv_path.empty()) blfsim::emit_csv(result, csv_path);
  if (!opts.report.empty()) {
    std::ofstream out(opts.report);
    if (!out) throw std::runtime_error("cannot open '" + opts.report + "' for writing");
    out << report.text;
  }
  std::cout << report.text;
  return report.exit_code;
}

int sweep(const std::vector<std::string>& configs, unsigned jobs) {
  struct Outcome {
    int exit_code = blfsim::kExitConfigError;
    std::string line;
  };
  std::vector<Outcome> outcomes(configs.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const auto cfg = blfsim::load_config(configs[i]);
        const auto result = blfsim::run(cfg);
        const auto report = blfsim::emit_report(result, cfg);
        std::string line = configs[i] + ": exit " + std::to_string(report.exit_code);
        if (result.abort) line += " (" + result.abort->message + ")";
        else line += " rmse_tail=" + blfsim::format_double(result.metrics.tracking_rmse_tail);
        outcomes[i] = {report.exit_code, std::move(line)};
      } catch (const std::exception& e) {
        outcomes[i] = {blfsim::kExitConfigError, configs[i] + ": exit 1 (" + e.what() + ")"};
      }
    }
  };

  std::vector<std::jthread> pool;
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();

  int worst = blfsim::kExitPass;
  for (const auto& o : outcomes) {
    std::cout << o.line << "\n";
    worst = std::max(worst, o.exit_code);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive neural backstepping under time-varying state constraints"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run one closed-loop simulation");
  simulate_cmd->add_option("config", sim.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--out", sim.out, "CSV time-series output (defaults to output_path in the config)");
  simulate_cmd->add_option("--report", sim.report, "Write the text report to this file as well");
  simulate_cmd->add_option("--step", sim.step, "Override the integration step [s]");
  simulate_cmd->add_option("--horizon", sim.horizon, "Override the horizon [s]");

  std::vector<std::string> sweep_configs;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep_cmd = app.add_subcommand("sweep", "Run independent configurations concurrently");
  sweep_cmd->add_option("configs", sweep_configs, "JSON run configurations")->required();
  sweep_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : blfsim::kExitConfigError;
  }

  try {
    if (*simulate_cmd) return simulate(sim);
    return sweep(sweep_configs, jobs);
  } catch (const blfsim::ConfigError&) {
    return blfsim::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "blfsim: " << e.what() << "\n";
    return blfsim::kExitConfigError;
  }
}
