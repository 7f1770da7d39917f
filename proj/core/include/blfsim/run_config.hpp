#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blfsim/controller.hpp"
#include "blfsim/plant.hpp"

namespace blfsim {

/// One closed-loop experiment: plant, controller, initial state and the
/// integration grid. Build it with parse_config() to get full validation.
struct RunConfig {
  PlantSpec plant;
  ControllerConfig controller;
  std::vector<double> initial_x;
  double horizon = 20.0;  // s
  double step = 1e-3;     // s
  int decimation = 10;    // record every m-th step
  std::optional<double> phi_bar;  // overrides sqrt(l) in the mu_n diagnostic
  std::string output_path;

  int order() const noexcept { return plant.order(); }
  double effective_phi_bar() const;

  bool operator==(const RunConfig&) const = default;
};

/// All field-level problems with an assembled configuration (empty when valid).
std::vector<Diagnostic> validate(const RunConfig& cfg);

}  // namespace blfsim
