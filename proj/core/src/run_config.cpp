#include "blfsim/run_config.hpp"

#include <cmath>
#include <string>

#include "blfsim/approximator.hpp"

namespace blfsim {

double RunConfig::effective_phi_bar() const { return phi_bar ? *phi_bar : basis_norm_bound(controller.rbf); }

std::vector<Diagnostic> validate(const RunConfig& cfg) {
  const int n = cfg.order();
  auto out = validate(cfg.controller, n);
  if (static_cast<int>(cfg.initial_x.size()) != n)
    out.push_back({"initial_x", "expected " + std::to_string(n) + " entries"});
  for (std::size_t i = 0; i < cfg.initial_x.size(); ++i)
    if (!std::isfinite(cfg.initial_x[i])) out.push_back({"initial_x[" + std::to_string(i) + "]", "must be finite"});
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) out.push_back({"simulation.step", "must be finite and > 0"});
  if (!(cfg.horizon >= 0.0) || !std::isfinite(cfg.horizon))
    out.push_back({"simulation.horizon", "must be finite and >= 0"});
  if (cfg.step > 0.0 && cfg.horizon >= 0.0 && std::isfinite(cfg.horizon / cfg.step)) {
    const double steps = cfg.horizon / cfg.step;
    if (std::fabs(steps - std::round(steps)) > 1e-6)
      out.push_back({"simulation.horizon", "must be an integer multiple of simulation.step"});
  }
  if (cfg.decimation < 1) out.push_back({"simulation.decimation", "must be >= 1"});
  if (cfg.phi_bar && !(*cfg.phi_bar >= 0.0)) out.push_back({"phi_bar", "must be >= 0"});
  return out;
}

}  // namespace blfsim
