#include "blfsim/observer.hpp"

#include <sstream>

namespace blfsim {

std::vector<std::string> observer_gain_warnings(std::span<const double> gains, double phi_bar) {
  std::vector<std::string> warnings;
  const std::size_t n = gains.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool last = i + 1 == n;
    const double threshold = last ? 1.0 + 0.5 * phi_bar * phi_bar : 1.0;
    // phi_bar^2 is inexact when phi_bar = sqrt(l); treat a few-ulp margin as equality
    if (gains[i] > threshold + 1e-12 * threshold) continue;
    std::ostringstream msg;
    msg << "observer gain k_eps_" << (i + 1) << " = " << gains[i] << " does not exceed " << threshold;
    if (last) msg << " (1 + phi_bar^2/2 with phi_bar = " << phi_bar << ")";
    msg << "; the exponential convergence rate mu_" << (i + 1) << " is not positive";
    warnings.push_back(msg.str());
  }
  return warnings;
}

}  // namespace blfsim
