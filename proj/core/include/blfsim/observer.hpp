#pragma once

#include <span>
#include <string>
#include <vector>

namespace blfsim {

/// Disturbance-observer algebra for the composite uncertainty at one level.
///
/// The auxiliary estimate dhat_i evolves so that eps_hat_i = dhat_i + k_i z_i
/// tracks eps_i; the estimation error then obeys eps_tilde' = eps' - k eps_tilde.

/// eps_hat_i = dhat_i + k_i z_i
inline double estimate(double dhat, double k, double z) noexcept { return dhat + k * z; }

/// dhat_i' = -k_i (x_{i+1} + eps_hat_i), inner levels i < n.
inline double dhat_dot_inner(double k, double x_next, double eps_hat) noexcept { return -k * (x_next + eps_hat); }

/// dhat_n' = -k_n (theta^T phi + u + eps_hat_n), final level.
inline double dhat_dot_final(double k, double nn_out, double u, double eps_hat) noexcept {
  return -k * (nn_out + u + eps_hat);
}

/// dhat_i(0) that makes eps_hat_i(0) = 0.
inline double zero_estimate_dhat(double k, double z0) noexcept { return -k * z0; }

/// Checks the sufficient stability conditions k_i > 1 (i < n) and
/// k_n > 1 + phi_bar^2 / 2. Returns one human-readable warning per failure;
/// an empty result means all conditions hold.
std::vector<std::string> observer_gain_warnings(std::span<const double> gains, double phi_bar);

}  // namespace blfsim
