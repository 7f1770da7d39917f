#pragma once

#include <span>
#include <vector>

#include "blfsim/approximator.hpp"
#include "blfsim/errors.hpp"
#include "blfsim/signals.hpp"

namespace blfsim {

struct GainConfig {
  std::vector<double> k;  // k_1..k_n
  double lambda = 1.0;    // adaptation rate
  double eta = 1.0;       // weight leakage
  double delta = 1e-4;    // regularizer for the 1/Q_n term

  bool operator==(const GainConfig&) const = default;
};

/// State envelopes |x_i| < Psi_i(t) and the assumed bounds A_{i-1} >= |v_{i-1}|.
/// The error coordinate z_i is confined to psi_i(t) = Psi_i(t) - A_{i-1}.
struct ConstraintConfig {
  std::vector<TimeSignal> Psi;
  std::vector<double> A;  // A_0..A_{n-1}

  bool operator==(const ConstraintConfig&) const = default;
};

/// Everything the cascade reads. The plant is deliberately absent.
struct ControllerConfig {
  GainConfig gains;
  std::vector<double> observer_gains;  // k_eps_1..k_eps_n
  ConstraintConfig constraints;
  TimeSignal reference;  // y_d
  RbfConfig rbf;

  int order() const noexcept { return static_cast<int>(gains.k.size()); }

  bool operator==(const ControllerConfig&) const = default;
};

/// Field-level problems with a controller configuration of order n.
std::vector<Diagnostic> validate(const ControllerConfig& cfg, int n);

/// Controller internals at one instant.
struct StepRecord {
  double t = 0.0;
  double y_ref = 0.0;
  std::vector<double> Psi;       // Psi_i(t)
  std::vector<double> psi;       // psi_i(t) = Psi_i(t) - A_{i-1}
  std::vector<double> z;
  std::vector<double> Q;
  std::vector<double> eps_hat;
  std::vector<double> alpha;
  std::vector<double> v;         // v_1..v_{n-1}
  double u = 0.0;
  double nn_out = 0.0;           // theta^T phi(x)
  std::vector<double> zeta_dot;
  std::vector<double> theta_dot;
  double L_total = 0.0;          // sum of log-barrier values

  bool operator==(const StepRecord&) const = default;
};

/// Evaluates the backstepping cascade left to right at time t.
///
/// For i < n:
///   z_i = x_i - v_{i-1}                 (v_0 = y_d(t))
///   alpha_i = k_i z_i + eps_hat_i + Q_i - (z_i/psi_i) psi_i'
///   v_i = N(zeta_i) alpha_i,  zeta_i' = Q_i alpha_i
/// and at level n
///   alpha_n = k_n z_n + eps_hat_n + Q_n/2 - (z_n/psi_n) psi_n' + theta^T phi(x)
///             + inv(Q_n) k_eps_n^4 / 8
///   u = N(zeta_n) alpha_n,  zeta_n' = Q_n alpha_n
///   theta' = lambda (Q_n phi - k_eps_n^2 theta - eta theta)
/// where inv(q) = q/(q^2 + delta) replaces the singular 1/q.
///
/// Throws BarrierViolation (with the 1-based level and t) as soon as some
/// |z_i| >= psi_i(t), including when psi_i(t) <= 0.
void compute_cascade(const ControllerConfig& cfg, double t, std::span<const double> x, std::span<const double> dhat,
                     std::span<const double> zeta, std::span<const double> theta, StepRecord& out);
StepRecord compute_cascade(const ControllerConfig& cfg, double t, std::span<const double> x,
                           std::span<const double> dhat, std::span<const double> zeta, std::span<const double> theta);

/// Exponential rates of the per-level Lyapunov bounds:
///   mu_i = min(2 k_i, 2 (k_eps_i - 1))                            i < n
///   mu_n = min(2 k_n, 2 (k_eps_n - 1 - phi_bar^2 / 2), lambda eta)
/// Diagnostic only; a non-positive entry means the sufficient condition fails.
std::vector<double> mu_values(std::span<const double> k, std::span<const double> observer_gains, double phi_bar,
                              double lambda, double eta);

/// Asymptotic tracking-error bound psi_1 sqrt(1 - exp(-2 varrho_1/mu_1 - 2 C)).
/// C bounds the Nussbaum integral terms and must be supplied by the caller.
/// Throws DiagnosticUnavailable when mu1 <= 0.
double z1_bound(double psi1, double varrho1, double mu1, double C);

}  // namespace blfsim
