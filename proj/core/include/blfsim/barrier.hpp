#pragma once

namespace blfsim {

/// Error coordinate z measured against its barrier radius psi (> 0).
struct BarrierSample {
  double z = 0.0;
  double psi = 1.0;
};

/// True when |z| < psi with psi > 0, i.e. the log-barrier is defined.
bool inside(BarrierSample s) noexcept;

// The functions below throw BarrierViolation (level 0) outside the barrier.

/// 1/2 log(psi^2 / (psi^2 - z^2))
double blf_value(BarrierSample s);

/// z / (psi^2 - z^2), the gradient factor of the log-barrier.
double q_value(BarrierSample s);

/// z^2/(psi^2 - z^2) - log(psi^2/(psi^2 - z^2)); positive whenever z != 0.
double lemma2_gap(BarrierSample s);

/// zeta^2 cos(zeta)
double nussbaum(double zeta) noexcept;

/// Smooth, odd stand-in for 1/q: q / (q^2 + delta). Bounded by 1/(2 sqrt(delta)).
double safe_inv_q(double q, double delta) noexcept;

}  // namespace blfsim
