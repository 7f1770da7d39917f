#include "blfsim/barrier.hpp"

#include <cmath>

#include "blfsim/errors.hpp"

namespace blfsim {

namespace {

// psi^2 - z^2 computed as (psi - |z|)(psi + |z|) to keep precision near the barrier.
double gap(BarrierSample s) {
  if (!inside(s)) throw BarrierViolation(0, 0.0, s.z, s.psi);
  const double az = std::fabs(s.z);
  return (s.psi - az) * (s.psi + az);
}

}  // namespace

bool inside(BarrierSample s) noexcept { return s.psi > 0.0 && std::fabs(s.z) < s.psi; }

double blf_value(BarrierSample s) {
  const double g = gap(s);
  // log(psi^2/g) = -log1p(-z^2/psi^2); log1p keeps small-z values exact
  const double r = s.z / s.psi;
  if (std::fabs(r) < 0.5) return -0.5 * std::log1p(-r * r);
  return 0.5 * std::log(s.psi * s.psi / g);
}

double q_value(BarrierSample s) { return s.z / gap(s); }

double lemma2_gap(BarrierSample s) {
  const double g = gap(s);
  const double ratio = s.z * s.z / g;  // z^2/(psi^2 - z^2)
  // log(psi^2/g) = log1p(ratio); the difference x - log1p(x) is positive for x > 0
  return ratio - std::log1p(ratio);
}

double nussbaum(double zeta) noexcept { return zeta * zeta * std::cos(zeta); }

double safe_inv_q(double q, double delta) noexcept { return q / (q * q + delta); }

}  // namespace blfsim
