#include "blfsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blfsim/barrier.hpp"
#include "blfsim/observer.hpp"

namespace blfsim {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void resize(StepRecord& r, std::size_t n, std::size_t l) {
  r.Psi.resize(n);
  r.psi.resize(n);
  r.z.resize(n);
  r.Q.resize(n);
  r.eps_hat.resize(n);
  r.alpha.resize(n);
  r.v.resize(n - 1);
  r.zeta_dot.resize(n);
  r.theta_dot.resize(l);
}

}  // namespace

std::vector<Diagnostic> validate(const ControllerConfig& cfg, int n) {
  std::vector<Diagnostic> out;
  const auto size_ok = [&](std::size_t got, const char* path) {
    if (static_cast<int>(got) == n) return true;
    out.push_back({path, "expected " + std::to_string(n) + " entries, got " + std::to_string(got)});
    return false;
  };
  if (size_ok(cfg.gains.k.size(), "gains.k"))
    for (std::size_t i = 0; i < cfg.gains.k.size(); ++i)
      if (!positive(cfg.gains.k[i])) out.push_back({"gains.k[" + std::to_string(i) + "]", "must be > 0"});
  if (!positive(cfg.gains.lambda)) out.push_back({"gains.lambda", "must be > 0"});
  if (!positive(cfg.gains.eta)) out.push_back({"gains.eta", "must be > 0"});
  if (!positive(cfg.gains.delta)) out.push_back({"gains.delta", "must be > 0"});
  if (size_ok(cfg.observer_gains.size(), "observer_gains"))
    for (std::size_t i = 0; i < cfg.observer_gains.size(); ++i)
      if (!positive(cfg.observer_gains[i]))
        out.push_back({"observer_gains[" + std::to_string(i) + "]", "must be > 0"});
  size_ok(cfg.constraints.Psi.size(), "constraints.Psi");
  if (size_ok(cfg.constraints.A.size(), "constraints.A"))
    for (std::size_t i = 0; i < cfg.constraints.A.size(); ++i)
      if (!std::isfinite(cfg.constraints.A[i])) out.push_back({"constraints.A[" + std::to_string(i) + "]", "must be finite"});
  if (cfg.rbf.dimension() != n) out.push_back({"rbf", "network input dimension must equal plant order"});
  return out;
}

void compute_cascade(const ControllerConfig& cfg, double t, std::span<const double> x, std::span<const double> dhat,
                     std::span<const double> zeta, std::span<const double> theta, StepRecord& out) {
  const std::size_t n = x.size();
  const std::size_t l = theta.size();
  resize(out, n, l);
  out.t = t;
  out.y_ref = eval(cfg.reference, t);
  out.L_total = 0.0;

  double v_prev = out.y_ref;
  for (std::size_t i = 0; i < n; ++i) {
    const double Psi = eval(cfg.constraints.Psi[i], t);
    const double psi = Psi - cfg.constraints.A[i];
    // A_{i-1} is constant, so psi' = Psi'
    const double psi_dot = deriv(cfg.constraints.Psi[i], t);
    const double z = x[i] - v_prev;
    const BarrierSample sample{z, psi};
    if (!inside(sample)) throw BarrierViolation(static_cast<int>(i) + 1, t, z, psi);

    const double Q = q_value(sample);
    const double k_eps = cfg.observer_gains[i];
    const double eps_hat = estimate(dhat[i], k_eps, z);
    out.Psi[i] = Psi;
    out.psi[i] = psi;
    out.z[i] = z;
    out.Q[i] = Q;
    out.eps_hat[i] = eps_hat;
    out.L_total += blf_value(sample);

    const double common = cfg.gains.k[i] * z + eps_hat - (z / psi) * psi_dot;
    if (i + 1 < n) {
      const double alpha = common + Q;
      out.alpha[i] = alpha;
      out.v[i] = nussbaum(zeta[i]) * alpha;
      out.zeta_dot[i] = Q * alpha;
      v_prev = out.v[i];
      continue;
    }

    std::vector<double> phi = basis(cfg.rbf, x);
    double nn = 0.0;
    for (std::size_t j = 0; j < l; ++j) nn += theta[j] * phi[j];
    const double k_eps2 = k_eps * k_eps;
    const double alpha = common + 0.5 * Q + nn + safe_inv_q(Q, cfg.gains.delta) * k_eps2 * k_eps2 / 8.0;
    out.nn_out = nn;
    out.alpha[i] = alpha;
    out.u = nussbaum(zeta[i]) * alpha;
    out.zeta_dot[i] = Q * alpha;
    const double leak = k_eps2 + cfg.gains.eta;
    for (std::size_t j = 0; j < l; ++j) out.theta_dot[j] = cfg.gains.lambda * (Q * phi[j] - leak * theta[j]);
  }
}

StepRecord compute_cascade(const ControllerConfig& cfg, double t, std::span<const double> x,
                           std::span<const double> dhat, std::span<const double> zeta, std::span<const double> theta) {
  StepRecord r;
  compute_cascade(cfg, t, x, dhat, zeta, theta, r);
  return r;
}

std::vector<double> mu_values(std::span<const double> k, std::span<const double> observer_gains, double phi_bar,
                              double lambda, double eta) {
  const std::size_t n = k.size();
  std::vector<double> mu(n);
  for (std::size_t i = 0; i + 1 < n; ++i) mu[i] = std::min(2.0 * k[i], 2.0 * (observer_gains[i] - 1.0));
  if (n > 0) {
    const double observer_term = 2.0 * (observer_gains[n - 1] - 1.0 - 0.5 * phi_bar * phi_bar);
    mu[n - 1] = std::min({2.0 * k[n - 1], observer_term, lambda * eta});
  }
  return mu;
}

double z1_bound(double psi1, double varrho1, double mu1, double C) {
  if (!(mu1 > 0.0)) throw DiagnosticUnavailable("z1 bound needs mu_1 > 0");
  if (std::isinf(C)) return psi1;
  return psi1 * std::sqrt(1.0 - std::exp(-2.0 * varrho1 / mu1 - 2.0 * C));
}

}  // namespace blfsim
