#include "blfsim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "blfsim/controller.hpp"
#include "blfsim/observer.hpp"

namespace blfsim {

std::vector<std::string> csv_header(int n) {
  std::vector<std::string> cols{"t"};
  const auto add = [&](const char* name, int count) {
    for (int i = 1; i <= count; ++i) cols.push_back(std::string(name) + "_" + std::to_string(i));
  };
  add("x", n);
  add("Psi", n);
  add("psi", n);
  add("z", n);
  add("v", n - 1);
  cols.push_back("u");
  add("eps_hat", n);
  add("zeta", n);
  cols.push_back("theta_norm");
  cols.push_back("y_d");
  return cols;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const SimResult& result, std::ostream& out) {
  const auto header = csv_header(result.order);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';

  std::string row;
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& r = result.records[k];
    const auto& s = result.trajectory[k];
    row.clear();
    const auto put = [&](double v) {
      if (!row.empty()) row += ',';
      row += format_double(v);
    };
    const auto put_all = [&](std::span<const double> vs) {
      for (double v : vs) put(v);
    };
    put(result.times[k]);
    put_all(s.x());
    put_all(r.Psi);
    put_all(r.psi);
    put_all(r.z);
    put_all(r.v);
    put(r.u);
    put_all(r.eps_hat);
    put_all(s.zeta());
    double th = 0.0;
    for (double w : s.theta()) th += w * w;
    put(std::sqrt(th));
    put(r.y_ref);
    out << row << '\n';
  }
}

void emit_csv(const SimResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(result, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

namespace {

const char* label(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "n/a";
  }
  return "?";
}

std::string list(std::span<const double> vs) {
  std::ostringstream out;
  out.precision(6);
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? ", " : "") << vs[i];
  return out.str();
}

}  // namespace

Report emit_report(const SimResult& result, const RunConfig& cfg) {
  Report rep;
  const int n = cfg.order();
  const auto& m = result.metrics;
  std::ostringstream out;
  out.precision(6);

  const std::size_t total_steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.step));
  out << "closed-loop run: n=" << n << ", l=" << cfg.controller.rbf.nodes() << ", h=" << cfg.step
      << " s, T=" << cfg.horizon << " s\n";
  out << "steps accepted: " << result.steps_taken << "/" << total_steps << "\n";

  const bool infeasible = result.abort && result.abort->kind == Abort::Kind::InfeasibleInitialCondition;
  const bool barrier = result.abort && result.abort->kind == Abort::Kind::BarrierViolation;
  const bool non_finite = result.abort && result.abort->kind == Abort::Kind::NonFiniteState;

  if (result.abort) out << "status: aborted (" << result.abort->message << ")\n";
  else out << "status: completed\n";
  out << "\n";

  // constraints: the error barrier held and every |x_i| < Psi_i(t)
  if (infeasible) {
    rep.constraints = Verdict::Fail;
    out << "constraints: FAIL at level " << result.abort->level
        << ", t=0 (initial error outside the barrier: |z|=" << std::fabs(result.abort->z)
        << ", psi=" << result.abort->psi << ")\n";
  } else if (barrier) {
    rep.constraints = Verdict::Fail;
    out << "constraints: FAIL at level " << result.abort->level << ", t=" << result.abort->t
        << " (|z|=" << std::fabs(result.abort->z) << ", psi=" << result.abort->psi << ")\n";
  } else {
    int breached = 0;
    for (int i = 0; i < n; ++i)
      if (!(m.max_constraint_ratio[i] < 1.0)) breached = breached ? breached : i + 1;
    rep.constraints = breached || non_finite ? Verdict::Fail : Verdict::Pass;
    out << "constraints: " << label(rep.constraints);
    if (breached) out << " (|x_" << breached << "| reached Psi_" << breached << ")";
    out << "\n";
  }
  if (!infeasible) {
    out << "  max |x_i|/Psi_i: " << list(m.max_constraint_ratio) << "\n";
    out << "  max |z_i|/psi_i: " << list(m.max_error_ratio) << "\n";
  }

  // boundedness
  if (infeasible) {
    rep.boundedness = Verdict::NotApplicable;
  } else {
    rep.boundedness = non_finite ? Verdict::Fail : Verdict::Pass;
  }
  out << "boundedness: " << label(rep.boundedness);
  if (non_finite) out << " (non-finite state at t=" << result.abort->t << ")";
  out << "\n";
  if (!infeasible) {
    out << "  max |zeta_i|: " << list(m.max_abs_zeta) << "\n";
    out << "  max |eps_hat_i|: " << list(m.max_abs_eps_hat) << "\n";
    out << "  max |d eps_hat_i/dt|: " << list(m.max_abs_eps_hat_rate) << "\n";
    out << "  max |theta|: " << m.max_theta_norm << ", final |theta|: " << m.final_theta_norm << "\n";
    out << "  max |u|: " << m.max_abs_u << "\n";
  }

  // tracking: the tail error must be below the early transient
  if (result.abort || cfg.horizon <= 0.0 || m.tail_samples == 0) {
    rep.tracking = result.abort ? Verdict::Fail : Verdict::NotApplicable;
  } else {
    rep.tracking = m.tracking_max_tail < m.tracking_max_transient || m.tracking_max_tail == 0.0 ? Verdict::Pass
                                                                                                : Verdict::Fail;
  }
  if (infeasible) rep.tracking = Verdict::NotApplicable;
  out << "tracking: " << label(rep.tracking) << "\n";
  if (!infeasible) {
    out << "  rmse |y - y_d| over [T/2, T]: " << m.tracking_rmse_tail << "\n";
    out << "  max |y - y_d| over [T/2, T]: " << m.tracking_max_tail << "\n";
    out << "  max |y - y_d| over [0, T/10]: " << m.tracking_max_transient << "\n";
  }

  // the state-constraint argument assumes |v_{i-1}| <= A_{i-1}
  out << "\nassumed virtual-control bounds:\n";
  if (!infeasible) {
    for (int i = 0; i < n; ++i) {
      const double observed = i == 0 ? m.max_abs_reference : m.observed_max_abs_v[i - 1];
      const double A = cfg.controller.constraints.A[i];
      const bool ok = observed <= A;
      out << "  A_" << i << " = " << A << ": observed max |v_" << i << "| = " << observed << (ok ? "  ok" : "  EXCEEDED")
          << "\n";
      if (!ok) {
        std::ostringstream w;
        w << "observed max |v_" << i << "| = " << observed << " exceeds A_" << i << " = " << A
          << "; the state-constraint guarantee does not apply";
        rep.warnings.push_back(w.str());
      }
    }
  }

  const double phi_bar = cfg.effective_phi_bar();
  rep.mu = mu_values(cfg.controller.gains.k, cfg.controller.observer_gains, phi_bar, cfg.controller.gains.lambda,
                     cfg.controller.gains.eta);
  out << "\nconvergence rates (phi_bar = " << phi_bar << "):\n";
  for (int i = 0; i < n; ++i) {
    // phi_bar^2 = l is inexact for non-square l, so a zero rate can land a few ulps off 0
    const double tol = 1e-12 * std::max(1.0, 2.0 * cfg.controller.gains.k[i]);
    const double shown = std::fabs(rep.mu[i]) <= tol ? 0.0 : rep.mu[i];
    out << "  mu_" << (i + 1) << " = " << shown << "\n";
    if (!(rep.mu[i] > tol)) {
      std::ostringstream w;
      w << "mu_" << (i + 1) << " = " << shown << " is not positive; the exponential bound for level " << (i + 1)
        << " does not hold for these gains";
      rep.warnings.push_back(w.str());
    }
  }
  for (auto& w : observer_gain_warnings(cfg.controller.observer_gains, phi_bar)) rep.warnings.push_back(std::move(w));

  if (!rep.warnings.empty()) {
    out << "\n";
    for (const auto& w : rep.warnings) out << "WARNING: " << w << "\n";
  }

  if (infeasible) rep.exit_code = kExitConfigError;
  else if (rep.constraints == Verdict::Fail || rep.boundedness == Verdict::Fail || rep.tracking == Verdict::Fail)
    rep.exit_code = kExitTheoremFailure;
  else rep.exit_code = kExitPass;
  out << "\nexit code: " << rep.exit_code << "\n";

  rep.text = out.str();
  return rep;
}

}  // namespace blfsim
