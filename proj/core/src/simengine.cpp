#include "blfsim/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blfsim/observer.hpp"
#include "blfsim/plant.hpp"

namespace blfsim {

void rhs(const RunConfig& cfg, double t, std::span<const double> s, std::span<double> ds, StepRecord& record) {
  for (double v : s)
    if (!std::isfinite(v)) throw NonFiniteState(t);

  const auto n = static_cast<std::size_t>(cfg.order());
  const std::size_t l = s.size() - 3 * n;
  const auto x = s.subspan(0, n);
  const auto dhat = s.subspan(n, n);
  const auto zeta = s.subspan(2 * n, n);
  const auto theta = s.subspan(3 * n, l);

  compute_cascade(cfg.controller, t, x, dhat, zeta, theta, record);

  plant_rhs(cfg.plant, t, x, record.u, ds.subspan(0, n));

  const auto& k_eps = cfg.controller.observer_gains;
  for (std::size_t i = 0; i + 1 < n; ++i) ds[n + i] = dhat_dot_inner(k_eps[i], x[i + 1], record.eps_hat[i]);
  ds[2 * n - 1] = dhat_dot_final(k_eps[n - 1], record.nn_out, record.u, record.eps_hat[n - 1]);

  std::copy(record.zeta_dot.begin(), record.zeta_dot.end(), ds.begin() + static_cast<std::ptrdiff_t>(2 * n));
  std::copy(record.theta_dot.begin(), record.theta_dot.end(), ds.begin() + static_cast<std::ptrdiff_t>(3 * n));
}

std::vector<double> rhs(const RunConfig& cfg, double t, const AugmentedState& s) {
  std::vector<double> ds(s.data().size());
  StepRecord record;
  rhs(cfg, t, s.data(), ds, record);
  return ds;
}

AugmentedState rk4_step(const RunConfig& cfg, double t, const AugmentedState& s, double h) {
  AugmentedState next = s;
  Rk4Workspace ws;
  StepRecord record;
  rk4_step([&](double tt, std::span<const double> y, std::span<double> dy) { rhs(cfg, tt, y, dy, record); }, t,
           s.data(), h, next.data(), ws);
  return next;
}

AugmentedState initial_state(const RunConfig& cfg) {
  const int n = cfg.order();
  AugmentedState s(n, cfg.controller.rbf.nodes());
  std::copy(cfg.initial_x.begin(), cfg.initial_x.end(), s.x().begin());
  // z_i depends on dhat_1..dhat_{i-1} only, so one ordered pass suffices.
  StepRecord record;
  for (int i = 0; i < n; ++i) {
    compute_cascade(cfg.controller, 0.0, s.x(), s.dhat(), s.zeta(), s.theta(), record);
    s.dhat()[i] = zero_estimate_dhat(cfg.controller.observer_gains[i], record.z[i]);
  }
  return s;
}

namespace {

double norm(std::span<const double> v) {
  double acc = 0.0;
  for (double e : v) acc += e * e;
  return std::sqrt(acc);
}

class MetricsAccumulator {
 public:
  MetricsAccumulator(std::size_t n, std::size_t total_steps) : total_(total_steps) {
    m_.max_constraint_ratio.assign(n, 0.0);
    m_.max_error_ratio.assign(n, 0.0);
    m_.observed_max_abs_v.assign(n - 1, 0.0);
    m_.max_abs_zeta.assign(n, 0.0);
    m_.max_abs_eps_hat.assign(n, 0.0);
    m_.max_abs_eps_hat_rate.assign(n, 0.0);
  }

  void observe(std::size_t k, double h, const AugmentedState& s, const StepRecord& r) {
    const auto x = s.x();
    const std::size_t n = x.size();
    const double err = std::fabs(x[0] - r.y_ref);
    if (2 * k >= total_) {
      sum_sq_ += err * err;
      m_.tracking_max_tail = std::max(m_.tracking_max_tail, err);
      ++m_.tail_samples;
    }
    if (10 * k <= total_) m_.tracking_max_transient = std::max(m_.tracking_max_transient, err);

    for (std::size_t i = 0; i < n; ++i) {
      m_.max_constraint_ratio[i] = std::max(m_.max_constraint_ratio[i], std::fabs(x[i]) / r.Psi[i]);
      m_.max_error_ratio[i] = std::max(m_.max_error_ratio[i], std::fabs(r.z[i]) / r.psi[i]);
      m_.max_abs_zeta[i] = std::max(m_.max_abs_zeta[i], std::fabs(s.zeta()[i]));
      m_.max_abs_eps_hat[i] = std::max(m_.max_abs_eps_hat[i], std::fabs(r.eps_hat[i]));
      if (!prev_eps_hat_.empty())
        m_.max_abs_eps_hat_rate[i] =
            std::max(m_.max_abs_eps_hat_rate[i], std::fabs(r.eps_hat[i] - prev_eps_hat_[i]) / h);
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
      m_.observed_max_abs_v[i] = std::max(m_.observed_max_abs_v[i], std::fabs(r.v[i]));
    m_.max_abs_reference = std::max(m_.max_abs_reference, std::fabs(r.y_ref));
    m_.max_abs_u = std::max(m_.max_abs_u, std::fabs(r.u));
    const double theta_norm = norm(s.theta());
    m_.max_theta_norm = std::max(m_.max_theta_norm, theta_norm);
    m_.final_theta_norm = theta_norm;
    prev_eps_hat_ = r.eps_hat;
  }

  Metrics finish() {
    m_.tracking_rmse_tail = m_.tail_samples > 0 ? std::sqrt(sum_sq_ / static_cast<double>(m_.tail_samples))
                                                : std::numeric_limits<double>::quiet_NaN();
    return std::move(m_);
  }

 private:
  std::size_t total_;
  double sum_sq_ = 0.0;
  std::vector<double> prev_eps_hat_;
  Metrics m_;
};

Abort abort_from(const BarrierViolation& e, Abort::Kind kind) {
  return Abort{kind, e.level(), e.time(), e.z(), e.psi(), e.what()};
}

}  // namespace

SimResult run(const RunConfig& cfg) {
  SimResult result;
  result.order = cfg.order();
  result.nodes = cfg.controller.rbf.nodes();
  result.step = cfg.step;
  result.horizon = cfg.horizon;

  const auto n = static_cast<std::size_t>(cfg.order());
  const auto total = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.step));
  const auto decimation = static_cast<std::size_t>(cfg.decimation);
  MetricsAccumulator metrics(n, total);

  AugmentedState state;
  try {
    state = initial_state(cfg);
  } catch (const BarrierViolation& e) {
    result.abort = abort_from(e, Abort::Kind::InfeasibleInitialCondition);
    result.metrics = metrics.finish();
    return result;
  }

  AugmentedState next = state;
  std::vector<double> ds(state.data().size());
  StepRecord record;
  StepRecord stage_record;
  Rk4Workspace ws;
  const auto field = [&](double t, std::span<const double> y, std::span<double> dy) {
    rhs(cfg, t, y, dy, stage_record);
  };

  bool last_recorded = false;
  const auto push_record = [&](double t) {
    result.times.push_back(t);
    result.trajectory.push_back(state);
    result.records.push_back(record);
  };

  for (std::size_t k = 0;; ++k) {
    // Uniform grid: t_k = k h, never accumulated.
    const double t = static_cast<double>(k) * cfg.step;
    try {
      rhs(cfg, t, state.data(), ds, record);
    } catch (const BarrierViolation& e) {
      result.abort = abort_from(e, Abort::Kind::BarrierViolation);
      break;
    } catch (const NonFiniteState& e) {
      result.abort = Abort{Abort::Kind::NonFiniteState, 0, e.time(), 0.0, 0.0, e.what()};
      break;
    }
    metrics.observe(k, cfg.step, state, record);
    last_recorded = k % decimation == 0 || k == total;
    if (last_recorded) push_record(t);
    if (k == total) break;

    try {
      rk4_step(field, t, state.data(), cfg.step, next.data(), ws);
    } catch (const BarrierViolation& e) {
      result.abort = abort_from(e, Abort::Kind::BarrierViolation);
    } catch (const NonFiniteState& e) {
      result.abort = Abort{Abort::Kind::NonFiniteState, 0, e.time(), 0.0, 0.0, e.what()};
    }
    if (!result.abort && !std::all_of(next.data().begin(), next.data().end(), [](double v) {
          return std::isfinite(v);
        })) {
      const double t_next = static_cast<double>(k + 1) * cfg.step;
      result.abort = Abort{Abort::Kind::NonFiniteState, 0, t_next, 0.0, 0.0, NonFiniteState(t_next).what()};
    }
    if (result.abort) {
      if (!last_recorded) push_record(t);
      break;
    }
    std::swap(state, next);
    ++result.steps_taken;
  }

  result.metrics = metrics.finish();
  return result;
}

}  // namespace blfsim
