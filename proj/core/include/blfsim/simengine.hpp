#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blfsim/controller.hpp"
#include "blfsim/rk4.hpp"
#include "blfsim/run_config.hpp"

namespace blfsim {

/// Flattened closed-loop state [x(n), dhat(n), zeta(n), theta(l)].
class AugmentedState {
 public:
  AugmentedState() = default;
  AugmentedState(int n, int l) : n_(n), l_(l), data_(static_cast<std::size_t>(3 * n + l), 0.0) {}

  static constexpr std::size_t dimension(int n, int l) { return static_cast<std::size_t>(3 * n + l); }

  int order() const noexcept { return n_; }
  int nodes() const noexcept { return l_; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::span<double> x() noexcept { return slice(0, n_); }
  std::span<double> dhat() noexcept { return slice(n_, n_); }
  std::span<double> zeta() noexcept { return slice(2 * n_, n_); }
  std::span<double> theta() noexcept { return slice(3 * n_, l_); }
  std::span<const double> x() const noexcept { return slice(0, n_); }
  std::span<const double> dhat() const noexcept { return slice(n_, n_); }
  std::span<const double> zeta() const noexcept { return slice(2 * n_, n_); }
  std::span<const double> theta() const noexcept { return slice(3 * n_, l_); }

  bool operator==(const AugmentedState&) const = default;

 private:
  std::span<double> slice(int off, int len) noexcept { return std::span<double>(data_).subspan(off, len); }
  std::span<const double> slice(int off, int len) const noexcept {
    return std::span<const double>(data_).subspan(off, len);
  }

  int n_ = 0;
  int l_ = 0;
  std::vector<double> data_;
};

/// Closed-loop derivative at (t, s). Evaluates the cascade once (into
/// `record`), then the plant with the resulting u, the observer, the zeta
/// integrators and the weight law. Throws BarrierViolation or NonFiniteState.
void rhs(const RunConfig& cfg, double t, std::span<const double> s, std::span<double> ds, StepRecord& record);
std::vector<double> rhs(const RunConfig& cfg, double t, const AugmentedState& s);

/// One RK4 step of the closed loop. Every stage is barrier-checked.
AugmentedState rk4_step(const RunConfig& cfg, double t, const AugmentedState& s, double h);

/// Initial augmented state: x(0) from the config, zeta(0) = 0, theta(0) = 0
/// and dhat_i(0) = -k_eps_i z_i(0) so every eps_hat_i(0) = 0.
/// Throws BarrierViolation if some |z_i(0)| >= psi_i(0).
AugmentedState initial_state(const RunConfig& cfg);

struct Abort {
  enum class Kind { InfeasibleInitialCondition, BarrierViolation, NonFiniteState };

  Kind kind = Kind::BarrierViolation;
  int level = 0;  // 1-based cascade level, 0 when not applicable
  double t = 0.0;
  double z = 0.0;
  double psi = 0.0;
  std::string message;
};

struct Metrics {
  double tracking_rmse_tail = 0.0;       // RMS of y - y_d over [T/2, T]
  double tracking_max_tail = 0.0;        // max |y - y_d| over [T/2, T]
  double tracking_max_transient = 0.0;   // max |y - y_d| over [0, T/10]
  std::vector<double> max_constraint_ratio;  // max |x_i| / Psi_i(t)
  std::vector<double> max_error_ratio;       // max |z_i| / psi_i(t)
  double max_abs_u = 0.0;
  double final_theta_norm = 0.0;
  double max_abs_reference = 0.0;            // observed max |v_0| = max |y_d|
  std::vector<double> observed_max_abs_v;    // v_1..v_{n-1}
  std::vector<double> max_abs_zeta;
  std::vector<double> max_abs_eps_hat;
  std::vector<double> max_abs_eps_hat_rate;  // finite difference between accepted steps
  double max_theta_norm = 0.0;
  std::size_t tail_samples = 0;
};

struct SimResult {
  std::vector<double> times;
  std::vector<AugmentedState> trajectory;
  std::vector<StepRecord> records;
  Metrics metrics;
  std::optional<Abort> abort;
  std::size_t steps_taken = 0;
  int order = 0;
  int nodes = 0;
  double step = 0.0;
  double horizon = 0.0;

  bool completed() const noexcept { return !abort.has_value(); }
};

/// Integrates the closed loop on [0, T] with fixed step h, recording every
/// `decimation`-th accepted step (plus t = 0 and the last accepted step).
/// Never continues past a barrier violation; the abort is reported in the
/// result together with everything accepted before it.
SimResult run(const RunConfig& cfg);

}  // namespace blfsim
