#pragma once

#include <span>
#include <vector>

#include "blfsim/signals.hpp"

namespace blfsim {

/// coeff * prod_i x_i^exponents[i]
struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;

  bool operator==(const Monomial&) const = default;
};

/// Strict-feedback SISO plant
///
///   x_i' = x_{i+1} + d_i(t),            i < n
///   x_n' = f(x) + beta * u + d_n(t)
///
/// with f a multivariate polynomial. The controller never reads f or beta;
/// they only close the simulation loop.
class PlantSpec {
 public:
  /// Throws ConfigError when order < 2, beta == 0, a monomial has the wrong
  /// number of exponents (or a negative one), or disturbances.size() != order.
  PlantSpec(int order, std::vector<Monomial> f, double beta, std::vector<TimeSignal> disturbances);

  int order() const noexcept { return order_; }
  const std::vector<Monomial>& f() const noexcept { return f_; }
  double beta() const noexcept { return beta_; }
  const std::vector<TimeSignal>& disturbances() const noexcept { return disturbances_; }

  bool operator==(const PlantSpec&) const = default;

 private:
  int order_;
  std::vector<Monomial> f_;
  double beta_;
  std::vector<TimeSignal> disturbances_;
};

/// Evaluates the polynomial nonlinearity. Throws ConfigError if x.size() != order.
double eval_f(const PlantSpec& spec, std::span<const double> x);

/// Writes the state derivative into `dx` (size n).
void plant_rhs(const PlantSpec& spec, double t, std::span<const double> x, double u, std::span<double> dx);
std::vector<double> plant_rhs(const PlantSpec& spec, double t, std::span<const double> x, double u);

}  // namespace blfsim
