#include "blfsim/plant.hpp"

#include <cmath>
#include <string>

#include "blfsim/errors.hpp"

namespace blfsim {

PlantSpec::PlantSpec(int order, std::vector<Monomial> f, double beta, std::vector<TimeSignal> disturbances)
    : order_(order), f_(std::move(f)), beta_(beta), disturbances_(std::move(disturbances)) {
  std::vector<Diagnostic> problems;
  if (order_ < 2) problems.push_back({"plant.order", "plant order must be >= 2"});
  if (!std::isfinite(beta_) || beta_ == 0.0)
    problems.push_back({"plant.beta", "control coefficient beta must be finite and nonzero; the controller requires beta != 0"});
  for (std::size_t m = 0; m < f_.size(); ++m) {
    const auto path = "plant.f[" + std::to_string(m) + "]";
    if (!std::isfinite(f_[m].coeff)) problems.push_back({path + ".coeff", "coefficient must be finite"});
    if (static_cast<int>(f_[m].exponents.size()) != order_)
      problems.push_back({path + ".exponents", "expected " + std::to_string(order_) + " exponents"});
    for (int e : f_[m].exponents)
      if (e < 0) problems.push_back({path + ".exponents", "exponents must be non-negative"});
  }
  if (static_cast<int>(disturbances_.size()) != order_)
    problems.push_back({"plant.disturbances", "expected " + std::to_string(order_) + " disturbance signals"});
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

double eval_f(const PlantSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.order())
    throw ConfigError("x", "state length " + std::to_string(x.size()) + " does not match plant order " +
                               std::to_string(spec.order()));
  double acc = 0.0;
  for (const auto& m : spec.f()) {
    double term = m.coeff;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int p = 0; p < m.exponents[i]; ++p) term *= x[i];
    }
    acc += term;
  }
  return acc;
}

void plant_rhs(const PlantSpec& spec, double t, std::span<const double> x, double u, std::span<double> dx) {
  const int n = spec.order();
  const auto& d = spec.disturbances();
  for (int i = 0; i + 1 < n; ++i) dx[i] = x[i + 1] + eval(d[i], t);
  dx[n - 1] = eval_f(spec, x) + spec.beta() * u + eval(d[n - 1], t);
}

std::vector<double> plant_rhs(const PlantSpec& spec, double t, std::span<const double> x, double u) {
  std::vector<double> dx(static_cast<std::size_t>(spec.order()));
  plant_rhs(spec, t, x, u, dx);
  return dx;
}

}  // namespace blfsim
