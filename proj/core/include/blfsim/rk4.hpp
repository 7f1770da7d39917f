#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blfsim {

/// Scratch storage for rk4_step so repeated steps do not allocate.
struct Rk4Workspace {
  std::vector<double> k1, k2, k3, k4, stage;

  void resize(std::size_t dim) {
    k1.resize(dim);
    k2.resize(dim);
    k3.resize(dim);
    k4.resize(dim);
    stage.resize(dim);
  }
};

/// Classic fourth-order Runge-Kutta step of y' = f(t, y).
///
/// `f(t, y, dy)` writes the derivative into dy. Exceptions thrown by any
/// stage propagate and leave `out` untouched. `out` may alias `y`.
template <class Field>
void rk4_step(Field&& f, double t, std::span<const double> y, double h, std::span<double> out, Rk4Workspace& ws) {
  const std::size_t dim = y.size();
  ws.resize(dim);

  f(t, y, std::span<double>(ws.k1));
  for (std::size_t i = 0; i < dim; ++i) ws.stage[i] = y[i] + 0.5 * h * ws.k1[i];
  f(t + 0.5 * h, std::span<const double>(ws.stage), std::span<double>(ws.k2));
  for (std::size_t i = 0; i < dim; ++i) ws.stage[i] = y[i] + 0.5 * h * ws.k2[i];
  f(t + 0.5 * h, std::span<const double>(ws.stage), std::span<double>(ws.k3));
  for (std::size_t i = 0; i < dim; ++i) ws.stage[i] = y[i] + h * ws.k3[i];
  f(t + h, std::span<const double>(ws.stage), std::span<double>(ws.k4));

  for (std::size_t i = 0; i < dim; ++i)
    out[i] = y[i] + h / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

}  // namespace blfsim
