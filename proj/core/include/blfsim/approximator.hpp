#pragma once

#include <span>
#include <vector>

namespace blfsim {

/// Gaussian RBF network layout: l centers in R^n with one width each.
///
///   phi_i(zbar) = exp(-|zbar - c_i|^2 / b_i)
class RbfConfig {
 public:
  /// Throws ConfigError if there are no centers, center dimensions differ
  /// from `dimension`, widths.size() != centers.size(), or a width is not
  /// strictly positive.
  RbfConfig(int dimension, std::vector<std::vector<double>> centers, std::vector<double> widths);

  /// Deterministic lattice layout over [lower, upper]^n.
  ///
  /// The node count is factored into n per-axis counts m_1 >= ... >= m_n
  /// with the smallest possible largest factor (12 nodes in 2-D -> 4 x 3).
  /// Each axis holds m_j equally spaced points including both ends (a single
  /// point sits at the midpoint). Centers are enumerated row-major with the
  /// first coordinate varying slowest. All widths equal `width`.
  static RbfConfig lattice(int dimension, int nodes, double lower, double upper, double width);

  int dimension() const noexcept { return dimension_; }
  int nodes() const noexcept { return static_cast<int>(widths_.size()); }
  const std::vector<std::vector<double>>& centers() const noexcept { return centers_; }
  const std::vector<double>& widths() const noexcept { return widths_; }

  bool operator==(const RbfConfig&) const = default;

 private:
  int dimension_;
  std::vector<std::vector<double>> centers_;
  std::vector<double> widths_;
};

/// Per-axis counts used by RbfConfig::lattice.
std::vector<int> lattice_axis_counts(int dimension, int nodes);

void basis(const RbfConfig& cfg, std::span<const double> zbar, std::span<double> out);
std::vector<double> basis(const RbfConfig& cfg, std::span<const double> zbar);

/// theta^T phi(zbar)
double output(const RbfConfig& cfg, std::span<const double> theta, std::span<const double> zbar);

/// sqrt(l): every Gaussian is at most 1, so |phi| <= sqrt(l).
double basis_norm_bound(const RbfConfig& cfg);

}  // namespace blfsim
