#include "blfsim/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blfsim/errors.hpp"

namespace blfsim {

RbfConfig::RbfConfig(int dimension, std::vector<std::vector<double>> centers, std::vector<double> widths)
    : dimension_(dimension), centers_(std::move(centers)), widths_(std::move(widths)) {
  std::vector<Diagnostic> problems;
  if (centers_.empty()) problems.push_back({"rbf.centers", "network needs at least one node"});
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const auto path = "rbf.centers[" + std::to_string(i) + "]";
    if (static_cast<int>(centers_[i].size()) != dimension_)
      problems.push_back({path, "center dimension must equal plant order " + std::to_string(dimension_)});
    for (double c : centers_[i])
      if (!std::isfinite(c)) problems.push_back({path, "center coordinates must be finite"});
  }
  if (widths_.size() != centers_.size())
    problems.push_back({"rbf.widths", "expected one width per center (" + std::to_string(centers_.size()) + ")"});
  for (std::size_t i = 0; i < widths_.size(); ++i)
    if (!(widths_[i] > 0.0) || !std::isfinite(widths_[i]))
      problems.push_back({"rbf.widths[" + std::to_string(i) + "]", "width must be finite and > 0"});
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

namespace {

// Exhaustive search over non-increasing factorizations; node counts are small.
void search_factors(int remaining, int slots, int cap, std::vector<int>& current, std::vector<int>& best) {
  if (slots == 0) {
    if (remaining != 1) return;
    if (best.empty() || current.front() < best.front() ||
        (current.front() == best.front() && std::lexicographical_compare(best.begin(), best.end(), current.begin(),
                                                                         current.end())))
      best = current;
    return;
  }
  for (int f = std::min(cap, remaining); f >= 1; --f) {
    if (remaining % f != 0) continue;
    current.push_back(f);
    search_factors(remaining / f, slots - 1, f, current, best);
    current.pop_back();
  }
}

}  // namespace

std::vector<int> lattice_axis_counts(int dimension, int nodes) {
  if (dimension < 1 || nodes < 1) throw ConfigError("rbf.nodes", "lattice needs dimension >= 1 and nodes >= 1");
  std::vector<int> current, best;
  search_factors(nodes, dimension, nodes, current, best);
  return best;
}

RbfConfig RbfConfig::lattice(int dimension, int nodes, double lower, double upper, double width) {
  if (!(lower < upper)) throw ConfigError("rbf.lattice", "lattice bounds need lower < upper");
  const auto counts = lattice_axis_counts(dimension, nodes);

  std::vector<std::vector<double>> axes;
  for (int m : counts) {
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
      axis[k] = m == 1 ? 0.5 * (lower + upper) : lower + (upper - lower) * k / static_cast<double>(m - 1);
    axes.push_back(std::move(axis));
  }

  std::vector<std::vector<double>> centers;
  std::vector<int> index(static_cast<std::size_t>(dimension), 0);
  for (int node = 0; node < nodes; ++node) {
    std::vector<double> c(static_cast<std::size_t>(dimension));
    for (int d = 0; d < dimension; ++d) c[d] = axes[d][index[d]];
    centers.push_back(std::move(c));
    for (int d = dimension - 1; d >= 0; --d) {
      if (++index[d] < counts[d]) break;
      index[d] = 0;
    }
  }
  return RbfConfig(dimension, std::move(centers), std::vector<double>(static_cast<std::size_t>(nodes), width));
}

void basis(const RbfConfig& cfg, std::span<const double> zbar, std::span<double> out) {
  const auto& centers = cfg.centers();
  const auto& widths = cfg.widths();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    double dist2 = 0.0;
    for (std::size_t d = 0; d < zbar.size(); ++d) {
      const double diff = zbar[d] - centers[i][d];
      dist2 += diff * diff;
    }
    out[i] = std::exp(-dist2 / widths[i]);
  }
}

std::vector<double> basis(const RbfConfig& cfg, std::span<const double> zbar) {
  std::vector<double> out(static_cast<std::size_t>(cfg.nodes()));
  basis(cfg, zbar, out);
  return out;
}

double output(const RbfConfig& cfg, std::span<const double> theta, std::span<const double> zbar) {
  const auto phi = basis(cfg, zbar);
  return std::inner_product(phi.begin(), phi.end(), theta.begin(), 0.0);
}

double basis_norm_bound(const RbfConfig& cfg) { return std::sqrt(static_cast<double>(cfg.nodes())); }

}  // namespace blfsim
