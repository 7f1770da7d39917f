#include "blfsim/errors.hpp"

#include <sstream>

namespace blfsim {

namespace {

std::string join(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  out << "invalid configuration";
  for (const auto& d : diagnostics) out << "\n  " << d.path << ": " << d.message;
  return out.str();
}

std::string describe_violation(int level, double t, double z, double psi) {
  std::ostringstream out;
  out.precision(17);
  out << "barrier violated";
  if (level > 0) out << " at level " << level;
  out << ", t=" << t << ": |z|=" << (z < 0 ? -z : z) << " >= psi=" << psi;
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ConfigError::ConfigError(std::string path, std::string message)
    : ConfigError(std::vector<Diagnostic>{{std::move(path), std::move(message)}}) {}

BarrierViolation::BarrierViolation(int level, double t, double z, double psi)
    : std::runtime_error(describe_violation(level, t, z, psi)), level_(level), t_(t), z_(z), psi_(psi) {}

NonFiniteState::NonFiniteState(double t)
    : std::runtime_error("state became non-finite at t=" + std::to_string(t)), t_(t) {}

}  // namespace blfsim
