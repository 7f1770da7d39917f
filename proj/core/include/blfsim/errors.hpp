#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace blfsim {

/// A single field-level problem found while validating a configuration.
struct Diagnostic {
  std::string path;  // JSON-pointer-like location, e.g. "plant.beta"
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Invalid or incomplete configuration. Carries every diagnostic collected
/// before validation gave up.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  ConfigError(std::string path, std::string message);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// |z| >= psi at some level of the cascade. `level` is 1-based; 0 means the
/// caller did not know which level it was evaluating.
class BarrierViolation : public std::runtime_error {
 public:
  BarrierViolation(int level, double t, double z, double psi);

  int level() const noexcept { return level_; }
  double time() const noexcept { return t_; }
  double z() const noexcept { return z_; }
  double psi() const noexcept { return psi_; }

 private:
  int level_;
  double t_;
  double z_;
  double psi_;
};

/// The augmented state stopped being finite (overflow or NaN).
class NonFiniteState : public std::runtime_error {
 public:
  explicit NonFiniteState(double t);

  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// A diagnostic formula was asked for outside its domain (e.g. mu <= 0).
class DiagnosticUnavailable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace blfsim
