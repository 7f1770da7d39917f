#pragma once

#include <variant>
#include <vector>

namespace blfsim {

/// Closed family of bounded scalar time signals with analytic derivatives.
/// Used for disturbances, the reference trajectory and constraint envelopes.
class TimeSignal {
 public:
  struct Constant {
    double c = 0.0;
    bool operator==(const Constant&) const = default;
  };

  enum class Wave { Sin, Cos };

  /// amplitude * wave(angular_frequency * t + phase)
  struct Sinusoid {
    double amplitude = 0.0;
    double angular_frequency = 0.0;
    double phase = 0.0;
    Wave wave = Wave::Sin;
    bool operator==(const Sinusoid&) const = default;
  };

  /// a * exp(-b t) + c, with b >= 0
  struct ExpDecay {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    bool operator==(const ExpDecay&) const = default;
  };

  struct Sum {
    std::vector<TimeSignal> terms;
    bool operator==(const Sum&) const = default;
  };

  using Variant = std::variant<Constant, Sinusoid, ExpDecay, Sum>;

  /// Zero signal.
  TimeSignal() = default;

  // Validating factories. Throw std::invalid_argument on non-finite
  // parameters, negative decay rate or an empty sum.
  static TimeSignal constant(double c);
  static TimeSignal sinusoid(double amplitude, double angular_frequency, double phase, Wave wave);
  static TimeSignal exp_decay(double a, double b, double c);
  static TimeSignal sum(std::vector<TimeSignal> terms);

  const Variant& variant() const noexcept { return v_; }

  bool operator==(const TimeSignal&) const = default;

 private:
  explicit TimeSignal(Variant v) : v_(std::move(v)) {}

  Variant v_{Constant{}};
};

double eval(const TimeSignal& sig, double t);
double deriv(const TimeSignal& sig, double t);

}  // namespace blfsim
