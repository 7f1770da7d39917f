#include "blfsim/signals.hpp"

#include <cmath>
#include <stdexcept>

namespace blfsim {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("signal parameter '") + what + "' is not finite");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

TimeSignal TimeSignal::constant(double c) {
  require_finite(c, "c");
  return TimeSignal(Constant{c});
}

TimeSignal TimeSignal::sinusoid(double amplitude, double angular_frequency, double phase, Wave wave) {
  require_finite(amplitude, "amplitude");
  require_finite(angular_frequency, "angular_frequency");
  require_finite(phase, "phase");
  return TimeSignal(Sinusoid{amplitude, angular_frequency, phase, wave});
}

TimeSignal TimeSignal::exp_decay(double a, double b, double c) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  // a growing exponential is unbounded on [0, inf)
  if (b < 0.0) throw std::invalid_argument("exp-decay rate b must be >= 0");
  return TimeSignal(ExpDecay{a, b, c});
}

TimeSignal TimeSignal::sum(std::vector<TimeSignal> terms) {
  if (terms.empty()) throw std::invalid_argument("sum signal needs at least one term");
  return TimeSignal(Sum{std::move(terms)});
}

double eval(const TimeSignal& sig, double t) {
  return std::visit(overloaded{
                        [](const TimeSignal::Constant& s) { return s.c; },
                        [t](const TimeSignal::Sinusoid& s) {
                          const double arg = s.angular_frequency * t + s.phase;
                          return s.amplitude * (s.wave == TimeSignal::Wave::Sin ? std::sin(arg) : std::cos(arg));
                        },
                        [t](const TimeSignal::ExpDecay& s) { return s.a * std::exp(-s.b * t) + s.c; },
                        [t](const TimeSignal::Sum& s) {
                          double acc = 0.0;
                          for (const auto& term : s.terms) acc += eval(term, t);
                          return acc;
                        },
                    },
                    sig.variant());
}

double deriv(const TimeSignal& sig, double t) {
  return std::visit(overloaded{
                        [](const TimeSignal::Constant&) { return 0.0; },
                        [t](const TimeSignal::Sinusoid& s) {
                          const double arg = s.angular_frequency * t + s.phase;
                          const double w = s.amplitude * s.angular_frequency;
                          return s.wave == TimeSignal::Wave::Sin ? w * std::cos(arg) : -w * std::sin(arg);
                        },
                        [t](const TimeSignal::ExpDecay& s) { return -s.a * s.b * std::exp(-s.b * t); },
                        [t](const TimeSignal::Sum& s) {
                          double acc = 0.0;
                          for (const auto& term : s.terms) acc += deriv(term, t);
                          return acc;
                        },
                    },
                    sig.variant());
}

}  // namespace blfsim
