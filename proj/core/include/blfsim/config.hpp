#pragma once

#include <string>
#include <string_view>

#include "blfsim/run_config.hpp"

namespace blfsim {

/// Parses and validates a JSON run configuration.
///
/// Signals are tagged records:
///   {"kind": "constant", "c": 0}
///   {"kind": "sinusoid", "amplitude": 0.2, "angular_frequency": 3.14159, "phase": 0, "function": "cos"}
///   {"kind": "expdecay", "a": 1, "b": 0.7, "c": 1.1}          (a e^{-bt} + c)
///   {"kind": "sum", "terms": [ ... ]}
///
/// Unknown keys are errors. Throws ConfigError listing every problem found
/// (path + message), in document order.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Serializes a configuration so that parse_config(to_json(c)) == c.
/// RBF centers and widths are always written out explicitly.
std::string to_json(const RunConfig& cfg);

}  // namespace blfsim
