#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "blfsim/config.hpp"
#include "blfsim/errors.hpp"
#include "test_support.hpp"

using namespace blfsim;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Diagnostic> diagnostics_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.diagnostics();
  }
  return {};
}

bool mentions(const std::vector<Diagnostic>& diags, const std::string& path) {
  for (const auto& d : diags)
    if (d.path == path) return true;
  return false;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("bundled reference configuration") {
  const RunConfig cfg = blfsim::testing::sec6_config();
  CHECK(cfg.order() == 2);
  CHECK(cfg.controller.gains.k == std::vector<double>{5.0, 5.0});
  CHECK(cfg.controller.observer_gains == std::vector<double>{7.0, 7.0});
  CHECK(cfg.controller.gains.eta == 4.0);
  CHECK(cfg.controller.gains.lambda == 14.0);
  CHECK(cfg.controller.gains.delta == 1e-4);
  CHECK(cfg.controller.constraints.A == std::vector<double>{1.0, 2.0});
  CHECK(cfg.controller.rbf.nodes() == 12);
  CHECK(cfg.initial_x == std::vector<double>{0.0, 0.0});
  CHECK(cfg.horizon == 20.0);
  CHECK(cfg.step == 1e-3);
  CHECK(cfg.decimation == 10);
  CHECK(cfg.plant.beta() == 1.0);
  CHECK(eval(cfg.controller.constraints.Psi[0], 0.0) == doctest::Approx(2.1));
  CHECK(eval(cfg.controller.constraints.Psi[1], 1.0) == doctest::Approx(std::exp(-0.6) + 1.1));
  CHECK(eval(cfg.controller.reference, 0.5) == std::sin(0.5));
  CHECK(eval(cfg.plant.disturbances()[0], 0.25) == doctest::Approx(0.2 * std::cos(0.25 * std::numbers::pi)));
  CHECK(eval(cfg.plant.disturbances()[1], 0.25) == doctest::Approx(0.2 * std::sin(0.25 * std::numbers::pi)));
  CHECK(eval_f(cfg.plant, std::vector<double>{1.0, 1.0}) == -7.0);
}

TEST_CASE("empty document names the first missing field") {
  for (const char* text : {"{}", "", "  \n"}) {
    const auto diags = diagnostics_of(text);
    REQUIRE(!diags.empty());
    CHECK(diags.front().path == "plant");
    CHECK(diags.front().message.find("missing") != std::string::npos);
  }
}

TEST_CASE("zero control coefficient is rejected") {
  const std::string text = replace(read_file(blfsim::testing::config_path("paper_sec6.json")), "\"beta\": 1.0", "\"beta\": 0");
  const auto diags = diagnostics_of(text);
  REQUIRE(mentions(diags, "plant.beta"));
  for (const auto& d : diags)
    if (d.path == "plant.beta") CHECK(d.message.find("beta != 0") != std::string::npos);
}

TEST_CASE("field-level diagnostics") {
  const std::string base = read_file(blfsim::testing::config_path("paper_sec6.json"));
  CHECK(mentions(diagnostics_of(replace(base, "\"eta\": 4.0", "\"eta\": 4.0, \"etta\": 1")), "gains.etta"));
  CHECK(mentions(diagnostics_of(replace(base, "\"lambda\": 14.0", "\"lambda\": -1")), "gains.lambda"));
  CHECK(mentions(diagnostics_of(replace(base, "\"b\": 0.7", "\"b\": -0.7")), "constraints.Psi[0].b"));
  CHECK(mentions(diagnostics_of(replace(base, "\"function\": \"cos\"", "\"function\": \"tan\"")),
                 "plant.disturbances[0].function"));
  CHECK(mentions(diagnostics_of(replace(base, "\"step\": 1e-3", "\"step\": 3e-3")), "simulation.horizon"));
  CHECK(mentions(diagnostics_of(replace(base, "\"decimation\": 10", "\"decimation\": 0")), "simulation.decimation"));
  CHECK(!diagnostics_of("{\"plant\": 3").empty());
}

TEST_CASE("every problem is reported at once") {
  std::string text = read_file(blfsim::testing::config_path("paper_sec6.json"));
  text = replace(text, "\"lambda\": 14.0", "\"lambda\": null");
  text = replace(text, "\"eta\": 4.0", "\"eta\": \"four\"");
  text = replace(text, "\"nodes\": 12", "\"nodes\": 1.5");
  const auto diags = diagnostics_of(text);
  CHECK(mentions(diags, "gains.lambda"));
  CHECK(mentions(diags, "gains.eta"));
  CHECK(mentions(diags, "rbf.nodes"));
}

TEST_CASE("serialization round trip") {
  for (const char* name : {"paper_sec6.json", "relaxed_envelope.json"}) {
    const RunConfig cfg = load_config(blfsim::testing::config_path(name));
    CHECK(parse_config(to_json(cfg)) == cfg);
  }
  RunConfig cfg = blfsim::testing::rest_config(3, 5, 2.5);
  cfg.controller.reference = TimeSignal::sum(
      {TimeSignal::constant(0.1), TimeSignal::sinusoid(0.3, 2.0, 0.7, TimeSignal::Wave::Cos)});
  cfg.phi_bar = 1.25;
  cfg.output_path = "out.csv";
  cfg.controller.gains.lambda = 0.1 + 0.2;  // not exactly representable in short decimal
  CHECK(parse_config(to_json(cfg)) == cfg);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError);
}
