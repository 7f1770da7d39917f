#include "blfsim/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "blfsim/errors.hpp"

namespace blfsim {

namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) { return parent.empty() ? key : parent + "." + key; }
std::string index(const std::string& parent, std::size_t i) { return parent + "[" + std::to_string(i) + "]"; }

class Reader {
 public:
  std::vector<Diagnostic> problems;

  void fail(std::string path, std::string message) { problems.push_back({std::move(path), std::move(message)}); }

  bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      fail(path.empty() ? "(document)" : path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) fail(join(path, key), "unknown key");
    }
    return true;
  }

  const json* required(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      fail(join(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  static const json* optional(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  std::optional<double> number(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double v = j->get<double>();
    if (!std::isfinite(v)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<int> integer(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return j->get<int>();
  }

  std::optional<std::vector<double>> numbers(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_array()) {
      fail(path, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < j->size(); ++i) {
      const auto v = number(&(*j)[i], index(path, i));
      ok = ok && v.has_value();
      out.push_back(v.value_or(0.0));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<TimeSignal> signal(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_object()) {
      fail(path, "expected a signal record");
      return std::nullopt;
    }
    const json* kind = required(*j, "kind", path);
    if (!kind) return std::nullopt;
    if (!kind->is_string()) {
      fail(join(path, "kind"), "expected a string");
      return std::nullopt;
    }
    const auto k = kind->get<std::string>();
    try {
      if (k == "constant") {
        if (!object(*j, path, {"kind", "c"})) return std::nullopt;
        const auto c = number(required(*j, "c", path), join(path, "c"));
        if (!c) return std::nullopt;
        return TimeSignal::constant(*c);
      }
      if (k == "sinusoid") {
        if (!object(*j, path, {"kind", "amplitude", "angular_frequency", "phase", "function"})) return std::nullopt;
        const auto amp = number(required(*j, "amplitude", path), join(path, "amplitude"));
        const auto w = number(required(*j, "angular_frequency", path), join(path, "angular_frequency"));
        const json* phase_j = optional(*j, "phase");
        const auto phase = phase_j ? number(phase_j, join(path, "phase")) : std::optional<double>(0.0);
        const json* fn = required(*j, "function", path);
        std::optional<TimeSignal::Wave> wave;
        if (fn) {
          if (fn->is_string() && fn->get<std::string>() == "sin") wave = TimeSignal::Wave::Sin;
          else if (fn->is_string() && fn->get<std::string>() == "cos") wave = TimeSignal::Wave::Cos;
          else fail(join(path, "function"), "expected \"sin\" or \"cos\"");
        }
        if (!amp || !w || !phase || !wave) return std::nullopt;
        return TimeSignal::sinusoid(*amp, *w, *phase, *wave);
      }
      if (k == "expdecay") {
        if (!object(*j, path, {"kind", "a", "b", "c"})) return std::nullopt;
        const auto a = number(required(*j, "a", path), join(path, "a"));
        const auto b = number(required(*j, "b", path), join(path, "b"));
        const auto c = number(required(*j, "c", path), join(path, "c"));
        if (!a || !b || !c) return std::nullopt;
        if (*b < 0.0) {
          fail(join(path, "b"), "decay rate must be >= 0 so the signal stays bounded");
          return std::nullopt;
        }
        return TimeSignal::exp_decay(*a, *b, *c);
      }
      if (k == "sum") {
        if (!object(*j, path, {"kind", "terms"})) return std::nullopt;
        const json* terms = required(*j, "terms", path);
        if (!terms) return std::nullopt;
        if (!terms->is_array() || terms->empty()) {
          fail(join(path, "terms"), "expected a non-empty array of signals");
          return std::nullopt;
        }
        std::vector<TimeSignal> parts;
        bool ok = true;
        for (std::size_t i = 0; i < terms->size(); ++i) {
          auto s = signal(&(*terms)[i], index(join(path, "terms"), i));
          ok = ok && s.has_value();
          if (s) parts.push_back(std::move(*s));
        }
        if (!ok) return std::nullopt;
        return TimeSignal::sum(std::move(parts));
      }
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
      return std::nullopt;
    }
    fail(join(path, "kind"), "unknown signal kind '" + k + "' (expected constant, sinusoid, expdecay or sum)");
    return std::nullopt;
  }

  std::optional<std::vector<TimeSignal>> signals(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_array()) {
      fail(path, "expected an array of signals");
      return std::nullopt;
    }
    std::vector<TimeSignal> out;
    bool ok = true;
    for (std::size_t i = 0; i < j->size(); ++i) {
      auto s = signal(&(*j)[i], index(path, i));
      ok = ok && s.has_value();
      if (s) out.push_back(std::move(*s));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<PlantSpec> plant(const json* j) {
    const std::string path = "plant";
    if (!j || !object(*j, path, {"order", "f", "beta", "disturbances"})) return std::nullopt;
    const auto order = integer(required(*j, "order", path), "plant.order");
    const json* f = required(*j, "f", path);
    const auto beta = number(required(*j, "beta", path), "plant.beta");
    auto dist = signals(required(*j, "disturbances", path), "plant.disturbances");

    std::vector<Monomial> monomials;
    bool f_ok = f != nullptr;
    if (f && !f->is_array()) {
      fail("plant.f", "expected an array of monomials");
      f_ok = false;
    } else if (f) {
      for (std::size_t m = 0; m < f->size(); ++m) {
        const auto mpath = index("plant.f", m);
        const json& item = (*f)[m];
        if (!object(item, mpath, {"coeff", "exponents"})) {
          f_ok = false;
          continue;
        }
        const auto coeff = number(required(item, "coeff", mpath), join(mpath, "coeff"));
        const json* exps = required(item, "exponents", mpath);
        std::vector<int> e;
        bool e_ok = exps && exps->is_array();
        if (exps && !exps->is_array()) fail(join(mpath, "exponents"), "expected an array of integers");
        if (e_ok) {
          for (std::size_t i = 0; i < exps->size(); ++i) {
            const auto v = integer(&(*exps)[i], index(join(mpath, "exponents"), i));
            e_ok = e_ok && v.has_value();
            e.push_back(v.value_or(0));
          }
        }
        f_ok = f_ok && coeff && e_ok;
        monomials.push_back({coeff.value_or(0.0), std::move(e)});
      }
    }
    if (!order || !f_ok || !beta || !dist) return std::nullopt;
    if (*beta == 0.0) {
      fail("plant.beta", "control coefficient beta must be nonzero; the controller requires beta != 0");
      return std::nullopt;
    }
    try {
      return PlantSpec(*order, std::move(monomials), *beta, std::move(*dist));
    } catch (const ConfigError& e) {
      for (const auto& d : e.diagnostics()) problems.push_back(d);
      return std::nullopt;
    }
  }

  std::optional<RbfConfig> rbf(const json* j, std::optional<int> order) {
    const std::string path = "rbf";
    if (!j || !object(*j, path, {"nodes", "centers", "widths", "lattice"})) return std::nullopt;
    const json* centers_j = optional(*j, "centers");
    const json* widths_j = optional(*j, "widths");
    const json* lattice_j = optional(*j, "lattice");
    try {
      if (centers_j) {
        if (lattice_j) fail("rbf.lattice", "give either explicit centers or a lattice, not both");
        std::vector<std::vector<double>> centers;
        bool ok = centers_j->is_array();
        if (!ok) fail("rbf.centers", "expected an array of center vectors");
        if (ok) {
          for (std::size_t i = 0; i < centers_j->size(); ++i) {
            auto c = numbers(&(*centers_j)[i], index("rbf.centers", i));
            ok = ok && c.has_value();
            centers.push_back(c.value_or(std::vector<double>{}));
          }
        }
        auto widths = numbers(required(*j, "widths", path), "rbf.widths");
        const auto nodes = integer(optional(*j, "nodes"), "rbf.nodes");
        if (nodes && ok && static_cast<std::size_t>(*nodes) != centers.size())
          fail("rbf.nodes", "does not match the number of centers");
        if (!ok || !widths || !order) return std::nullopt;
        return RbfConfig(*order, std::move(centers), std::move(*widths));
      }
      if (widths_j) fail("rbf.widths", "explicit widths need explicit centers");
      const auto nodes = integer(required(*j, "nodes", path), "rbf.nodes");
      double lower = -2.0, upper = 2.0, width = 2.0;
      if (lattice_j && object(*lattice_j, "rbf.lattice", {"lower", "upper", "width"})) {
        lower = number(optional(*lattice_j, "lower"), "rbf.lattice.lower").value_or(lower);
        upper = number(optional(*lattice_j, "upper"), "rbf.lattice.upper").value_or(upper);
        width = number(optional(*lattice_j, "width"), "rbf.lattice.width").value_or(width);
      }
      if (!nodes || !order) return std::nullopt;
      if (*nodes < 1) {
        fail("rbf.nodes", "must be >= 1");
        return std::nullopt;
      }
      return RbfConfig::lattice(*order, *nodes, lower, upper, width);
    } catch (const ConfigError& e) {
      for (const auto& d : e.diagnostics()) problems.push_back(d);
      return std::nullopt;
    }
  }
};

json signal_to_json(const TimeSignal& sig) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TimeSignal::Constant>) {
          return {{"kind", "constant"}, {"c", s.c}};
        } else if constexpr (std::is_same_v<T, TimeSignal::Sinusoid>) {
          return {{"kind", "sinusoid"},
                  {"amplitude", s.amplitude},
                  {"angular_frequency", s.angular_frequency},
                  {"phase", s.phase},
                  {"function", s.wave == TimeSignal::Wave::Sin ? "sin" : "cos"}};
        } else if constexpr (std::is_same_v<T, TimeSignal::ExpDecay>) {
          return {{"kind", "expdecay"}, {"a", s.a}, {"b", s.b}, {"c", s.c}};
        } else {
          json terms = json::array();
          for (const auto& term : s.terms) terms.push_back(signal_to_json(term));
          return {{"kind", "sum"}, {"terms", terms}};
        }
      },
      sig.variant());
}

json signals_to_json(const std::vector<TimeSignal>& sigs) {
  json out = json::array();
  for (const auto& s : sigs) out.push_back(signal_to_json(s));
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root = json::object();
  try {
    // a blank document is treated as an empty object so the report names the missing fields
    if (text.find_first_not_of(" \t\r\n") != std::string_view::npos) root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("(document)", std::string("malformed JSON: ") + e.what());
  }

  Reader r;
  if (!r.object(root, "", {"plant", "reference", "constraints", "rbf", "gains", "observer_gains", "initial_x",
                           "simulation", "phi_bar", "output_path"}))
    throw ConfigError(std::move(r.problems));

  auto plant = r.plant(r.required(root, "plant", ""));
  std::optional<int> order;
  if (plant) order = plant->order();

  auto reference = r.signal(r.required(root, "reference", ""), "reference");

  std::optional<std::vector<TimeSignal>> Psi;
  std::optional<std::vector<double>> A;
  if (const json* c = r.required(root, "constraints", ""); c && r.object(*c, "constraints", {"Psi", "A"})) {
    Psi = r.signals(r.required(*c, "Psi", "constraints"), "constraints.Psi");
    A = r.numbers(r.required(*c, "A", "constraints"), "constraints.A");
  }

  auto rbf = r.rbf(r.required(root, "rbf", ""), order);

  GainConfig gains;
  bool gains_ok = false;
  if (const json* g = r.required(root, "gains", ""); g && r.object(*g, "gains", {"k", "lambda", "eta", "delta"})) {
    const auto k = r.numbers(r.required(*g, "k", "gains"), "gains.k");
    const auto lambda = r.number(r.required(*g, "lambda", "gains"), "gains.lambda");
    const auto eta = r.number(r.required(*g, "eta", "gains"), "gains.eta");
    const json* delta_j = Reader::optional(*g, "delta");
    const auto delta = delta_j ? r.number(delta_j, "gains.delta") : std::optional<double>(1e-4);
    gains_ok = k && lambda && eta && delta;
    if (gains_ok) gains = GainConfig{*k, *lambda, *eta, *delta};
  }

  const auto observer_gains = r.numbers(r.required(root, "observer_gains", ""), "observer_gains");
  const auto initial_x = r.numbers(r.required(root, "initial_x", ""), "initial_x");

  double horizon = 20.0, step = 1e-3;
  int decimation = 10;
  if (const json* s = Reader::optional(root, "simulation");
      s && r.object(*s, "simulation", {"horizon", "step", "decimation"})) {
    horizon = r.number(Reader::optional(*s, "horizon"), "simulation.horizon").value_or(horizon);
    step = r.number(Reader::optional(*s, "step"), "simulation.step").value_or(step);
    decimation = r.integer(Reader::optional(*s, "decimation"), "simulation.decimation").value_or(decimation);
  }

  std::optional<double> phi_bar;
  if (const json* p = Reader::optional(root, "phi_bar")) phi_bar = r.number(p, "phi_bar");

  std::string output_path;
  if (const json* o = Reader::optional(root, "output_path")) {
    if (o->is_string()) output_path = o->get<std::string>();
    else r.fail("output_path", "expected a string");
  }

  if (!r.problems.empty() || !plant || !reference || !Psi || !A || !rbf || !gains_ok || !observer_gains ||
      !initial_x)
    throw ConfigError(std::move(r.problems));

  RunConfig cfg{std::move(*plant),
                ControllerConfig{std::move(gains), *observer_gains, ConstraintConfig{std::move(*Psi), *A},
                                 std::move(*reference), std::move(*rbf)},
                *initial_x,
                horizon,
                step,
                decimation,
                phi_bar,
                std::move(output_path)};
  if (auto problems = validate(cfg); !problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json(const RunConfig& cfg) {
  json f = json::array();
  for (const auto& m : cfg.plant.f()) f.push_back({{"coeff", m.coeff}, {"exponents", m.exponents}});

  json root;
  root["plant"] = {{"order", cfg.plant.order()},
                   {"f", f},
                   {"beta", cfg.plant.beta()},
                   {"disturbances", signals_to_json(cfg.plant.disturbances())}};
  root["reference"] = signal_to_json(cfg.controller.reference);
  root["constraints"] = {{"Psi", signals_to_json(cfg.controller.constraints.Psi)},
                         {"A", cfg.controller.constraints.A}};
  root["rbf"] = {{"nodes", cfg.controller.rbf.nodes()},
                 {"centers", cfg.controller.rbf.centers()},
                 {"widths", cfg.controller.rbf.widths()}};
  root["gains"] = {{"k", cfg.controller.gains.k},
                   {"lambda", cfg.controller.gains.lambda},
                   {"eta", cfg.controller.gains.eta},
                   {"delta", cfg.controller.gains.delta}};
  root["observer_gains"] = cfg.controller.observer_gains;
  root["initial_x"] = cfg.initial_x;
  root["simulation"] = {{"horizon", cfg.horizon}, {"step", cfg.step}, {"decimation", cfg.decimation}};
  if (cfg.phi_bar) root["phi_bar"] = *cfg.phi_bar;
  if (!cfg.output_path.empty()) root["output_path"] = cfg.output_path;
  return root.dump(2) + "\n";
}

}  // namespace blfsim
