#include <cmath>
#include <fstream>
#include <set>

#include "bifield/harness.hpp"

namespace bifield::harness {

ScenarioKind kind_from_name(const std::string& name) {
  if (name == "verify") return ScenarioKind::Verify;
  if (name == "propagate") return ScenarioKind::Propagate;
  if (name == "kernel") return ScenarioKind::Kernel;
  if (name == "blipfield") return ScenarioKind::Blipfield;
  if (name == "energy") return ScenarioKind::Energy;
  if (name == "counterexample") return ScenarioKind::Counterexample;
  throw ConfigError("unknown scenario kind '" + name + "'");
}

std::string kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Verify: return "verify";
    case ScenarioKind::Propagate: return "propagate";
    case ScenarioKind::Kernel: return "kernel";
    case ScenarioKind::Blipfield: return "blipfield";
    case ScenarioKind::Energy: return "energy";
    case ScenarioKind::Counterexample: return "counterexample";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

template <class T>
T read(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return read<T>(obj, key, T{});
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
}

void check_weight_name(const std::string& name) {
  try {
    weight_from_name(name);
  } catch (const std::exception&) {
    throw ConfigError("unknown weight '" + name + "'");
  }
}

void check_direction_value(int s) {
  if (s != 1 && s != -1) throw ConfigError("s must be +1 or -1");
}

void check_lambda(int lambda) {
  if (lambda != 1 && lambda != 2) throw ConfigError("lambda must be 1 or 2");
}

}  // namespace

ScenarioConfig parse_config(const json& doc, ScenarioKind kind) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig cfg;
  cfg.kind = kind;
  if (doc.contains("kind") && kind_from_name(read<std::string>(doc, "kind", "")) != kind) {
    throw ConfigError("config kind does not match the command");
  }

  const json grid = doc.contains("grid") ? doc.at("grid") : json::object();
  if (!grid.is_object()) throw ConfigError("'grid' must be an object");
  cfg.n_modes = read<long>(grid, "n_modes", cfg.n_modes);
  cfg.delta_k = read<double>(grid, "delta_k", cfg.delta_k);
  if (cfg.n_modes < 2 || cfg.n_modes % 2 != 0) throw ConfigError("n_modes must be even and >= 2");
  if (!(cfg.delta_k > 0.0) || !std::isfinite(cfg.delta_k)) throw ConfigError("delta_k must be positive");

  if (doc.contains("context")) {
    const json& c = doc.at("context");
    if (!c.is_object()) throw ConfigError("'context' must be an object");
    cfg.context.hbar = read<double>(c, "hbar", 1.0);
    cfg.context.c = read<double>(c, "c", 1.0);
    cfg.context.epsilon = read<double>(c, "epsilon", 1.0);
    cfg.context.area = read<double>(c, "A", 1.0);
    try {
      cfg.context.validate();
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }

  const Grid grid_obj(cfg.n_modes, cfg.delta_k);
  auto on_grid = [&](double x, const char* what) {
    require_finite(x, what);
    if (!grid_obj.on_grid(x)) {
      throw ConfigError(std::string(what) + " = " + std::to_string(x) + " is not a lattice point");
    }
  };

  switch (kind) {
    case ScenarioKind::Verify:
      break;
    case ScenarioKind::Propagate: {
      if (!doc.contains("packet") || !doc.at("packet").is_object()) {
        throw ConfigError("propagate needs a 'packet' object");
      }
      const json& p = doc.at("packet");
      if (read<std::string>(p, "shape", "gaussian") != "gaussian") {
        throw ConfigError("only gaussian packets are supported");
      }
      PacketSpec pk;
      pk.center = require<double>(p, "center");
      pk.width = require<double>(p, "width");
      pk.s = read<int>(p, "s", 1);
      pk.lambda = read<int>(p, "lambda", 1);
      pk.weight = read<std::string>(p, "weight", "blip");
      pk.two_sided = read<bool>(p, "two_sided", false);
      require_finite(pk.center, "packet center");
      if (!(pk.width > 0.0) || !std::isfinite(pk.width)) throw ConfigError("packet width must be positive");
      check_direction_value(pk.s);
      check_lambda(pk.lambda);
      check_weight_name(pk.weight);
      cfg.packet = pk;
      cfg.times = require<std::vector<double>>(doc, "times");
      if (cfg.times.empty()) throw ConfigError("'times' must not be empty");
      cfg.interpolate = read<bool>(doc, "interpolate", false);
      for (double t : cfg.times) {
        require_finite(t, "time");
        const double steps = cfg.context.c * t / grid_obj.delta_x();
        if (!cfg.interpolate && std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, std::abs(steps))) {
          throw ConfigError("time " + std::to_string(t) +
                            " is not a whole number of lattice steps; set \"interpolate\": true");
        }
      }
      break;
    }
    case ScenarioKind::Kernel: {
      const auto w = read<std::vector<std::string>>(doc, "weights", {"local", "local"});
      if (w.size() != 2) throw ConfigError("'weights' must name exactly two weights");
      check_weight_name(w[0]);
      check_weight_name(w[1]);
      cfg.weight1 = w[0];
      cfg.weight2 = w[1];
      cfg.s = read<int>(doc, "s", 1);
      check_direction_value(cfg.s);
      break;
    }
    case ScenarioKind::Blipfield:
      cfg.x0 = read<double>(doc, "x0", 0.0);
      on_grid(cfg.x0, "x0");
      cfg.s = read<int>(doc, "s", 1);
      cfg.lambda = read<int>(doc, "lambda", 1);
      check_direction_value(cfg.s);
      check_lambda(cfg.lambda);
      break;
    case ScenarioKind::Energy: {
      cfg.photon_modes = read<std::vector<std::size_t>>(doc, "photon_modes", {});
      for (auto j : cfg.photon_modes) {
        if (j >= grid_obj.size()) throw ConfigError("photon mode index out of range");
      }
      if (doc.contains("packet")) {
        const json& p = doc.at("packet");
        if (!p.is_object()) throw ConfigError("'packet' must be an object");
        PacketSpec pk;
        pk.center = require<double>(p, "center");
        pk.width = require<double>(p, "width");
        pk.s = read<int>(p, "s", 1);
        pk.lambda = read<int>(p, "lambda", 1);
        pk.weight = read<std::string>(p, "weight", "blip");
        if (!(pk.width > 0.0) || !std::isfinite(pk.width)) throw ConfigError("packet width must be positive");
        check_direction_value(pk.s);
        check_lambda(pk.lambda);
        check_weight_name(pk.weight);
        cfg.packet = pk;
      }
      if (cfg.photon_modes.empty() && !cfg.packet) {
        throw ConfigError("energy needs 'photon_modes' or a 'packet'");
      }
      break;
    }
    case ScenarioKind::Counterexample: {
      cfg.b1 = require<double>(doc, "b1");
      cfg.b2 = require<double>(doc, "b2");
      cfg.t1 = read<double>(doc, "t1", 0.0);
      cfg.x0 = read<double>(doc, "x0", 0.0);
      on_grid(cfg.x0, "x0");
      cfg.s = read<int>(doc, "s", 1);
      cfg.lambda = read<int>(doc, "lambda", 1);
      check_direction_value(cfg.s);
      check_lambda(cfg.lambda);
      cfg.modes = read<std::vector<std::size_t>>(doc, "modes", {});
      for (double k : read<std::vector<double>>(doc, "mode_k", {})) {
        require_finite(k, "mode_k");
        const std::size_t j = grid_obj.mode_index(k);
        if (std::abs(grid_obj.k(j) - k) > 1e-9 * std::max(1.0, std::abs(k))) {
          throw ConfigError("mode_k = " + std::to_string(k) + " is not a lattice wavenumber");
        }
        cfg.modes.push_back(j);
      }
      BogoliubovBlock blk{cfg.b1, cfg.b2, cfg.modes, cfg.t1};
      try {
        blk.validate(grid_obj);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      break;
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioKind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc, kind);
}

}  // namespace bifield::harness
