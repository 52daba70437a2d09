#include "mbt/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "mbt/errors.hpp"

namespace mbt {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

template <typename T>
T required(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) {
    throw ConfigError("missing key '" + std::string(key) + "' in " + std::string(where));
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + std::string(where) +
                      ": " + e.what());
  }
}

template <typename T>
T optional(const json& obj, const char* key, std::string_view where, T fallback) {
  return obj.contains(key) ? required<T>(obj, key, where) : fallback;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("output format must be 'csv' or 'json', got '" + name + "'");
}

std::string format_name(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

void RunConfig::check() const {
  try {
    system.check();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  if (!(system.height > 0.0)) {
    throw ConfigError("system.height must be > 0");
  }
  if (model.barrier_height() != system.height) {
    throw ConfigError("model.barrier_height must equal system.height");
  }
  const double v0 = system.height;
  std::ostringstream os;
  if (!(scan.omega_min < scan.omega_max)) {
    os << "scan requires omega_min < omega_max, got " << scan.omega_min << " and "
       << scan.omega_max;
  } else if (!(scan.omega_min > 0.0) || !(scan.omega_max < v0)) {
    os << "scan range must lie inside (0, " << v0 << ")";
  } else if (scan.steps < 2) {
    os << "scan.steps must be >= 2, got " << scan.steps;
  } else if (!(tolerances.unitarity > 0.0) || !(tolerances.continuity > 0.0) ||
             !(tolerances.opaque_rel > 0.0)) {
    os << "tolerances must be positive";
  } else {
    return;
  }
  throw ConfigError(os.str());
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "config", {"system", "model", "scan", "tolerances", "output"});
  RunConfig cfg;

  if (!doc.contains("system")) throw ConfigError("missing key 'system' in config");
  const json& sys = doc.at("system");
  reject_unknown(sys, "system", {"n_barriers", "width", "period", "height"});
  cfg.system.n_barriers = required<int>(sys, "n_barriers", "system");
  cfg.system.width = required<double>(sys, "width", "system");
  cfg.system.period = required<double>(sys, "period", "system");
  cfg.system.height = required<double>(sys, "height", "system");

  double model_height = cfg.system.height;
  if (doc.contains("model")) {
    const json& model = doc.at("model");
    reject_unknown(model, "model", {"kind", "barrier_height"});
    const auto kind =
        optional<std::string>(model, "kind", "model", "nonrelativistic-particle");
    if (kind != "nonrelativistic-particle") {
      throw ConfigError("model.kind must be 'nonrelativistic-particle', got '" + kind + "'");
    }
    model_height = optional<double>(model, "barrier_height", "model", model_height);
  }
  try {
    cfg.model = DispersionModel::particle(model_height);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }

  if (!doc.contains("scan")) throw ConfigError("missing key 'scan' in config");
  const json& scan = doc.at("scan");
  reject_unknown(scan, "scan", {"omega_min", "omega_max", "steps"});
  cfg.scan.omega_min = required<double>(scan, "omega_min", "scan");
  cfg.scan.omega_max = required<double>(scan, "omega_max", "scan");
  cfg.scan.steps = required<int>(scan, "steps", "scan");

  if (doc.contains("tolerances")) {
    const json& tol = doc.at("tolerances");
    reject_unknown(tol, "tolerances", {"unitarity", "continuity", "opaque_rel"});
    cfg.tolerances.unitarity =
        optional<double>(tol, "unitarity", "tolerances", cfg.tolerances.unitarity);
    cfg.tolerances.continuity =
        optional<double>(tol, "continuity", "tolerances", cfg.tolerances.continuity);
    cfg.tolerances.opaque_rel =
        optional<double>(tol, "opaque_rel", "tolerances", cfg.tolerances.opaque_rel);
  }

  if (doc.contains("output")) {
    const json& out = doc.at("output");
    reject_unknown(out, "output", {"path", "format"});
    cfg.output.path = optional<std::string>(out, "path", "output", "");
    cfg.output.format = parse_format(optional<std::string>(out, "format", "output", "csv"));
  }

  cfg.check();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  return {
      {"system",
       {{"n_barriers", cfg.system.n_barriers},
        {"width", cfg.system.width},
        {"period", cfg.system.period},
        {"height", cfg.system.height}}},
      {"model",
       {{"kind", "nonrelativistic-particle"}, {"barrier_height", cfg.model.barrier_height()}}},
      {"scan",
       {{"omega_min", cfg.scan.omega_min},
        {"omega_max", cfg.scan.omega_max},
        {"steps", cfg.scan.steps}}},
      {"tolerances",
       {{"unitarity", cfg.tolerances.unitarity},
        {"continuity", cfg.tolerances.continuity},
        {"opaque_rel", cfg.tolerances.opaque_rel}}},
      {"output", {{"path", cfg.output.path}, {"format", format_name(cfg.output.format)}}},
  };
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.system = {2, 4.0, 10.0, 10.0};
  cfg.model = DispersionModel::particle(10.0);
  cfg.scan = {0.5, 9.5, 1000};
  return cfg;
}

}  // namespace mbt
