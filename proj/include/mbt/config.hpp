#pragma once

#include <json.hpp>
#include <string>

#include "mbt/dispersion.hpp"
#include "mbt/exact_solver.hpp"

namespace mbt {

enum class OutputFormat { Csv, Json };

struct ScanSettings {
  double omega_min = 0.0;
  double omega_max = 0.0;
  int steps = 2;
};

struct Tolerances {
  double unitarity = 1e-10;
  double continuity = 1e-9;
  double opaque_rel = 1e-3;
};

struct OutputSettings {
  std::string path;  ///< empty or "-" writes to stdout
  OutputFormat format = OutputFormat::Csv;
};

struct RunConfig {
  BarrierSystem system;
  DispersionModel model = DispersionModel::particle(1.0);
  ScanSettings scan;
  Tolerances tolerances;
  OutputSettings output;

  /// Throws ConfigError naming the violated constraint.
  void check() const;
};

/// Unknown keys at any level are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

/// Two opaque barriers (V0 = 10, a = 4, L = 10) scanned over (0.5, 9.5).
RunConfig default_config();

OutputFormat parse_format(const std::string& name);
std::string format_name(OutputFormat format);

}  // namespace mbt
