#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbt/config.hpp"
#include "mbt/scan.hpp"

namespace mbt {

/// 17 significant digits, locale independent.
std::string format_number(double value);

struct ScanRow {
  double omega = 0.0;
  double k = 0.0;
  double chi = 0.0;
  cplx t;
  cplx r;
  double p_t = 0.0;
  double phi_unwrapped = 0.0;
  double tau = 0.0;
  double unitarity_defect = 0.0;
  std::optional<double> opaque_p_t;  ///< empty when the near-resonance guard trips
  bool opaque_valid = false;
};

/// One row per grid frequency, computed in parallel and returned in omega
/// order. fd_step is relative to omega.
std::vector<ScanRow> compute_scan(const RunConfig& config, double fd_step, Execution exec);
void write_scan(const std::vector<ScanRow>& rows, OutputFormat format, std::ostream& out);

/// Resonances of the configured geometry with the time budget at each root.
nlohmann::json resonance_document(const RunConfig& config);

/// Two-barrier decomposition report at one frequency. Throws ArgumentError
/// unless the configured system has N = 2.
nlohmann::json decomposition_document(const RunConfig& config, double omega);

struct WavefunctionRequest {
  double omega = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 2;
};

struct WavefunctionSample {
  double x = 0.0;
  cplx psi;
};

/// Uniform samples plus every interface inside the range, each flanked by two
/// samples a relative 1e-9 away on either side.
std::vector<WavefunctionSample> compute_wavefunction(const RunConfig& config,
                                                     const WavefunctionRequest& request);
void write_wavefunction(const std::vector<WavefunctionSample>& samples, OutputFormat format,
                        std::ostream& out);

}  // namespace mbt
