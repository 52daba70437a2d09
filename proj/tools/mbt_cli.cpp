#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mbt/commands.hpp"
#include "mbt/config.hpp"
#include "mbt/errors.hpp"
#include "mbt/scan.hpp"
#include "mbt/timing.hpp"
#include "mbt/validate.hpp"

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumeric = 3 };

struct GlobalOptions {
  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::string> format;
  int threads = 0;
  double fd_step = mbt::kDefaultRelativeStep;
};

mbt::RunConfig resolve_config(const GlobalOptions& opts) {
  mbt::RunConfig config =
      opts.config_path.empty() ? mbt::default_config() : mbt::load_config(opts.config_path);
  if (opts.output) config.output.path = *opts.output;
  if (opts.format) config.output.format = mbt::parse_format(*opts.format);
  config.check();
  return config;
}

// Runs `emit` against the configured destination; "" and "-" mean stdout.
template <typename Emit>
void with_output(const mbt::RunConfig& config, Emit&& emit) {
  const std::string& path = config.output.path;
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw mbt::ConfigError("cannot open output path '" + path + "' for writing");
  emit(file);
  file.flush();
  if (!file) throw mbt::ConfigError("failed writing output path '" + path + "'");
}

void write_json(const mbt::RunConfig& config, const nlohmann::json& doc) {
  with_output(config, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission, resonance and phase-time toolkit for periodic barrier stacks"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "JSON run configuration (default: built in)");
  app.add_option("--output", opts.output, "output path, '-' for stdout");
  app.add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", opts.threads, "worker threads, 0 = auto")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--fd-step", opts.fd_step, "relative finite-difference step for phase times")
      ->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan", "tabulate T, R, phase time and opaque |T|^2 over omega");
  auto* resonances = app.add_subcommand("resonances", "locate resonance roots (JSON)");
  auto* decompose = app.add_subcommand("decompose", "two-barrier decomposition report (JSON)");
  double decompose_omega = 0.0;
  decompose->add_option("--omega", decompose_omega, "frequency")->required();
  auto* validate = app.add_subcommand("validate", "run every invariant check");
  auto* wavefunction = app.add_subcommand("wavefunction", "sample psi(x) at one frequency");
  mbt::WavefunctionRequest wf;
  wavefunction->add_option("--omega", wf.omega, "frequency")->required();
  wavefunction->add_option("--x-min", wf.x_min, "left end of the sample window")->required();
  wavefunction->add_option("--x-max", wf.x_max, "right end of the sample window")->required();
  wavefunction->add_option("--points", wf.points, "uniform sample count")->default_val(200);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    mbt::set_threads(opts.threads);
    const mbt::RunConfig config = resolve_config(opts);

    if (scan->parsed()) {
      const auto rows = mbt::compute_scan(config, opts.fd_step, mbt::Execution::Parallel);
      with_output(config, [&](std::ostream& out) {
        mbt::write_scan(rows, config.output.format, out);
      });
    } else if (resonances->parsed()) {
      write_json(config, mbt::resonance_document(config));
    } else if (decompose->parsed()) {
      write_json(config, mbt::decomposition_document(config, decompose_omega));
    } else if (validate->parsed()) {
      const auto summary = mbt::run_validation(config, std::cout);
      return summary.failed == 0 ? kOk : kValidationFailed;
    } else if (wavefunction->parsed()) {
      const auto samples = mbt::compute_wavefunction(config, wf);
      with_output(config, [&](std::ostream& out) {
        mbt::write_wavefunction(samples, config.output.format, out);
      });
    }
  } catch (const mbt::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const mbt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
