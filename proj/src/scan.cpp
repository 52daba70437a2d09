#include "mbt/scan.hpp"

#include <omp.h>

#include "mbt/errors.hpp"

namespace mbt {

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) {
    throw ArgumentError("linspace needs at least one point");
  }
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    out[i] = lo + step * i;
  }
  out.back() = hi;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sign_change_brackets(
    std::span<const double> values) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if ((values[i] < 0.0) != (values[i + 1] < 0.0)) {
      out.emplace_back(i, i + 1);
    }
  }
  return out;
}

std::vector<std::size_t> local_maxima(std::span<const double> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<ScatteringSolution> solve_grid(const BarrierSystem& system,
                                           const DispersionModel& model,
                                           std::span<const double> omegas, Execution exec) {
  std::vector<ScatteringSolution> out(omegas.size());
  for_each_index(omegas.size(), exec,
                 [&](std::size_t i) { out[i] = solve_exact(system, model, omegas[i]); });
  return out;
}

std::vector<double> transmission_grid(const BarrierSystem& system, const DispersionModel& model,
                                      std::span<const double> omegas, Execution exec) {
  return evaluate_on_grid(
      [&](double omega) { return std::norm(solve_exact(system, model, omega).transmission); },
      omegas, exec);
}

std::vector<double> transmission_peaks(const BarrierSystem& system, const DispersionModel& model,
                                       std::span<const double> omegas, Execution exec) {
  const auto p = transmission_grid(system, model, omegas, exec);
  std::vector<double> out;
  for (std::size_t i : local_maxima(p)) {
    out.push_back(omegas[i]);
  }
  return out;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int threads) {
  if (threads < 0) {
    throw ArgumentError("thread count must be >= 0");
  }
  if (threads > 0) {
    omp_set_num_threads(threads);
  }
}

}  // namespace mbt
