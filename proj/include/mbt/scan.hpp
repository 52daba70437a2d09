#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <utility>
#include <vector>

#include "mbt/exact_solver.hpp"

namespace mbt {

/// Serial is the reference path kept for testing; Parallel splits the grid
/// across OpenMP threads. Both produce identical results in identical order.
enum class Execution { Serial, Parallel };

std::vector<double> linspace(double lo, double hi, int points);

/// Applies fn(i) for i in [0, count). Exceptions raised on worker threads are
/// collected and the first one (lowest index) is rethrown on the caller.
template <typename Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::size_t failure_index = count;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mbt_for_each_index)
      {
        if (static_cast<std::size_t>(i) < failure_index) {
          failure_index = static_cast<std::size_t>(i);
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <typename Fn>
std::vector<double> evaluate_on_grid(Fn&& fn, std::span<const double> grid, Execution exec) {
  std::vector<double> out(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) { out[i] = fn(grid[i]); });
  return out;
}

/// Index pairs (i, i+1) where the sampled function changes sign; zero counts
/// as positive.
std::vector<std::pair<std::size_t, std::size_t>> sign_change_brackets(
    std::span<const double> values);

/// Strict interior local maxima.
std::vector<std::size_t> local_maxima(std::span<const double> values);

std::vector<ScatteringSolution> solve_grid(const BarrierSystem& system,
                                           const DispersionModel& model,
                                           std::span<const double> omegas, Execution exec);

/// |T|^2 from the exact solver over a frequency grid.
std::vector<double> transmission_grid(const BarrierSystem& system, const DispersionModel& model,
                                      std::span<const double> omegas, Execution exec);

/// Locations of the local maxima of exact |T|^2 over the grid.
std::vector<double> transmission_peaks(const BarrierSystem& system, const DispersionModel& model,
                                       std::span<const double> omegas, Execution exec);

/// Number of threads OpenMP will use for parallel regions.
int max_threads();
/// 0 leaves the OpenMP default in place.
void set_threads(int threads);

}  // namespace mbt
