#pragma once

#include "mbt/exact_solver.hpp"

namespace mbt::detail {

struct RegionWavevectors {
  double k = 0.0;
  cplx kappa;
};

/// Validates the inputs shared by both exact solvers.
RegionWavevectors prepare(const BarrierSystem& system, const DispersionModel& model,
                          double omega);

}  // namespace mbt::detail
