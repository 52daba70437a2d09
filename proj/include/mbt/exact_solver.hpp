#pragma once

#include <complex>
#include <vector>

#include "mbt/dispersion.hpp"

namespace mbt {

using cplx = std::complex<double>;

/// N identical rectangular barriers of height V0 and width a; barrier i
/// occupies [(i-1)L, (i-1)L + a].
struct BarrierSystem {
  int n_barriers = 1;
  double width = 1.0;
  double period = 1.0;
  double height = 1.0;

  /// Throws ArgumentError when N < 1, a <= 0, L < a or V0 < 0.
  void check() const;

  double gap() const noexcept { return period - width; }
  double total_length() const noexcept { return (n_barriers - 1) * period + width; }
  double barrier_start(int i) const noexcept { return (i - 1) * period; }
};

struct CoefficientPair {
  cplx a;
  cplx b;
};

/// Stationary solution at one frequency. Barrier i is written as
/// A e^{kappa (x - x_i)} + B e^{-kappa (x - x_i)} and the free region after it
/// as A e^{ik (x - x_i)} + B e^{-ik (x - x_i)} with x_i = (i-1)L; the outgoing
/// region is T e^{ik (x - (N-1)L)}.
struct ScatteringSolution {
  double omega = 0.0;
  double k = 0.0;
  cplx kappa;
  cplx reflection;
  cplx transmission;
  std::vector<CoefficientPair> barrier;  ///< (A_{2i}, B_{2i}), i = 1..N
  std::vector<CoefficientPair> gap;      ///< (A_{2i+1}, B_{2i+1}), i = 1..N-1
  double max_transfer_norm = 0.0;        ///< largest partial-product norm

  static constexpr double kTransferNormWarning = 1e12;
  bool conditioning_warning() const noexcept {
    return max_transfer_norm > kTransferNormWarning;
  }
};

/// Transfer-matrix solution of the 4N matching conditions.
ScatteringSolution solve_exact(const BarrierSystem& system, const DispersionModel& model,
                               double omega);

/// Direct dense LU solve of the same 4N x 4N system. Independent oracle for
/// solve_exact; throws NumericError carrying the reciprocal condition
/// estimate when the matrix is numerically singular.
ScatteringSolution brute_force_solve(const BarrierSystem& system,
                                     const DispersionModel& model, double omega);

cplx evaluate_wavefunction(const ScatteringSolution& solution, const BarrierSystem& system,
                           double x);
cplx evaluate_wavefunction_derivative(const ScatteringSolution& solution,
                                      const BarrierSystem& system, double x);

/// |R|^2 + |T|^2 - 1.
double unitarity_defect(const ScatteringSolution& solution);

/// Largest relative mismatch of psi and psi' between the two branches that
/// meet at any of the 2N interfaces.
double interface_residual(const ScatteringSolution& solution, const BarrierSystem& system);

/// Largest coefficientwise relative difference between two solutions of the
/// same problem.
double max_relative_difference(const ScatteringSolution& lhs, const ScatteringSolution& rhs);

}  // namespace mbt
