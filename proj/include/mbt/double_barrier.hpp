#pragma once

#include <array>
#include <string_view>

#include "mbt/dispersion.hpp"
#include "mbt/exact_solver.hpp"

namespace mbt {

/// Partial coefficients of a two-barrier system together with their
/// opaque-limit closed forms evaluated at the same (k, chi, a, L).
struct PartialDecomposition {
  // From the exact solution.
  cplx r1, t1, r2, t2;
  cplx s;  ///< multiple-reflection sum 1 / (1 - r1 r2)

  // Opaque-limit closed forms.
  cplx r_ob, t_ob;  ///< single-barrier coefficients
  cplx r_q, t_q, r_r, t_r;
  cplx r1_0, t1_0;  ///< first barrier with multiple reflections dropped
  cplx r1_0_ors;    ///< alternative parametrization of r1_0
  double cavity = 0.0;  ///< 2 chi k / D, single power
};

struct OneBarrierCoefficients {
  cplx r;
  cplx t;
};

struct CorrectionTerms {
  cplx r_q, t_q, r_r, t_r;
};

struct NoReflectionBudget {
  double deficit = 0.0;     ///< 1 - (|r1_0|^2 + |t1_0|^2)
  double ors_excess = 0.0;  ///< |r1_0_ors|^2 + |t1_0|^2 - 1
  double predicted = 0.0;   ///< F^2 e^{-2 chi a}
  double multiple_reflection_probability = 0.0;  ///< |r_r|^2 + |t_r|^2
};

/// Opaque two-barrier coefficients; A4 vanishes at this order. t is quoted
/// with the e^{ika} reference phase, i.e. it approximates T e^{ika}.
struct AppendixCoefficients {
  cplx r, a2, b2, a3, b3, a4, b4, t;
};

struct CoefficientComparison {
  std::string_view name;
  cplx approx;
  cplx exact;
  double relative_error = 0.0;  ///< |approx - exact| / |exact|
  double scaled_error = 0.0;    ///< error over the wave magnitude in that region
};

/// Exact decomposition of an N = 2 solution, with the opaque forms attached.
/// Throws NumericError when 1 - B3^2 e^{-ikL} or A3 is numerically zero.
PartialDecomposition decompose_exact(const ScatteringSolution& solution,
                                     const BarrierSystem& system, const DispersionModel& model);

OneBarrierCoefficients one_barrier_coefficients(const Wavevectors& w, double width);

CorrectionTerms correction_terms(const Wavevectors& w, const BarrierSystem& system);

NoReflectionBudget no_reflection_budget(const Wavevectors& w, const BarrierSystem& system);

AppendixCoefficients appendix_coefficients(const Wavevectors& w, const BarrierSystem& system);

std::array<CoefficientComparison, 8> compare_appendix(const AppendixCoefficients& approx,
                                                      const ScatteringSolution& exact,
                                                      const BarrierSystem& system);

/// Partial sum of (r1 r2)^l for l < terms. Throws DomainError if |r1 r2| >= 1.
cplx geometric_series_check(cplx r1, cplx r2, int terms);

/// Leading opaque term of the multiple-reflection sum, written with kL/2
/// phases.
cplx opaque_multiple_reflection_sum(const Wavevectors& w, const BarrierSystem& system);

}  // namespace mbt
