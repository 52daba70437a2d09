#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "mbt/dispersion.hpp"
#include "mbt/exact_solver.hpp"

namespace mbt {

/// Opaque-barrier factorization T(N) e^{ika} = C0 * E(N) * F(N).
struct OpaqueFactorization {
  cplx c0;
  double e_factor = 0.0;  ///< e^{-N chi a}
  double f_factor = 1.0;  ///< cavity factor to the power N-1; may be negative
  cplx product;
  double chi_a = 0.0;
  bool weakly_opaque = false;  ///< chi a below kWeakOpacity
};

inline constexpr double kWeakOpacity = 1.0;
/// Relative guard on the cavity denominator, |D| < guard * 2 chi k.
inline constexpr double kNearResonanceGuard = 1e-8;

/// D(omega) = 2 chi k cos k(L-a) - (k^2 - chi^2) sin k(L-a). Pole-free form of
/// the resonance condition.
double resonance_denominator(const Wavevectors& w, double gap);

/// Single-cavity factor 2 chi k / D. Throws NearResonanceError when D is
/// within the guard of zero.
double cavity_factor(const Wavevectors& w, double gap);

/// C0 = 4 i chi k / (k + i chi)^2.
cplx boundary_factor(const Wavevectors& w);

OpaqueFactorization opaque_transmission(const BarrierSystem& system, const Wavevectors& w);

/// arctan((k^2 - chi^2) / (2 chi k)), independent of the geometry.
double opaque_phase(const Wavevectors& w);

/// Analytic d(opaque_phase)/d(omega) under the model's dispersion.
double opaque_phase_time(const DispersionModel& model, double omega);

double opaque_probability(const BarrierSystem& system, const Wavevectors& w);

/// Frequencies with k(L-a) = nu pi, nu = 0..nu_max, restricted to (0, V0).
std::vector<double> antiresonance_frequencies(const BarrierSystem& system,
                                              const DispersionModel& model, int nu_max);

struct ResonanceReport {
  std::vector<double> roots;
  std::vector<double> residuals;          ///< |D(root)|
  std::vector<double> phase_residuals;    ///< |tan(phi) tan(k(L-a)) - 1|
  double n_independence_spread = 0.0;     ///< over n_compare; +inf on count mismatch
};

inline constexpr double kRootRelativeTolerance = 1e-12;

/// Sign-change bracketing of D on a uniform grid followed by bisection. Roots
/// closer together than the grid spacing can be missed.
ResonanceReport find_resonances(const BarrierSystem& system, const DispersionModel& model,
                                double omega_lo, double omega_hi, int grid_points);

/// Same search repeated for each barrier count; fills n_independence_spread.
ResonanceReport find_resonances(const BarrierSystem& system, const DispersionModel& model,
                                double omega_lo, double omega_hi, int grid_points,
                                std::span<const int> n_compare);

struct ResonanceTimeBudget {
  double tau = 0.0;   ///< d(phi)/d(omega) of the opaque phase
  double tau0 = 0.0;  ///< (L-a) dk/d(omega), free traversal of the gap
  double sum = 0.0;
  double denominator = 0.0;  ///< D(omega); large values mean omega is not a root
  bool is_root = true;
};

ResonanceTimeBudget resonance_time_budget(const BarrierSystem& system,
                                          const DispersionModel& model, double omega_res);

/// Checks the zero-sum identity phi' + K' = 0 for any pair with
/// tan(phi) tan(K) == 1 on [lo, hi].
struct PhaseSumIdentity {
  double max_product_residual = 0.0;  ///< max |tan(phi) tan(K) - 1|
  double max_derivative_sum = 0.0;    ///< max |phi' + K'|
};

PhaseSumIdentity check_phase_sum_identity(const std::function<double(double)>& phi,
                                          const std::function<double(double)>& cavity_phase,
                                          double lo, double hi, int samples, double step);

}  // namespace mbt
