#pragma once

#include <span>
#include <vector>

#include "mbt/dispersion.hpp"
#include "mbt/exact_solver.hpp"

namespace mbt {

enum class PhaseTimeMethod { LogDerivative, CentralDifference };

struct PhaseTimeResult {
  double omega = 0.0;
  double phase = 0.0;  ///< arg(T e^{ika}) in (-pi, pi]
  double tau = 0.0;
  PhaseTimeMethod method = PhaseTimeMethod::LogDerivative;
};

inline constexpr double kDefaultRelativeStep = 1e-6;

/// Maps an angle into (-pi, pi].
double wrap_angle(double angle);

/// G(omega) = T(omega) e^{ik(omega) a} from the exact solver.
cplx reference_transmission(const BarrierSystem& system, const DispersionModel& model,
                            double omega);

/// Phase time d arg(G) / d omega. The log-derivative method differences G
/// itself, so it needs no phase unwrapping; both methods apply one Richardson
/// step. Throws NumericError if |G| underflows.
PhaseTimeResult phase_time(const BarrierSystem& system, const DispersionModel& model,
                           double omega, double step,
                           PhaseTimeMethod method = PhaseTimeMethod::LogDerivative);
PhaseTimeResult phase_time(const BarrierSystem& system, const DispersionModel& model,
                           double omega);

struct WidthScanPoint {
  double width = 0.0;
  double chi_a = 0.0;
  double tau = 0.0;
};

struct HartmanScan {
  std::vector<WidthScanPoint> points;
  double spread = 0.0;  ///< (max tau - min tau) / max |tau|
  bool all_opaque = true;  ///< every chi a >= kHartmanMinOpacity
};

inline constexpr double kHartmanMinOpacity = 4.0;

/// Single-barrier phase time from the exact solver at each width.
HartmanScan hartman_scan(const DispersionModel& model, double omega,
                         std::span<const double> widths);
/// Same scan with the analytic opaque phase time.
HartmanScan hartman_scan_opaque(const DispersionModel& model, double omega,
                                std::span<const double> widths);

struct CountScanPoint {
  int n_barriers = 0;
  double tau = 0.0;
};

struct NIndependenceScan {
  std::vector<CountScanPoint> points;
  double spread = 0.0;
  bool resonant_regime = false;  ///< |D(omega)| <= kOffResonanceGate * 2 chi k
};

inline constexpr double kOffResonanceGate = 0.1;

NIndependenceScan n_independence_scan(const DispersionModel& model, double omega, double width,
                                      double period, std::span<const int> n_values);
NIndependenceScan n_independence_scan_opaque(const DispersionModel& model, double omega,
                                             double width, double period,
                                             std::span<const int> n_values);

/// Phase bookkeeping of the two-barrier decomposition.
struct PhaseBudget {
  double phi1 = 0.0;   ///< arg(t1 e^{ika})
  double phi2 = 0.0;   ///< arg(t2 e^{ika})
  double phi_s = 0.0;  ///< arg(s e^{ik(L-a)})
  double phi0 = 0.0;   ///< arg(t_ob e^{ika})
  double total = 0.0;  ///< phi1 + (phi2 - kL) + phi_s
  double phase = 0.0;  ///< arg(T e^{ika})
  double closure_residual = 0.0;  ///< |wrap(total - phase)|

  // Opaque-limit predictions and their wrapped residuals.
  double phi1_predicted = 0.0;  ///< phi0 - kL/2 + ka
  double phi_s_predicted = 0.0;  ///< -phi0 + kL/2 - ka
  double phi1_residual = 0.0;
  double phi2_residual = 0.0;  ///< wrap(phi2 - kL - phi0)
  double phi_s_residual = 0.0;

  double first_edge_sum = 0.0;   ///< wrap(phi1 + phi_s)
  double phi0_minus_phi1 = 0.0;  ///< wrapped
  double phi_q = 0.0;            ///< arg(t_q)
  double phi_r = 0.0;            ///< arg(t_r)
};

PhaseBudget phase_budget(const BarrierSystem& system, const DispersionModel& model,
                         double omega);

}  // namespace mbt
