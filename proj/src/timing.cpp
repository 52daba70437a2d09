#include "mbt/timing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mbt/double_barrier.hpp"
#include "mbt/errors.hpp"
#include "mbt/opaque_model.hpp"

namespace mbt {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kUnderflow = 1e-300;

double relative_spread(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double mag = 0.0;
  for (double v : values) mag = std::max(mag, std::abs(v));
  return mag > 0.0 ? (*hi - *lo) / mag : 0.0;
}

}  // namespace

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

cplx reference_transmission(const BarrierSystem& system, const DispersionModel& model,
                            double omega) {
  const ScatteringSolution sol = solve_exact(system, model, omega);
  return sol.transmission * std::exp(kI * sol.k * system.width);
}

PhaseTimeResult phase_time(const BarrierSystem& system, const DispersionModel& model,
                           double omega, double step, PhaseTimeMethod method) {
  if (!(step > 0.0)) {
    throw ArgumentError("finite-difference step must be positive");
  }
  const double v0 = model.barrier_height();
  if (!(omega - step > 0.0) || (omega < v0 && !(omega + step < v0))) {
    std::ostringstream os;
    os << "phase time stencil [" << omega - step << ", " << omega + step
       << "] leaves the admissible interval";
    throw DomainError(os.str());
  }
  auto g = [&](double w) { return reference_transmission(system, model, w); };
  const cplx center = g(omega);
  if (std::abs(center) < kUnderflow) {
    throw NumericError("transmitted amplitude underflow; reduce N or the barrier width");
  }

  auto estimate = [&](double h) {
    const cplx plus = g(omega + h);
    const cplx minus = g(omega - h);
    if (method == PhaseTimeMethod::LogDerivative) {
      return ((plus - minus) / (2.0 * h * center)).imag();
    }
    return wrap_angle(std::arg(plus) - std::arg(minus)) / (2.0 * h);
  };

  PhaseTimeResult r;
  r.omega = omega;
  r.phase = std::arg(center);
  r.method = method;
  r.tau = (4.0 * estimate(0.5 * step) - estimate(step)) / 3.0;
  return r;
}

PhaseTimeResult phase_time(const BarrierSystem& system, const DispersionModel& model,
                           double omega) {
  return phase_time(system, model, omega, kDefaultRelativeStep * omega);
}

HartmanScan hartman_scan(const DispersionModel& model, double omega,
                         std::span<const double> widths) {
  const Wavevectors w = dispersion_eval(model, omega);
  HartmanScan scan;
  std::vector<double> taus;
  for (double a : widths) {
    BarrierSystem sys{1, a, a, model.barrier_height()};
    const double tau = phase_time(sys, model, omega).tau;
    scan.points.push_back({a, w.chi * a, tau});
    scan.all_opaque = scan.all_opaque && w.chi * a >= kHartmanMinOpacity;
    taus.push_back(tau);
  }
  scan.spread = relative_spread(taus);
  return scan;
}

HartmanScan hartman_scan_opaque(const DispersionModel& model, double omega,
                                std::span<const double> widths) {
  const Wavevectors w = dispersion_eval(model, omega);
  HartmanScan scan;
  std::vector<double> taus;
  for (double a : widths) {
    const double tau = opaque_phase_time(model, omega);
    scan.points.push_back({a, w.chi * a, tau});
    scan.all_opaque = scan.all_opaque && w.chi * a >= kHartmanMinOpacity;
    taus.push_back(tau);
  }
  scan.spread = relative_spread(taus);
  return scan;
}

namespace {

bool near_resonance(const Wavevectors& w, double gap) {
  if (!(gap > 0.0)) return false;
  return std::abs(resonance_denominator(w, gap)) <= kOffResonanceGate * 2.0 * w.chi * w.k;
}

}  // namespace

NIndependenceScan n_independence_scan(const DispersionModel& model, double omega, double width,
                                      double period, std::span<const int> n_values) {
  const Wavevectors w = dispersion_eval(model, omega);
  NIndependenceScan scan;
  scan.resonant_regime = near_resonance(w, period - width);
  std::vector<double> taus;
  for (int n : n_values) {
    BarrierSystem sys{n, width, period, model.barrier_height()};
    const double tau = phase_time(sys, model, omega).tau;
    scan.points.push_back({n, tau});
    taus.push_back(tau);
  }
  scan.spread = relative_spread(taus);
  return scan;
}

NIndependenceScan n_independence_scan_opaque(const DispersionModel& model, double omega,
                                             double width, double period,
                                             std::span<const int> n_values) {
  const Wavevectors w = dispersion_eval(model, omega);
  NIndependenceScan scan;
  scan.resonant_regime = near_resonance(w, period - width);
  std::vector<double> taus;
  for (int n : n_values) {
    BarrierSystem{n, width, period, model.barrier_height()}.check();
    const double tau = opaque_phase_time(model, omega);
    scan.points.push_back({n, tau});
    taus.push_back(tau);
  }
  scan.spread = relative_spread(taus);
  return scan;
}

PhaseBudget phase_budget(const BarrierSystem& system, const DispersionModel& model,
                         double omega) {
  const ScatteringSolution sol = solve_exact(system, model, omega);
  const PartialDecomposition d = decompose_exact(sol, system, model);
  const double k = sol.k;
  const double a = system.width;
  const double big_l = system.period;
  const cplx shift_a = std::exp(kI * k * a);

  PhaseBudget b;
  b.phi1 = std::arg(d.t1 * shift_a);
  b.phi2 = std::arg(d.t2 * shift_a);
  b.phi_s = std::arg(d.s * std::exp(kI * k * system.gap()));
  b.phi0 = std::arg(d.t_ob * shift_a);
  b.total = b.phi1 + (b.phi2 - k * big_l) + b.phi_s;
  b.phase = std::arg(sol.transmission * shift_a);
  b.closure_residual = std::abs(wrap_angle(b.total - b.phase));

  b.phi1_predicted = b.phi0 - 0.5 * k * big_l + k * a;
  b.phi_s_predicted = -b.phi0 + 0.5 * k * big_l - k * a;
  b.phi1_residual = wrap_angle(b.phi1 - b.phi1_predicted);
  b.phi2_residual = wrap_angle(b.phi2 - k * big_l - b.phi0);
  b.phi_s_residual = wrap_angle(b.phi_s - b.phi_s_predicted);

  b.first_edge_sum = wrap_angle(b.phi1 + b.phi_s);
  b.phi0_minus_phi1 = wrap_angle(b.phi0 - b.phi1);
  b.phi_q = std::arg(d.t_q);
  b.phi_r = std::arg(d.t_r);
  return b;
}

}  // namespace mbt
