#include "mbt/opaque_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mbt/errors.hpp"
#include "mbt/scan.hpp"

namespace mbt {

double resonance_denominator(const Wavevectors& w, double gap) {
  const double kg = w.k * gap;
  return 2.0 * w.chi * w.k * std::cos(kg) - (w.k * w.k - w.chi * w.chi) * std::sin(kg);
}

double cavity_factor(const Wavevectors& w, double gap) {
  const double numerator = 2.0 * w.chi * w.k;
  const double d = resonance_denominator(w, gap);
  if (std::abs(d) < kNearResonanceGuard * std::abs(numerator)) {
    std::ostringstream os;
    os << "opaque approximation invalid near resonance (denominator " << d << ")";
    throw NearResonanceError(os.str(), d);
  }
  return numerator / d;
}

cplx boundary_factor(const Wavevectors& w) {
  const cplx z{w.k, w.chi};
  return cplx{0.0, 4.0 * w.chi * w.k} / (z * z);
}

OpaqueFactorization opaque_transmission(const BarrierSystem& system, const Wavevectors& w) {
  system.check();
  OpaqueFactorization f;
  f.chi_a = w.chi * system.width;
  f.weakly_opaque = f.chi_a < kWeakOpacity;
  f.c0 = boundary_factor(w);
  f.e_factor = std::pow(std::exp(-f.chi_a), system.n_barriers);
  if (system.n_barriers > 1 && system.gap() > 0.0) {
    f.f_factor = std::pow(cavity_factor(w, system.gap()), system.n_barriers - 1);
  } else {
    f.f_factor = 1.0;
  }
  f.product = f.c0 * f.e_factor * f.f_factor;
  return f;
}

double opaque_phase(const Wavevectors& w) {
  return std::atan((w.k * w.k - w.chi * w.chi) / (2.0 * w.chi * w.k));
}

double opaque_phase_time(const DispersionModel& model, double omega) {
  // phi = pi/2 - 2 atan(chi / k), differentiated through k(omega), chi(omega).
  const Wavevectors w = dispersion_eval(model, omega);
  const double dk = model.dk_domega(omega);
  const double dchi = model.dchi_domega(omega);
  return -2.0 * (w.k * dchi - w.chi * dk) / (w.k * w.k + w.chi * w.chi);
}

double opaque_probability(const BarrierSystem& system, const Wavevectors& w) {
  system.check();
  const double kk = w.k * w.k;
  const double cc = w.chi * w.chi;
  const double edge = 4.0 * w.chi * w.k / (kk + cc);
  double p = edge * edge * std::exp(-2.0 * system.n_barriers * w.chi * system.width);
  if (system.n_barriers > 1 && system.gap() > 0.0) {
    const double f = cavity_factor(w, system.gap());
    p *= std::pow(f * f, system.n_barriers - 1);
  }
  return p;
}

std::vector<double> antiresonance_frequencies(const BarrierSystem& system,
                                              const DispersionModel& model, int nu_max) {
  system.check();
  if (!(system.gap() > 0.0)) {
    throw ArgumentError("anti-resonances need a positive gap L - a");
  }
  std::vector<double> out;
  for (int nu = 0; nu <= nu_max; ++nu) {
    const double k = nu * std::numbers::pi / system.gap();
    const double omega = model.omega_for_wavevector(k);
    if (model.in_tunneling_regime(omega)) {
      out.push_back(omega);
    }
  }
  return out;
}

namespace {

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= kRootRelativeTolerance * std::abs(mid)) {
      return mid;
    }
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      return mid;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ResonanceReport find_resonances(const BarrierSystem& system, const DispersionModel& model,
                                double omega_lo, double omega_hi, int grid_points) {
  system.check();
  if (grid_points < 2) {
    throw ArgumentError("resonance search needs at least 2 grid points");
  }
  if (!(omega_lo < omega_hi) || !model.in_tunneling_regime(omega_lo) ||
      !model.in_tunneling_regime(omega_hi)) {
    std::ostringstream os;
    os << "resonance search interval [" << omega_lo << ", " << omega_hi
       << "] must be ordered and inside (0, " << model.barrier_height() << ")";
    throw DomainError(os.str());
  }
  ResonanceReport report;
  if (!(system.gap() > 0.0)) {
    return report;
  }
  const double gap = system.gap();
  const auto d_of = [&](double omega) {
    return resonance_denominator(dispersion_eval(model, omega), gap);
  };
  const auto grid = linspace(omega_lo, omega_hi, grid_points);
  const auto values = evaluate_on_grid(d_of, grid, Execution::Parallel);
  for (const auto& [i, j] : sign_change_brackets(values)) {
    const double root = bisect_root(d_of, grid[i], grid[j], values[i]);
    const Wavevectors w = dispersion_eval(model, root);
    const double d = resonance_denominator(w, gap);
    const double tan_phi = (w.k * w.k - w.chi * w.chi) / (2.0 * w.chi * w.k);
    report.roots.push_back(root);
    report.residuals.push_back(std::abs(d));
    report.phase_residuals.push_back(std::abs(tan_phi * std::tan(w.k * gap) - 1.0));
  }
  return report;
}

ResonanceReport find_resonances(const BarrierSystem& system, const DispersionModel& model,
                                double omega_lo, double omega_hi, int grid_points,
                                std::span<const int> n_compare) {
  ResonanceReport report = find_resonances(system, model, omega_lo, omega_hi, grid_points);
  for (int n : n_compare) {
    BarrierSystem other = system;
    other.n_barriers = n;
    const auto alt = find_resonances(other, model, omega_lo, omega_hi, grid_points);
    if (alt.roots.size() != report.roots.size()) {
      report.n_independence_spread = std::numeric_limits<double>::infinity();
      return report;
    }
    for (std::size_t r = 0; r < alt.roots.size(); ++r) {
      report.n_independence_spread =
          std::max(report.n_independence_spread, std::abs(alt.roots[r] - report.roots[r]));
    }
  }
  return report;
}

ResonanceTimeBudget resonance_time_budget(const BarrierSystem& system,
                                          const DispersionModel& model, double omega_res) {
  system.check();
  const Wavevectors w = dispersion_eval(model, omega_res);
  ResonanceTimeBudget b;
  b.tau = opaque_phase_time(model, omega_res);
  b.tau0 = system.gap() * model.dk_domega(omega_res);
  b.sum = b.tau + b.tau0;
  b.denominator = resonance_denominator(w, system.gap());
  b.is_root = std::abs(b.denominator) < kNearResonanceGuard * 2.0 * w.chi * w.k;
  return b;
}

PhaseSumIdentity check_phase_sum_identity(const std::function<double(double)>& phi,
                                          const std::function<double(double)>& cavity_phase,
                                          double lo, double hi, int samples, double step) {
  if (samples < 1 || !(step > 0.0)) {
    throw ArgumentError("identity check needs samples >= 1 and a positive step");
  }
  PhaseSumIdentity out;
  for (int s = 0; s < samples; ++s) {
    const double x = samples == 1 ? lo : lo + (hi - lo) * s / (samples - 1);
    const double product = std::tan(phi(x)) * std::tan(cavity_phase(x));
    const double dphi = (phi(x + step) - phi(x - step)) / (2.0 * step);
    const double dcav = (cavity_phase(x + step) - cavity_phase(x - step)) / (2.0 * step);
    out.max_product_residual = std::max(out.max_product_residual, std::abs(product - 1.0));
    out.max_derivative_sum = std::max(out.max_derivative_sum, std::abs(dphi + dcav));
  }
  return out;
}

}  // namespace mbt
