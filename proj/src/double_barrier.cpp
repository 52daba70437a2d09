#include "mbt/double_barrier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbt/errors.hpp"
#include "mbt/opaque_model.hpp"

namespace mbt {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSingularDenominator = 1e-12;
constexpr double kVanishingAmplitude = 1e-300;

void require_two_barriers(const BarrierSystem& system) {
  system.check();
  if (system.n_barriers != 2) {
    std::ostringstream os;
    os << "double-barrier analysis needs N = 2, got N = " << system.n_barriers;
    throw ArgumentError(os.str());
  }
}

// (k - i chi) / (k + i chi), a pure phase.
cplx edge_reflection(const Wavevectors& w) { return cplx{w.k, -w.chi} / cplx{w.k, w.chi}; }

}  // namespace

OneBarrierCoefficients one_barrier_coefficients(const Wavevectors& w, double width) {
  const cplx c0 = boundary_factor(w);
  const double e = std::exp(-w.chi * width);
  return {edge_reflection(w) * (1.0 - c0 * e * e), c0 * std::exp(-kI * w.k * width) * e};
}

CorrectionTerms correction_terms(const Wavevectors& w, const BarrierSystem& system) {
  require_two_barriers(system);
  const double f = cavity_factor(w, system.gap());
  const double e = std::exp(-w.chi * system.width);
  const cplx u = edge_reflection(w);
  const cplx u2 = u * u;
  const cplx u3 = u2 * u;
  const double k = w.k;
  const cplx gap2 = std::exp(2.0 * kI * k * system.gap());
  const cplx period = std::exp(kI * k * system.period);
  CorrectionTerms c;
  c.r_q = -u3 * f * f * gap2 * e * e;
  c.r_r = u3 * f * f * period * e * e;
  c.t_q = u2 * f * gap2 / period * e;
  c.t_r = -u2 * f * e;
  return c;
}

NoReflectionBudget no_reflection_budget(const Wavevectors& w, const BarrierSystem& system) {
  const CorrectionTerms corr = correction_terms(w, system);
  const auto ob = one_barrier_coefficients(w, system.width);
  const double f = cavity_factor(w, system.gap());
  const double e = std::exp(-w.chi * system.width);
  const cplx c0 = boundary_factor(w);
  const cplx alt = edge_reflection(w) * c0 * f * std::exp(kI * w.k * system.gap()) * e * e;

  // 1 - |r_ob|^2 - |t_ob|^2 with |r_ob| = |1 - C0 e^{-2 chi a}| expanded; no
  // term below contains the cancelled unit parts.
  const cplx c = c0 * e * e;
  const double ob_shortfall = 2.0 * c.real() - std::norm(c) - std::norm(ob.t);
  auto cross = [](cplx base, cplx extra) {
    return 2.0 * (std::conj(base) * extra).real() + std::norm(extra);
  };

  NoReflectionBudget b;
  b.deficit = ob_shortfall - cross(ob.r, corr.r_q) - cross(ob.t, corr.t_q);
  b.ors_excess = -ob_shortfall + cross(ob.r, alt) + cross(ob.t, corr.t_q);
  b.predicted = f * f * e * e;
  b.multiple_reflection_probability = std::norm(corr.r_r) + std::norm(corr.t_r);
  return b;
}

PartialDecomposition decompose_exact(const ScatteringSolution& solution,
                                     const BarrierSystem& system, const DispersionModel& model) {
  require_two_barriers(system);
  if (solution.barrier.size() != 2 || solution.gap.size() != 1) {
    throw ArgumentError("solution does not describe a two-barrier system");
  }
  const Wavevectors w = dispersion_eval(model, solution.omega);
  const cplx a3 = solution.gap[0].a;
  const cplx b3 = solution.gap[0].b;
  const cplx big_r = solution.reflection;
  const cplx big_t = solution.transmission;
  const cplx back = std::exp(-kI * w.k * system.period);

  // Solving R = r1 + B3 t1, A3 = t1 s, B3 = A3 r2 e^{ikL} for r1 and t1 keeps
  // the e^{-ikL} factor in the shared denominator.
  const cplx denom = 1.0 - b3 * b3 * back;
  if (std::abs(denom) < kSingularDenominator || std::abs(a3) < kVanishingAmplitude) {
    std::ostringstream os;
    os << "decomposition singular at omega = " << solution.omega << " (|1 - B3^2 e^{-ikL}| = "
       << std::abs(denom) << ", |A3| = " << std::abs(a3) << ")";
    throw NumericError(os.str());
  }

  PartialDecomposition d;
  d.r1 = (big_r - a3 * b3) / denom;
  d.t1 = (a3 - b3 * big_r * back) / denom;
  d.r2 = b3 / a3 * back;
  d.t2 = big_t / a3;
  d.s = 1.0 / (1.0 - d.r1 * d.r2);

  const auto ob = one_barrier_coefficients(w, system.width);
  const auto corr = correction_terms(w, system);
  d.r_ob = ob.r;
  d.t_ob = ob.t;
  d.r_q = corr.r_q;
  d.t_q = corr.t_q;
  d.r_r = corr.r_r;
  d.t_r = corr.t_r;
  d.r1_0 = ob.r + corr.r_q;
  d.t1_0 = ob.t + corr.t_q;
  d.cavity = cavity_factor(w, system.gap());
  const double e = std::exp(-w.chi * system.width);
  d.r1_0_ors = ob.r + edge_reflection(w) * boundary_factor(w) * d.cavity *
                          std::exp(kI * w.k * system.gap()) * e * e;
  return d;
}

AppendixCoefficients appendix_coefficients(const Wavevectors& w, const BarrierSystem& system) {
  require_two_barriers(system);
  const double k = w.k;
  const double chi = w.chi;
  const double f = cavity_factor(w, system.gap());
  const double e = std::exp(-chi * system.width);
  const double s = std::sin(k * system.gap());
  const cplx minus{k, -chi};
  const cplx plus{k, chi};
  const cplx u = minus / plus;
  const cplx lift = 2.0 * k / minus;
  const cplx mix = minus * minus / (2.0 * chi * k);
  const cplx period = std::exp(kI * k * system.period);

  AppendixCoefficients c;
  c.r = u * (1.0 + 2.0 * kI * s * f * e * e);
  c.a2 = lift * mix * s * f * e * e;
  c.b2 = u * (lift * (1.0 - mix * s * f * e * e));
  c.a3 = f * e / period;
  c.b3 = u * period * f * e;
  c.a4 = 0.0;
  c.b4 = 2.0 * k / plus * f * e;
  c.t = boundary_factor(w) * f * e * e;
  return c;
}

std::array<CoefficientComparison, 8> compare_appendix(const AppendixCoefficients& approx,
                                                      const ScatteringSolution& exact,
                                                      const BarrierSystem& system) {
  require_two_barriers(system);
  const double grow = std::exp(exact.kappa.real() * system.width);
  const auto& b1 = exact.barrier[0];
  const auto& b2 = exact.barrier[1];
  const auto& g = exact.gap[0];
  const double scale_b1 = std::max(std::abs(b1.a) * grow, std::abs(b1.b));
  const double scale_b2 = std::max(std::abs(b2.a) * grow, std::abs(b2.b));
  const double scale_g = std::max(std::abs(g.a), std::abs(g.b));
  const cplx t_ref = exact.transmission * std::exp(kI * exact.k * system.width);

  auto entry = [](std::string_view name, cplx x, cplx y, double scale) {
    const double diff = std::abs(x - y);
    return CoefficientComparison{name, x, y, diff / std::abs(y), diff / scale};
  };
  return {entry("R", approx.r, exact.reflection, std::abs(exact.reflection)),
          entry("A2", approx.a2, b1.a, scale_b1),
          entry("B2", approx.b2, b1.b, scale_b1),
          entry("A3", approx.a3, g.a, scale_g),
          entry("B3", approx.b3, g.b, scale_g),
          entry("A4", approx.a4, b2.a, scale_b2),
          entry("B4", approx.b4, b2.b, scale_b2),
          entry("T", approx.t, t_ref, std::abs(t_ref))};
}

cplx geometric_series_check(cplx r1, cplx r2, int terms) {
  const cplx ratio = r1 * r2;
  if (std::abs(ratio) >= 1.0) {
    throw DomainError("multiple-reflection series diverges: |r1 r2| >= 1");
  }
  if (terms < 1) {
    throw ArgumentError("series needs at least one term");
  }
  cplx sum = 0.0;
  cplx power = 1.0;
  for (int l = 0; l < terms; ++l) {
    sum += power;
    power *= ratio;
  }
  return sum;
}

cplx opaque_multiple_reflection_sum(const Wavevectors& w, const BarrierSystem& system) {
  require_two_barriers(system);
  const cplx plus{w.k, w.chi};
  const double half = 0.5 * system.period;
  return plus * plus / cplx{0.0, 4.0 * w.chi * w.k} * std::exp(-kI * w.k * half) *
         cavity_factor(w, half);
}

}  // namespace mbt
