#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "mbt/errors.hpp"
#include "mbt/opaque_model.hpp"
#include "mbt/scan.hpp"

using namespace mbt;

namespace {

constexpr cplx I{0.0, 1.0};

double hand_denominator(double k, double chi, double gap) {
  return 2 * chi * k * std::cos(k * gap) - (k * k - chi * chi) * std::sin(k * gap);
}

}  // namespace

TEST_CASE("factors agree with their closed forms") {
  const auto model = DispersionModel::particle(10.0);
  const Wavevectors w = dispersion_eval(model, 5.0);
  const double k = w.k;
  const double chi = w.chi;
  const cplx c0 = 4.0 * I * chi * k / ((k + I * chi) * (k + I * chi));
  CHECK(std::abs(boundary_factor(w) - c0) < 1e-14);
  CHECK(resonance_denominator(w, 6.0) == doctest::Approx(hand_denominator(k, chi, 6.0)));
  CHECK(cavity_factor(w, 6.0) ==
        doctest::Approx(2 * chi * k / hand_denominator(k, chi, 6.0)).epsilon(1e-14));

  const BarrierSystem sys{3, 4.0, 10.0, 10.0};
  const auto f = opaque_transmission(sys, w);
  CHECK(f.e_factor == doctest::Approx(std::exp(-3 * chi * 4.0)));
  CHECK(f.f_factor == doctest::Approx(std::pow(cavity_factor(w, 6.0), 2)));
  CHECK(std::abs(f.product - f.c0 * f.e_factor * f.f_factor) < 1e-30);
  CHECK(f.chi_a == doctest::Approx(4.0 * chi));
  CHECK_FALSE(f.weakly_opaque);
  CHECK(opaque_probability(sys, w) == doctest::Approx(std::norm(f.product)).epsilon(1e-12));
}

TEST_CASE("single barrier and contiguous stacks carry no cavity factor") {
  const Wavevectors w = dispersion_eval(DispersionModel::particle(10.0), 5.0);
  CHECK(opaque_transmission({1, 2.0, 7.0, 10.0}, w).f_factor == 1.0);
  CHECK(opaque_transmission({3, 2.0, 2.0, 10.0}, w).f_factor == 1.0);
}

TEST_CASE("weak opacity is flagged") {
  const Wavevectors w = dispersion_eval(DispersionModel::particle(10.0), 9.9);
  CHECK(opaque_transmission({1, 0.5, 0.5, 10.0}, w).weakly_opaque);
}

TEST_CASE("phase is pi/2 - 2 arctan(chi/k) independent of geometry") {
  const auto model = DispersionModel::particle(10.0);
  for (double omega : {1.0, 5.0, 8.0}) {
    const Wavevectors w = dispersion_eval(model, omega);
    const double expected = std::numbers::pi / 2 - 2 * std::atan(w.chi / w.k);
    CHECK(std::abs(std::remainder(opaque_phase(w) - expected, 2 * std::numbers::pi)) < 1e-14);
    CHECK(std::abs(std::remainder(std::arg(boundary_factor(w)) - opaque_phase(w),
                                  2 * std::numbers::pi)) < 1e-14);
  }
}

TEST_CASE("analytic phase time is 1/(k chi) and matches a difference quotient") {
  const auto model = DispersionModel::particle(10.0);
  for (double omega : {1.0, 5.0, 8.0}) {
    const Wavevectors w = dispersion_eval(model, omega);
    CHECK(opaque_phase_time(model, omega) == doctest::Approx(1.0 / (w.k * w.chi)).epsilon(1e-13));
    const double h = 1e-6;
    const double fd = (opaque_phase(dispersion_eval(model, omega + h)) -
                       opaque_phase(dispersion_eval(model, omega - h))) /
                      (2 * h);
    CHECK(opaque_phase_time(model, omega) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("near-resonance guard raises with the denominator attached") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{2, 4.0, 10.0, 10.0};
  const auto roots = find_resonances(sys, model, 0.1, 9.9, 1000).roots;
  REQUIRE_FALSE(roots.empty());
  const Wavevectors w = dispersion_eval(model, roots.front());
  try {
    (void)cavity_factor(w, sys.gap());
    FAIL("expected NearResonanceError");
  } catch (const NearResonanceError& e) {
    CHECK(std::abs(e.denominator()) < 1e-8 * 2 * w.chi * w.k);
  }
  CHECK_THROWS_AS(opaque_transmission(sys, w), NumericError);
}

TEST_CASE("bisection roots agree with a dense interpolated scan of D") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{2, 4.0, 10.0, 10.0};
  const auto report = find_resonances(sys, model, 0.1, 9.9, 500);

  // Independent oracle: 10^6-point scan with linear interpolation at sign changes.
  const int n = 1000000;
  std::vector<double> oracle;
  double prev_x = 0.1;
  double prev_d = resonance_denominator(dispersion_eval(model, prev_x), sys.gap());
  for (int i = 1; i <= n; ++i) {
    const double x = 0.1 + 9.8 * i / n;
    const double d = resonance_denominator(dispersion_eval(model, x), sys.gap());
    if ((prev_d < 0) != (d < 0)) oracle.push_back(prev_x - prev_d * (x - prev_x) / (d - prev_d));
    prev_x = x;
    prev_d = d;
  }
  REQUIRE(report.roots.size() == oracle.size());
  REQUIRE(report.roots.size() == 6);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(report.roots[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
    CHECK(report.phase_residuals[i] < 1e-8);
  }
}

TEST_CASE("roots do not depend on the number of barriers") {
  const auto model = DispersionModel::particle(10.0);
  const std::vector<int> others{3, 5};
  const auto report = find_resonances({2, 4.0, 7.0, 10.0}, model, 0.1, 9.9, 2000, others);
  CHECK(report.n_independence_spread == 0.0);
  CHECK(report.roots.size() == 3);
  const auto again = find_resonances({5, 4.0, 7.0, 10.0}, model, 0.1, 9.9, 2000);
  CHECK(again.roots == report.roots);
}

TEST_CASE("contiguous stacks have no resonances; bad intervals are rejected") {
  const auto model = DispersionModel::particle(10.0);
  CHECK(find_resonances({2, 4.0, 4.0, 10.0}, model, 0.1, 9.9, 100).roots.empty());
  CHECK_THROWS_AS(find_resonances({2, 4.0, 7.0, 10.0}, model, 5.0, 1.0, 100), DomainError);
  CHECK_THROWS_AS(find_resonances({2, 4.0, 7.0, 10.0}, model, 0.1, 11.0, 100), DomainError);
}

TEST_CASE("anti-resonances satisfy k(L-a) = nu pi") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{2, 1.0, 3.0, 10.0};
  const auto omegas = antiresonance_frequencies(sys, model, 10);
  REQUIRE(omegas.size() == 2);
  for (std::size_t nu = 0; nu < omegas.size(); ++nu) {
    const double k = std::sqrt(omegas[nu] > 0 ? omegas[nu] : 0.0);
    CHECK(std::abs(std::sin(k * sys.gap())) < 1e-12);
  }
  CHECK_THROWS_AS(antiresonance_frequencies({2, 1.0, 1.0, 10.0}, model, 3), ArgumentError);
}

TEST_CASE("resonance time budget reports finite components") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{2, 4.0, 7.0, 10.0};
  for (double root : find_resonances(sys, model, 0.1, 9.9, 2000).roots) {
    const auto b = resonance_time_budget(sys, model, root);
    const Wavevectors w = dispersion_eval(model, root);
    CHECK(b.is_root);
    CHECK(b.tau == doctest::Approx(1.0 / (w.k * w.chi)));
    CHECK(b.tau0 == doctest::Approx(sys.gap() / (2 * w.k)));
    CHECK(b.sum == doctest::Approx(b.tau + b.tau0));
  }
  CHECK_FALSE(resonance_time_budget(sys, model, 5.0).is_root);
}

TEST_CASE("phase-sum identity holds for a complementary family and fails otherwise") {
  const auto theta = [](double x) { return 0.4 + 0.1 * x; };
  const auto good = check_phase_sum_identity(
      theta, [&](double x) { return std::numbers::pi / 2 - theta(x); }, 0.1, 2.0, 40, 1e-5);
  CHECK(good.max_product_residual < 1e-12);
  CHECK(good.max_derivative_sum < 1e-8);
  const auto bad = check_phase_sum_identity(theta, theta, 0.1, 2.0, 40, 1e-5);
  CHECK(bad.max_derivative_sum > 0.1);
}
