#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "mbt/errors.hpp"
#include "mbt/opaque_model.hpp"
#include "mbt/timing.hpp"

using namespace mbt;

namespace {

// Closed-form single-barrier phase, arg(T e^{ika}) = -atan((chi^2-k^2)/(2 k chi) tanh(chi a)).
double single_barrier_phase(double v0, double omega, double a) {
  const double k = std::sqrt(omega);
  const double chi = std::sqrt(v0 - omega);
  return -std::atan((chi * chi - k * k) / (2 * k * chi) * std::tanh(chi * a));
}

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  constexpr double pi = std::numbers::pi;
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(0.25 + 6 * pi) == doctest::Approx(0.25));
}

TEST_CASE("single-barrier phase time matches the derivative of the closed form") {
  const auto model = DispersionModel::particle(10.0);
  for (double a : {0.5, 1.0, 2.0}) {
    const BarrierSystem sys{1, a, a, 10.0};
    for (double omega : {2.0, 5.0, 8.0}) {
      const double h = 1e-5;
      const double expected =
          (single_barrier_phase(10.0, omega + h, a) - single_barrier_phase(10.0, omega - h, a)) /
          (2 * h);
      const auto r = phase_time(sys, model, omega);
      CHECK(r.tau == doctest::Approx(expected).epsilon(1e-7));
      CHECK(r.phase == doctest::Approx(single_barrier_phase(10.0, omega, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("opaque limit of the single-barrier phase time is 1/(k chi)") {
  const auto model = DispersionModel::particle(10.0);
  const auto r = phase_time({1, 6.0, 6.0, 10.0}, model, 5.0);
  CHECK(r.tau == doctest::Approx(opaque_phase_time(model, 5.0)).epsilon(1e-6));
}

TEST_CASE("both estimators agree and are insensitive to the step") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{3, 1.0, 2.5, 10.0};
  const double omega = 4.0;
  const double h = kDefaultRelativeStep * omega;
  const double a = phase_time(sys, model, omega, h).tau;
  const double b = phase_time(sys, model, omega, h, PhaseTimeMethod::CentralDifference).tau;
  const double c = phase_time(sys, model, omega, 0.5 * h).tau;
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
  CHECK(a == doctest::Approx(c).epsilon(1e-6));
}

TEST_CASE("free propagation time is length over group velocity") {
  const auto model = DispersionModel::particle(0.0);
  const BarrierSystem sys{4, 0.7, 2.0, 0.0};
  for (double omega : {0.3, 1.0, 9.0}) {
    CHECK(phase_time(sys, model, omega).tau ==
          doctest::Approx(sys.total_length() / (2 * std::sqrt(omega))).epsilon(1e-7));
  }
}

TEST_CASE("Hartman effect: tau saturates in the barrier width") {
  const auto model = DispersionModel::particle(10.0);
  const double chi = std::sqrt(5.0);
  const std::vector<double> widths{8 / chi, 12 / chi, 16 / chi};
  const auto exact = hartman_scan(model, 5.0, widths);
  CHECK(exact.spread < 1e-2);
  CHECK(exact.all_opaque);
  CHECK(hartman_scan_opaque(model, 5.0, widths).spread == 0.0);
  const std::vector<double> thin{0.5, 1.0};
  CHECK_FALSE(hartman_scan(model, 5.0, thin).all_opaque);
}

TEST_CASE("tau is independent of the barrier count off resonance") {
  const auto model = DispersionModel::particle(10.0);
  const std::vector<int> ns{1, 2, 3};
  const auto scan = n_independence_scan(model, 5.0, 4.0, 10.0, ns);
  CHECK_FALSE(scan.resonant_regime);
  CHECK(scan.spread < 1e-2);
  REQUIRE(scan.points.size() == 3);
  CHECK(n_independence_scan_opaque(model, 5.0, 4.0, 10.0, ns).spread == 0.0);
}

TEST_CASE("phase budget closes and obeys the opaque predictions") {
  const auto model = DispersionModel::particle(10.0);
  const auto b = phase_budget({2, 4.0, 10.0, 10.0}, model, 5.0);
  CHECK(b.closure_residual < 1e-10);
  CHECK(std::abs(b.first_edge_sum) < 1e-3);
  CHECK(std::abs(b.phi1_residual) < 1e-3);
  CHECK(std::abs(b.phi2_residual) < 1e-3);
  CHECK(std::abs(b.phi_s_residual) < 1e-3);
  const auto eq = phase_budget({2, 4.0, 8.0, 10.0}, model, 5.0);
  CHECK(std::abs(eq.phi0_minus_phi1) < 1e-3);
}

TEST_CASE("stencils outside the tunneling interval are rejected") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{1, 1.0, 1.0, 10.0};
  CHECK_THROWS_AS(phase_time(sys, model, 1e-7, 1e-6), DomainError);
  CHECK_THROWS_AS(phase_time(sys, model, 10.0 - 1e-7, 1e-6), DomainError);
  CHECK_THROWS_AS(phase_budget({3, 4.0, 10.0, 10.0}, model, 5.0), ArgumentError);
}
