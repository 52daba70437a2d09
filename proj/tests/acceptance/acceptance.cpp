// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
// Thresholds are fixed here, never read from a config file.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbt/double_barrier.hpp"
#include "mbt/opaque_model.hpp"
#include "mbt/scan.hpp"
#include "mbt/timing.hpp"

using namespace mbt;

namespace {

using Clock = std::chrono::steady_clock;
constexpr cplx I{0.0, 1.0};
constexpr double V0 = 10.0;
constexpr double OMEGA = 5.0;

double seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(cplx x, cplx y) { return std::abs(x - y) / std::abs(y); }
double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  return (*hi - *lo) / scale;
}

struct Verdict {
  bool pass;
  std::string measured;
};

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(4);
  (os << ... << parts);
  return os.str();
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> n(1, 6);
  std::vector<BarrierSystem> systems(200);
  std::vector<double> omegas(200);
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const double v0 = 1.0 + 19.0 * u(rng);
    omegas[i] = v0 * (0.05 + 0.9 * u(rng));
    const double a = 0.5 + 4.5 * u(rng);
    systems[i] = {n(rng), a, a + 10.0 * u(rng), v0};
  }
  std::vector<double> diff(systems.size());
  for_each_index(systems.size(), Execution::Parallel, [&](std::size_t i) {
    const auto model = DispersionModel::particle(systems[i].height);
    diff[i] = max_relative_difference(solve_exact(systems[i], model, omegas[i]),
                                      brute_force_solve(systems[i], model, omegas[i]));
  });
  const double worst = *std::max_element(diff.begin(), diff.end());
  const double t = seconds(t0);
  return {worst < 1e-9 && t < 10.0, cat("max rel diff ", worst, " (< 1e-9), ", t, " s (< 10 s)")};
}

Verdict criterion2() {
  const auto t0 = Clock::now();
  const auto model = DispersionModel::particle(V0);
  const auto grid = linspace(0.01 * V0, 0.99 * V0, 1000);
  double worst = 0.0;
  for (int n : {1, 2, 3, 5}) {
    const BarrierSystem sys{n, 4.0, 10.0, V0};
    const auto d = evaluate_on_grid(
        [&](double w) { return std::abs(unitarity_defect(solve_exact(sys, model, w))); }, grid,
        Execution::Parallel);
    worst = std::max(worst, *std::max_element(d.begin(), d.end()));
  }
  const double t = seconds(t0);
  return {worst < 1e-10 && t < 5.0, cat("max defect ", worst, " (< 1e-10), ", t, " s (< 5 s)")};
}

double factorization_error(int n, double a, double gap) {
  const auto model = DispersionModel::particle(V0);
  const BarrierSystem sys{n, a, a + gap, V0};
  const auto sol = solve_exact(sys, model, OMEGA);
  const cplx exact = sol.transmission * std::exp(I * sol.k * a);
  return std::abs(exact - opaque_transmission(sys, dispersion_eval(model, OMEGA)).product) /
         std::abs(sol.transmission);
}

Verdict criterion3() {
  double worst = 0.0;
  double weakest_shrink = std::numeric_limits<double>::infinity();
  for (int n : {1, 2, 3}) {
    const double e4 = factorization_error(n, 4.0, 6.0);
    worst = std::max(worst, e4);
    weakest_shrink = std::min(weakest_shrink, e4 / factorization_error(n, 8.0, 6.0));
  }
  return {worst < 1e-3 && weakest_shrink >= 10.0,
          cat("max rel error ", worst, " (< 1e-3), min shrink on doubling a ", weakest_shrink,
              " (>= 10)")};
}

Verdict criterion4() {
  const auto model = DispersionModel::particle(V0);
  const double chi = std::sqrt(V0 - OMEGA);
  std::vector<double> widths{8.0 / chi, 12.0 / chi, 16.0 / chi};
  std::vector<double> taus;
  for (double a : widths) taus.push_back(phase_time({1, a, a, V0}, model, OMEGA).tau);
  const double opaque = hartman_scan_opaque(model, OMEGA, widths).spread;
  const double exact = spread(taus);
  return {exact < 1e-2 && opaque == 0.0,
          cat("exact spread ", exact, " (< 0.01), opaque spread ", opaque, " (== 0)")};
}

Verdict criterion5() {
  const auto model = DispersionModel::particle(V0);
  const Wavevectors w = dispersion_eval(model, OMEGA);
  const double d = std::abs(resonance_denominator(w, 6.0)) / (2 * w.chi * w.k);
  std::vector<double> taus;
  for (int n : {1, 2, 3}) taus.push_back(phase_time({n, 4.0, 10.0, V0}, model, OMEGA).tau);
  const double s = spread(taus);
  return {s < 1e-2 && d > 0.1,
          cat("spread ", s, " (< 0.01), |D|/(2 chi k) ", d, " (off resonance > 0.1)")};
}

Verdict criterion6() {
  const auto model = DispersionModel::particle(V0);
  const auto r2 = find_resonances({2, 4.0, 7.0, V0}, model, 0.1, 9.9, 2000).roots;
  const auto r3 = find_resonances({3, 4.0, 7.0, V0}, model, 0.1, 9.9, 2000).roots;
  const auto r5 = find_resonances({5, 4.0, 7.0, V0}, model, 0.1, 9.9, 2000).roots;
  const bool roots_equal = !r2.empty() && r2 == r3 && r2 == r5;

  const auto grid = linspace(0.1, 6.0, 10000);
  const double step = grid[1] - grid[0];
  const auto p2 = transmission_peaks({2, 4.0, 7.0, V0}, model, grid, Execution::Parallel);
  const auto p3 = transmission_peaks({3, 4.0, 7.0, V0}, model, grid, Execution::Parallel);
  double worst = p2.size() == p3.size() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::min(p2.size(), p3.size()); ++i) {
    worst = std::max(worst, std::abs(p2[i] - p3[i]));
  }
  return {roots_equal && !p2.empty() && worst <= step * (1 + 1e-9),
          cat(r2.size(), " roots identical for N=2,3,5: ", roots_equal ? "yes" : "no", "; ",
              p2.size(), " exact peaks, max offset ", worst / step, " grid steps (<= 1)")};
}

Verdict criterion7() {
  const auto model = DispersionModel::particle(V0);
  const BarrierSystem sys{2, 4.0, 10.0, V0};
  const auto sol = solve_exact(sys, model, OMEGA);
  const auto d = decompose_exact(sol, sys, model);
  const Wavevectors w = dispersion_eval(model, OMEGA);
  const double recon = rel(d.t1 * d.t2 * d.s, sol.transmission);
  const double unit = std::max(std::abs(std::norm(d.r1) + std::norm(d.t1) - 1.0),
                               std::abs(std::norm(d.r2) + std::norm(d.t2) - 1.0));
  const auto b = no_reflection_budget(w, sys);
  const std::vector<double> four{b.deficit, b.ors_excess, b.predicted,
                                 std::norm(d.r_r) + std::norm(d.t_r)};
  double pair = 0.0;
  for (double x : four)
    for (double y : four) pair = std::max(pair, rel(x, y));
  const cplx expected = -std::exp(I * w.k * (sys.period - 2 * sys.width));
  const double ratio = std::max(std::abs(d.r_q / d.r_r - expected), std::abs(d.t_q / d.t_r - expected));
  return {recon < 1e-10 && unit < 1e-8 && pair < 1e-6 && ratio < 1e-12,
          cat("reconstruction ", recon, ", partial unitarity ", unit, ", deficit pairs ", pair,
              ", phase ratio ", ratio)};
}

Verdict criterion8() {
  const auto model = DispersionModel::particle(V0);
  double closure = 0.0;
  for (double w : linspace(0.1, 9.9, 500)) {
    closure = std::max(closure, phase_budget({2, 4.0, 10.0, V0}, model, w).closure_residual);
  }
  const auto b = phase_budget({2, 4.0, 10.0, V0}, model, OMEGA);
  const double edge = std::abs(std::remainder(b.phi1 + b.phi_s, 2 * std::numbers::pi));
  const auto eq = phase_budget({2, 4.0, 8.0, V0}, model, OMEGA);
  const double equality = std::abs(std::remainder(eq.phi0 - eq.phi1, 2 * std::numbers::pi));
  return {closure < 1e-10 && edge < 1e-3 && equality < 1e-3,
          cat("closure ", closure, " (< 1e-10), |phi1+phiS| ", edge, " (< 1e-3), L=2a |phi0-phi1| ",
              equality, " (< 1e-3)")};
}

Verdict criterion9() {
  const auto model = DispersionModel::particle(V0);
  const BarrierSystem sys{2, 4.0, 10.0, V0};
  const auto approx = appendix_coefficients(dispersion_eval(model, OMEGA), sys);
  const auto rows = compare_appendix(approx, solve_exact(sys, model, OMEGA), sys);
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.name == "A4" ? r.scaled_error : r.relative_error);
  const bool a4_zero = approx.a4 == cplx{0.0, 0.0};
  return {worst < 1e-3 && a4_zero,
          cat("max error ", worst, " (< 1e-3, A4 against barrier-wave scale), A4 == 0: ",
              a4_zero ? "yes" : "no")};
}

Verdict criterion10() {
  const auto model = DispersionModel::particle(V0);
  const BarrierSystem sys{2, 4.0, 7.0, V0};
  const auto roots = find_resonances(sys, model, 0.1, 9.9, 2000).roots;
  bool finite = !roots.empty();
  for (double r : roots) {
    const auto b = resonance_time_budget(sys, model, r);
    finite = finite && std::isfinite(b.tau) && std::isfinite(b.tau0) && std::isfinite(b.sum);
  }
  const auto theta = [](double x) { return 0.2 + 0.5 * std::atan(x); };
  const auto id = check_phase_sum_identity(
      theta, [&](double x) { return std::numbers::pi / 2 - theta(x); }, 0.1, 5.0, 100, 1e-5);
  const double worst = std::max(id.max_product_residual, id.max_derivative_sum);
  return {finite && worst < 1e-8,
          cat(roots.size(), " roots with finite tau, tau0, tau+tau0; identity residual ", worst,
              " (< 1e-8)")};
}

Verdict criterion11() {
  const auto t0 = Clock::now();
  const std::string cmd = std::string("\"") + MBT_CLI_PATH + "\" --config \"" +
                          MBT_DEFAULT_CONFIG + "\" validate > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  const double t = seconds(t0);
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return {status == 0 && t < 60.0, cat("exit ", status, " (== 0), ", t, " s (< 60 s)")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle equivalence", criterion1},        {"unitarity", criterion2},
      {"opaque factorization", criterion3},      {"width-independent phase time", criterion4},
      {"count-independent phase time", criterion5}, {"resonance N-independence", criterion6},
      {"double-barrier decomposition", criterion7}, {"phase budget", criterion8},
      {"opaque two-barrier coefficients", criterion9}, {"resonance time budget", criterion10},
      {"validate command", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.measured = std::string("threw: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %zu: %s -- %s\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, v.measured.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
