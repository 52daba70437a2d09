#include "mbt/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "mbt/double_barrier.hpp"
#include "mbt/errors.hpp"
#include "mbt/opaque_model.hpp"
#include "mbt/scan.hpp"
#include "mbt/timing.hpp"

namespace mbt {

namespace {

// Documented opaque test point: chi a = 4 sqrt(5), off resonance.
constexpr double kV0 = 10.0;
constexpr double kOmega = 5.0;
constexpr double kWidth = 4.0;
constexpr double kPeriod = 10.0;

constexpr cplx kI{0.0, 1.0};

DispersionModel test_model() { return DispersionModel::particle(kV0); }
BarrierSystem test_system(int n = 2, double a = kWidth, double l = kPeriod) {
  return {n, a, l, kV0};
}

CheckOutcome below(double value, double threshold, std::string detail = {}) {
  return {value < threshold, value, threshold, std::move(detail)};
}

double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }
double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Distance of an angle to the nearest multiple of pi.
double distance_mod_pi(double angle) {
  return std::abs(std::remainder(angle, std::numbers::pi));
}

// --- dispersion -----------------------------------------------------------

CheckOutcome dispersion_pythagorean(const RunConfig& cfg) {
  const double v0 = cfg.system.height;
  double worst = 0.0;
  for (double omega : linspace(1e-3 * v0, (1.0 - 1e-3) * v0, 1000)) {
    const Wavevectors w = dispersion_eval(cfg.model, omega);
    worst = std::max(worst, std::abs(w.k * w.k + w.chi * w.chi - v0) / v0);
  }
  return below(worst, 1e-12);
}

CheckOutcome dispersion_monotone(const RunConfig& cfg) {
  const double v0 = cfg.system.height;
  Wavevectors prev = dispersion_eval(cfg.model, 1e-3 * v0);
  int violations = 0;
  for (double omega : linspace(2e-3 * v0, (1.0 - 1e-3) * v0, 1000)) {
    const Wavevectors w = dispersion_eval(cfg.model, omega);
    violations += (w.k <= prev.k) + (w.chi >= prev.chi);
    prev = w;
  }
  return below(violations, 0.5, "count of non-monotone steps");
}

CheckOutcome dispersion_group_velocity(const RunConfig& cfg) {
  const double v0 = cfg.system.height;
  double worst = 0.0;
  for (double omega : linspace(0.05 * v0, 0.95 * v0, 50)) {
    const Wavevectors w = dispersion_eval(cfg.model, omega);
    const double h = 1e-4 * w.k;
    const double fd = (cfg.model.omega_for_wavevector(w.k + h) -
                       cfg.model.omega_for_wavevector(w.k - h)) /
                      (2.0 * h);
    worst = std::max(worst, rel(w.group_velocity, fd));
    worst = std::max(worst, rel(1.0 / cfg.model.dk_domega(omega), fd));
  }
  return below(worst, 1e-10);
}

// --- exact solver -----------------------------------------------------------

struct OracleInstance {
  BarrierSystem system;
  double omega = 0.0;
};

std::vector<OracleInstance> random_instances(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_dist(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<OracleInstance> out;
  for (int i = 0; i < count; ++i) {
    OracleInstance inst;
    inst.system.n_barriers = n_dist(rng);
    inst.system.height = 1.0 + 19.0 * unit(rng);
    inst.omega = inst.system.height * (0.05 + 0.9 * unit(rng));
    inst.system.width = 0.5 + 4.5 * unit(rng);
    inst.system.period = inst.system.width + 10.0 * unit(rng);
    out.push_back(inst);
  }
  return out;
}

CheckOutcome exact_oracle_equivalence(const RunConfig&) {
  const auto start = std::chrono::steady_clock::now();
  const auto instances = random_instances(200, 20020918);
  std::vector<double> diffs(instances.size());
  for_each_index(instances.size(), Execution::Parallel, [&](std::size_t i) {
    const auto& inst = instances[i];
    const auto model = DispersionModel::particle(inst.system.height);
    diffs[i] = max_relative_difference(solve_exact(inst.system, model, inst.omega),
                                       brute_force_solve(inst.system, model, inst.omega));
  });
  const double worst = *std::max_element(diffs.begin(), diffs.end());
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "200 random instances, " << elapsed << " s (limit 10 s)";
  return {worst < 1e-9 && elapsed < 10.0, worst, 1e-9, os.str()};
}

CheckOutcome exact_unitarity(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = linspace(cfg.scan.omega_min, cfg.scan.omega_max, 1000);
  double worst = 0.0;
  for (int n : {1, 2, 3, 5}) {
    BarrierSystem sys = cfg.system;
    sys.n_barriers = n;
    const auto defects = evaluate_on_grid(
        [&](double omega) {
          return std::abs(unitarity_defect(solve_exact(sys, cfg.model, omega)));
        },
        grid, Execution::Parallel);
    worst = std::max(worst, *std::max_element(defects.begin(), defects.end()));
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "N in {1,2,3,5}, 1000-point grid, " << elapsed << " s (limit 5 s)";
  return {worst < cfg.tolerances.unitarity && elapsed < 5.0, worst, cfg.tolerances.unitarity,
          os.str()};
}

CheckOutcome exact_continuity(const RunConfig& cfg) {
  const auto grid = linspace(cfg.scan.omega_min, cfg.scan.omega_max, 200);
  const auto residuals = evaluate_on_grid(
      [&](double omega) {
        return interface_residual(solve_exact(cfg.system, cfg.model, omega), cfg.system);
      },
      grid, Execution::Parallel);
  return below(*std::max_element(residuals.begin(), residuals.end()),
               cfg.tolerances.continuity);
}

CheckOutcome exact_contiguity(const RunConfig&) {
  const auto model = test_model();
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
    for (double omega : {1.0, 3.0, 5.0, 8.0}) {
      const double a = 1.0;
      const auto stacked = solve_exact({n, a, a, kV0}, model, omega);
      const auto single = solve_exact({1, n * a, n * a, kV0}, model, omega);
      const cplx shifted = stacked.transmission * std::exp(-kI * stacked.k * ((n - 1) * a));
      worst = std::max(worst, rel(shifted, single.transmission));
    }
  }
  return below(worst, 1e-9);
}

double opaque_error(int n, double a, double gap, double omega) {
  const auto model = test_model();
  const BarrierSystem sys{n, a, a + gap, kV0};
  const auto sol = solve_exact(sys, model, omega);
  const auto f = opaque_transmission(sys, dispersion_eval(model, omega));
  const cplx exact = sol.transmission * std::exp(kI * sol.k * a);
  return std::abs(exact - f.product) / std::abs(exact);
}

CheckOutcome exact_opaque_convergence(const RunConfig&) {
  // Relative error of the factorization should fall like e^{-2 chi a}.
  const double chi = std::sqrt(kV0 - kOmega);
  const double expected = std::exp(2.0 * chi * 0.5);
  double worst = 0.0;
  for (double a : {2.0, 2.5, 3.0}) {
    const double ratio = opaque_error(2, a, 6.0, kOmega) / opaque_error(2, a + 0.5, 6.0, kOmega);
    worst = std::max(worst, std::abs(std::log(ratio / expected)));
  }
  return below(worst, std::log(2.0), "max |log(observed ratio / e^{2 chi da})|");
}

// --- opaque model -----------------------------------------------------------

CheckOutcome opaque_factorization_accuracy(const RunConfig& cfg) {
  double worst = 0.0;
  double weakest_gain = std::numeric_limits<double>::infinity();
  for (int n : {1, 2, 3}) {
    const double err = opaque_error(n, kWidth, kPeriod - kWidth, kOmega);
    const double err_doubled = opaque_error(n, 2.0 * kWidth, kPeriod - kWidth, kOmega);
    worst = std::max(worst, err);
    weakest_gain = std::min(weakest_gain, err / std::max(err_doubled, 1e-300));
  }
  std::ostringstream os;
  os << "N in {1,2,3}; smallest error reduction on doubling a: " << weakest_gain
     << " (need >= 10)";
  return {worst < cfg.tolerances.opaque_rel && weakest_gain >= 10.0, worst,
          cfg.tolerances.opaque_rel, os.str()};
}

CheckOutcome opaque_phase_structure(const RunConfig&) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto model = test_model();
  const Wavevectors w = dispersion_eval(model, kOmega);
  const double phi = opaque_phase(w);
  double worst_phase = 0.0;
  double worst_prob = 0.0;
  int used = 0;
  for (int i = 0; i < 200; ++i) {
    const double a = 1.0 + 4.0 * unit(rng);
    const BarrierSystem sys{1 + static_cast<int>(6 * unit(rng)), a, a + 10.0 * unit(rng), kV0};
    try {
      const auto f = opaque_transmission(sys, w);
      worst_phase = std::max(worst_phase, distance_mod_pi(std::arg(f.product) - phi));
      worst_prob = std::max(worst_prob, rel(opaque_probability(sys, w), std::norm(f.product)));
      ++used;
    } catch (const NearResonanceError&) {
    }
  }
  std::ostringstream os;
  os << used << " geometries; probability consistency " << worst_prob << " (limit 1e-12)";
  return {worst_phase < 1e-12 && worst_prob < 1e-12, worst_phase, 1e-12, os.str()};
}

CheckOutcome opaque_roots_are_poles(const RunConfig&) {
  const auto model = test_model();
  const auto sys = test_system(2, 4.0, 7.0);
  const auto report = find_resonances(sys, model, 0.1, 9.9, 2000);
  double worst = 0.0;
  double worst_phase = 0.0;
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    const Wavevectors w = dispersion_eval(model, report.roots[i]);
    worst = std::max(worst, report.residuals[i] / (2.0 * w.chi * w.k));
    worst_phase = std::max(worst_phase, report.phase_residuals[i]);
  }
  std::ostringstream os;
  os << report.roots.size() << " roots; tan-product residual " << worst_phase
     << " (limit 1e-8)";
  return {!report.roots.empty() && worst < 1e-10 && worst_phase < 1e-8, worst, 1e-10, os.str()};
}

// Largest distance from each point of `from` to its nearest point in `to`.
double max_nearest_distance(const std::vector<double>& from, const std::vector<double>& to) {
  double worst = 0.0;
  for (double x : from) {
    double best = std::numeric_limits<double>::infinity();
    for (double y : to) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

CheckOutcome opaque_exact_peaks_at_roots(const RunConfig&) {
  // chi a >= 5 over the whole window.
  const auto model = test_model();
  const auto sys = test_system(2, kWidth, kPeriod);
  const double lo = 0.1;
  const double hi = 8.4;
  const auto grid = linspace(lo, hi, 10000);
  const double step = grid[1] - grid[0];
  const auto roots = find_resonances(sys, model, lo, hi, 10000).roots;
  const auto peaks = transmission_peaks(sys, model, grid, Execution::Parallel);
  const double dist = max_nearest_distance(roots, peaks);
  std::ostringstream os;
  os << roots.size() << " roots, " << peaks.size() << " peaks, grid step " << step;
  return {!roots.empty() && dist <= step * (1.0 + 1e-9), dist / step, 1.0, os.str()};
}

CheckOutcome opaque_root_n_independence(const RunConfig&) {
  const auto model = test_model();
  const std::vector<int> others{3, 5};
  const auto report =
      find_resonances(test_system(2, 4.0, 7.0), model, 0.1, 9.9, 2000, others);
  std::ostringstream os;
  os << report.roots.size() << " roots for N = 2, compared with N = 3, 5";
  return {!report.roots.empty() && report.n_independence_spread == 0.0,
          report.n_independence_spread, 0.0, os.str()};
}

CheckOutcome opaque_exact_peak_n_independence(const RunConfig&) {
  // chi a >= 8 over the window, so the exact peaks are sharp.
  const auto model = test_model();
  const auto grid = linspace(0.1, 6.0, 10000);
  const double step = grid[1] - grid[0];
  const auto p2 = transmission_peaks(test_system(2, 4.0, 7.0), model, grid, Execution::Parallel);
  const auto p3 = transmission_peaks(test_system(3, 4.0, 7.0), model, grid, Execution::Parallel);
  const double dist = std::max(max_nearest_distance(p2, p3), max_nearest_distance(p3, p2));
  std::ostringstream os;
  os << p2.size() << " peaks (N=2), " << p3.size() << " peaks (N=3), in grid steps";
  return {!p2.empty() && p2.size() == p3.size() && dist <= step * (1.0 + 1e-9), dist / step,
          1.0, os.str()};
}

CheckOutcome opaque_time_budget(const RunConfig&) {
  const auto model = test_model();
  const auto sys = test_system(2, 4.0, 7.0);
  const auto roots = find_resonances(sys, model, 0.1, 9.9, 2000).roots;
  bool finite = !roots.empty();
  for (double root : roots) {
    const auto b = resonance_time_budget(sys, model, root);
    finite = finite && std::isfinite(b.tau) && std::isfinite(b.tau0) && std::isfinite(b.sum) &&
             b.tau0 > 0.0 && b.is_root;
  }
  const auto theta = [](double x) { return 0.3 + 0.2 * std::sin(x); };
  const auto identity = check_phase_sum_identity(
      theta, [&](double x) { return std::numbers::pi / 2.0 - theta(x); }, 0.5, 3.0, 50, 1e-5);
  const double worst = std::max(identity.max_product_residual, identity.max_derivative_sum);
  std::ostringstream os;
  os << roots.size() << " roots with finite (tau, tau0, sum); tau + tau0 reported, not asserted";
  return {finite && worst < 1e-8, worst, 1e-8, os.str()};
}

// --- double barrier ---------------------------------------------------------

struct DecomposedPoint {
  ScatteringSolution solution;
  Wavevectors w;
  PartialDecomposition d;
};

DecomposedPoint decompose_at(double a, double l, double omega) {
  const auto model = test_model();
  const auto sys = test_system(2, a, l);
  DecomposedPoint p{solve_exact(sys, model, omega), dispersion_eval(model, omega), {}};
  p.d = decompose_exact(p.solution, sys, model);
  return p;
}

CheckOutcome double_reconstruction(const RunConfig&) {
  const auto model = test_model();
  const auto sys = test_system();
  const auto grid = linspace(0.2, 9.8, 400);
  const auto residuals = evaluate_on_grid(
      [&](double omega) {
        const auto sol = solve_exact(sys, model, omega);
        const auto d = decompose_exact(sol, sys, model);
        return rel(d.t1 * d.t2 * d.s, sol.transmission);
      },
      grid, Execution::Parallel);
  return below(*std::max_element(residuals.begin(), residuals.end()), 1e-10,
               "400 frequencies across (0, V0)");
}

CheckOutcome double_partial_unitarity(const RunConfig&) {
  const auto p = decompose_at(kWidth, kPeriod, kOmega);
  const double first = std::abs(std::norm(p.d.r1) + std::norm(p.d.t1) - 1.0);
  const double second = std::abs(std::norm(p.d.r2) + std::norm(p.d.t2) - 1.0);
  return below(std::max(first, second), 1e-8);
}

CheckOutcome double_deficit_duality(const RunConfig&) {
  const auto b = no_reflection_budget(dispersion_eval(test_model(), kOmega), test_system());
  const double values[] = {b.deficit, b.ors_excess, b.predicted,
                           b.multiple_reflection_probability};
  double worst = 0.0;
  for (double x : values) {
    for (double y : values) worst = std::max(worst, rel(x, y));
  }
  const bool signs = b.deficit > 0.0 && b.ors_excess > 0.0;
  return {worst < 1e-6 && signs, worst, 1e-6, "pairwise over deficit, excess, F^2 e^{-2chi a}, P_R"};
}

CheckOutcome double_phase_ratio(const RunConfig&) {
  double worst = 0.0;
  for (double l : {8.0, 10.0, 13.0}) {
    const Wavevectors w = dispersion_eval(test_model(), kOmega);
    const auto c = correction_terms(w, test_system(2, kWidth, l));
    const cplx expected = -std::exp(kI * w.k * (l - 2.0 * kWidth));
    worst = std::max({worst, std::abs(c.r_q / c.r_r - expected),
                      std::abs(c.t_q / c.t_r - expected)});
  }
  return below(worst, 1e-12);
}

CheckOutcome double_opaque_matching(const RunConfig&) {
  // Exact partials approach the closed forms with error C e^{-2 chi a}, where C
  // oscillates with k(L-a) and stays bounded.
  const double chi = std::sqrt(kV0 - kOmega);
  double worst_prefactor = 0.0;
  for (double a : {2.0, 2.5, 3.0, 3.5, 4.0, 5.0}) {
    const auto p = decompose_at(a, a + 6.0, kOmega);
    const double err = std::max(rel(p.d.t1, p.d.t_ob + p.d.t_q + p.d.t_r),
                                rel(p.d.r1, p.d.r_ob + p.d.r_q + p.d.r_r));
    worst_prefactor = std::max(worst_prefactor, err * std::exp(2.0 * chi * a));
  }
  const auto p = decompose_at(kWidth, kPeriod, kOmega);
  const double at_point = std::max({rel(p.d.t1, p.d.t_ob + p.d.t_q + p.d.t_r),
                                    rel(p.d.r1, p.d.r_ob + p.d.r_q + p.d.r_r),
                                    rel(p.d.r2, p.d.r_ob * std::exp(kI * p.w.k * kPeriod))});
  std::ostringstream os;
  os << "r1, t1, r2 at the test point; error e^{2 chi a} prefactor " << worst_prefactor
     << " (limit 100)";
  return {at_point < 1e-4 && worst_prefactor < 100.0, at_point, 1e-4, os.str()};
}

CheckOutcome double_appendix(const RunConfig&) {
  const auto model = test_model();
  const auto sys = test_system();
  const auto sol = solve_exact(sys, model, kOmega);
  const auto approx = appendix_coefficients(dispersion_eval(model, kOmega), sys);
  double worst = 0.0;
  for (const auto& c : compare_appendix(approx, sol, sys)) {
    worst = std::max(worst, c.scaled_error);
    if (c.name != "A4") worst = std::max(worst, c.relative_error);
  }
  return {worst < 1e-3 && approx.a4 == cplx{0.0, 0.0}, worst, 1e-3,
          "all eight coefficients; A4 measured against the barrier wave magnitude"};
}

CheckOutcome double_series(const RunConfig&) {
  // Thin barriers keep |r1 r2| well below 1 so the partial sums converge.
  double worst = 0.0;
  for (double omega : {6.0, 8.0, 9.5}) {
    const auto p = decompose_at(0.3, 2.0, omega);
    const double ratio = std::abs(p.d.r1 * p.d.r2);
    const int terms = static_cast<int>(std::ceil(std::log(1e-14) / std::log(ratio))) + 1;
    worst = std::max(worst, rel(geometric_series_check(p.d.r1, p.d.r2, terms), p.d.s));
  }
  return below(worst, 1e-9, "a = 0.3, L = 2");
}

// --- timing -----------------------------------------------------------------

std::vector<double> hartman_widths() {
  const double chi = std::sqrt(kV0 - kOmega);
  return {8.0 / chi, 12.0 / chi, 16.0 / chi};
}

CheckOutcome timing_hartman(const RunConfig&) {
  const auto model = test_model();
  const auto widths = hartman_widths();
  const auto exact = hartman_scan(model, kOmega, widths);
  const auto opaque = hartman_scan_opaque(model, kOmega, widths);
  std::ostringstream os;
  os << "chi a in {8,12,16}; opaque-model spread " << opaque.spread << " (must be 0)";
  return {exact.spread < 1e-2 && opaque.spread == 0.0, exact.spread, 1e-2, os.str()};
}

CheckOutcome timing_n_independence(const RunConfig&) {
  const auto model = test_model();
  const std::vector<int> ns{1, 2, 3};
  const auto exact = n_independence_scan(model, kOmega, kWidth, kPeriod, ns);
  const auto opaque = n_independence_scan_opaque(model, kOmega, kWidth, kPeriod, ns);
  std::ostringstream os;
  os << "N in {1,2,3}; opaque-model spread " << opaque.spread
     << (exact.resonant_regime ? "; RESONANT REGIME" : "");
  return {exact.spread < 1e-2 && opaque.spread == 0.0 && !exact.resonant_regime, exact.spread,
          1e-2, os.str()};
}

CheckOutcome timing_method_agreement(const RunConfig&) {
  const auto model = test_model();
  const auto sys = test_system();
  double worst = 0.0;
  for (double omega : {2.5, 5.0, 6.5}) {
    const double h = kDefaultRelativeStep * omega;
    const double log_tau = phase_time(sys, model, omega, h).tau;
    const double cd_tau = phase_time(sys, model, omega, h, PhaseTimeMethod::CentralDifference).tau;
    const double half = phase_time(sys, model, omega, 0.5 * h).tau;
    worst = std::max({worst, rel(log_tau, cd_tau), rel(log_tau, half)});
  }
  return below(worst, 1e-6, "log-derivative vs unwrapped phase, and step halving");
}

CheckOutcome timing_free_case(const RunConfig&) {
  const auto model = DispersionModel::particle(0.0);
  double worst = 0.0;
  for (int n : {1, 3}) {
    const BarrierSystem sys{n, 1.5, 4.0, 0.0};
    for (double omega : {0.5, 2.0, 7.0}) {
      const double expected = sys.total_length() / (2.0 * std::sqrt(omega));
      worst = std::max(worst, rel(phase_time(sys, model, omega).tau, expected));
    }
  }
  return below(worst, 1e-6, "tau = structure length / group velocity");
}

CheckOutcome timing_budget_closure(const RunConfig&) {
  const auto model = test_model();
  const auto sys = test_system();
  const auto grid = linspace(0.2, 9.8, 400);
  const auto residuals = evaluate_on_grid(
      [&](double omega) { return phase_budget(sys, model, omega).closure_residual; }, grid,
      Execution::Parallel);
  return below(*std::max_element(residuals.begin(), residuals.end()), 1e-10,
               "400 frequencies across (0, V0)");
}

CheckOutcome timing_first_edge(const RunConfig&) {
  const auto b = phase_budget(test_system(), test_model(), kOmega);
  const double worst = std::max({std::abs(b.first_edge_sum), std::abs(b.phi1_residual),
                                 std::abs(b.phi2_residual), std::abs(b.phi_s_residual)});
  return below(worst, 1e-3, "phi1 + phi_s and the three opaque phase predictions");
}

CheckOutcome timing_equality_case(const RunConfig&) {
  const auto b = phase_budget(test_system(2, kWidth, 2.0 * kWidth), test_model(), kOmega);
  return below(std::abs(b.phi0_minus_phi1), 1e-3, "L = 2a");
}

std::vector<Check> build_registry() {
  return {
      {"dispersion.pythagorean", "k^2 + chi^2 = V0 across (0, V0)", dispersion_pythagorean},
      {"dispersion.monotone", "k increases and chi decreases with omega", dispersion_monotone},
      {"dispersion.group_velocity", "group velocity matches d(omega)/dk by finite differences",
       dispersion_group_velocity},
      {"exact.oracle_equivalence", "transfer matrices agree with the dense solve",
       exact_oracle_equivalence},
      {"exact.unitarity", "|R|^2 + |T|^2 = 1 on 1000-point grids", exact_unitarity},
      {"exact.continuity", "psi and psi' continuous at every interface", exact_continuity},
      {"exact.contiguity", "L = a stack equals one barrier of width N a", exact_contiguity},
      {"exact.opaque_convergence", "factorization error falls like e^{-2 chi a}",
       exact_opaque_convergence},
      {"opaque.factorization_accuracy", "C0 E F matches the exact T e^{ika}",
       opaque_factorization_accuracy},
      {"opaque.phase_structure", "arg(C0 E F) = phi mod pi for any N, a, L",
       opaque_phase_structure},
      {"opaque.roots_are_poles", "resonance roots zero the cavity denominator",
       opaque_roots_are_poles},
      {"opaque.exact_peaks_at_roots", "exact N=2 |T|^2 peaks sit on the resonance roots",
       opaque_exact_peaks_at_roots},
      {"opaque.root_n_independence", "resonance roots identical for N = 2, 3, 5",
       opaque_root_n_independence},
      {"opaque.exact_peak_n_independence", "exact |T|^2 peaks agree for N = 2 and 3",
       opaque_exact_peak_n_independence},
      {"opaque.time_budget", "resonance time budget finite; phase-sum identity holds",
       opaque_time_budget},
      {"double.reconstruction", "t1 t2 s = T", double_reconstruction},
      {"double.partial_unitarity", "partial coefficients are unitary", double_partial_unitarity},
      {"double.deficit_duality", "deficit = excess = F^2 e^{-2 chi a} = P_R",
       double_deficit_duality},
      {"double.phase_ratio", "R_Q/R_R = T_Q/T_R = -e^{ik(L-2a)}", double_phase_ratio},
      {"double.opaque_matching", "exact partials converge to the opaque forms",
       double_opaque_matching},
      {"double.appendix", "opaque two-barrier coefficients match the exact solver",
       double_appendix},
      {"double.series", "multiple-reflection series sums to s", double_series},
      {"timing.hartman", "phase time independent of barrier width", timing_hartman},
      {"timing.n_independence", "phase time independent of barrier count",
       timing_n_independence},
      {"timing.method_agreement", "phase-time estimators agree", timing_method_agreement},
      {"timing.free_case", "free propagation phase time", timing_free_case},
      {"timing.budget_closure", "phi1 + (phi2 - kL) + phi_s = arg(T e^{ika})",
       timing_budget_closure},
      {"timing.first_edge", "phi1 + phi_s = 0 between the first and second barrier",
       timing_first_edge},
      {"timing.equality_case", "phi0 = phi1 when L = 2a", timing_equality_case},
  };
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = build_registry();
  return registry;
}

ValidationSummary run_validation(const RunConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  ValidationSummary summary;
  for (const auto& check : check_registry()) {
    CheckOutcome outcome;
    try {
      outcome = check.run(config);
    } catch (const std::exception& e) {
      outcome = {false, std::numeric_limits<double>::quiet_NaN(), 0.0,
                 std::string("threw: ") + e.what()};
    }
    (outcome.passed ? summary.passed : summary.failed) += 1;
    log << (outcome.passed ? "PASS " : "FAIL ") << check.name << "  value=" << outcome.value
        << " threshold=" << outcome.threshold << "  " << check.claim;
    if (!outcome.detail.empty()) log << " [" << outcome.detail << "]";
    log << '\n';
  }
  summary.seconds = seconds_since(start);
  log << summary.passed << " passed, " << summary.failed << " failed in " << summary.seconds
      << " s\n";
  return summary;
}

}  // namespace mbt
