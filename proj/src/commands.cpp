#include "mbt/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "mbt/double_barrier.hpp"
#include "mbt/errors.hpp"
#include "mbt/opaque_model.hpp"
#include "mbt/timing.hpp"

namespace mbt {

using nlohmann::json;

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json system_json(const BarrierSystem& s) {
  return {{"n_barriers", s.n_barriers},
          {"width", s.width},
          {"period", s.period},
          {"height", s.height}};
}

}  // namespace

std::vector<ScanRow> compute_scan(const RunConfig& config, double fd_step, Execution exec) {
  config.check();
  const auto grid = linspace(config.scan.omega_min, config.scan.omega_max, config.scan.steps);
  const BarrierSystem& sys = config.system;
  const DispersionModel& model = config.model;
  std::vector<ScanRow> rows(grid.size());

  for_each_index(grid.size(), exec, [&](std::size_t i) {
    const double omega = grid[i];
    const ScatteringSolution sol = solve_exact(sys, model, omega);
    const Wavevectors w = dispersion_eval(model, omega);
    ScanRow& row = rows[i];
    row.omega = omega;
    row.k = w.k;
    row.chi = w.chi;
    row.t = sol.transmission;
    row.r = sol.reflection;
    row.p_t = std::norm(sol.transmission);
    row.unitarity_defect = unitarity_defect(sol);
    row.tau = phase_time(sys, model, omega, fd_step * omega).tau;
    row.phi_unwrapped = std::arg(sol.transmission * std::exp(cplx{0.0, w.k * sys.width}));
    try {
      const OpaqueFactorization f = opaque_transmission(sys, w);
      row.opaque_p_t = opaque_probability(sys, w);
      row.opaque_valid = !f.weakly_opaque;
    } catch (const NearResonanceError&) {
      row.opaque_p_t.reset();
      row.opaque_valid = false;
    }
  });

  // Continuity-tracked unwrapping runs serially, in omega order.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double jump = wrap_angle(rows[i].phi_unwrapped - rows[i - 1].phi_unwrapped);
    rows[i].phi_unwrapped = rows[i - 1].phi_unwrapped + jump;
  }
  return rows;
}

void write_scan(const std::vector<ScanRow>& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    json doc = json::array();
    for (const auto& r : rows) {
      doc.push_back({{"omega", r.omega},
                     {"k", r.k},
                     {"chi", r.chi},
                     {"re_T", r.t.real()},
                     {"im_T", r.t.imag()},
                     {"re_R", r.r.real()},
                     {"im_R", r.r.imag()},
                     {"P_T", r.p_t},
                     {"phi_unwrapped", r.phi_unwrapped},
                     {"tau", r.tau},
                     {"unitarity_defect", r.unitarity_defect},
                     {"opaque_P_T", r.opaque_p_t ? json(*r.opaque_p_t) : json(nullptr)},
                     {"opaque_valid", r.opaque_valid ? 1 : 0}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "omega,k,chi,re_T,im_T,re_R,im_R,P_T,phi_unwrapped,tau,unitarity_defect,opaque_P_T,"
         "opaque_valid\n";
  for (const auto& r : rows) {
    out << format_number(r.omega) << ',' << format_number(r.k) << ',' << format_number(r.chi)
        << ',' << format_number(r.t.real()) << ',' << format_number(r.t.imag()) << ','
        << format_number(r.r.real()) << ',' << format_number(r.r.imag()) << ','
        << format_number(r.p_t) << ',' << format_number(r.phi_unwrapped) << ','
        << format_number(r.tau) << ',' << format_number(r.unitarity_defect) << ','
        << (r.opaque_p_t ? format_number(*r.opaque_p_t) : std::string()) << ','
        << (r.opaque_valid ? 1 : 0) << '\n';
  }
}

json resonance_document(const RunConfig& config) {
  config.check();
  const ResonanceReport report =
      find_resonances(config.system, config.model, config.scan.omega_min,
                      config.scan.omega_max, config.scan.steps);
  json roots = json::array();
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    const auto budget = resonance_time_budget(config.system, config.model, report.roots[i]);
    roots.push_back({{"omega_res", report.roots[i]},
                     {"residual_D", report.residuals[i]},
                     {"phase_condition_residual", report.phase_residuals[i]},
                     {"tau", budget.tau},
                     {"tau0", budget.tau0},
                     {"tau_plus_tau0", budget.sum}});
  }
  return {{"system", system_json(config.system)},
          {"omega_min", config.scan.omega_min},
          {"omega_max", config.scan.omega_max},
          {"grid_points", config.scan.steps},
          {"roots", roots}};
}

json decomposition_document(const RunConfig& config, double omega) {
  config.check();
  const BarrierSystem& sys = config.system;
  if (sys.n_barriers != 2) {
    throw ArgumentError("decompose requires a configuration with n_barriers = 2");
  }
  const ScatteringSolution sol = solve_exact(sys, config.model, omega);
  const Wavevectors w = dispersion_eval(config.model, omega);
  const PartialDecomposition d = decompose_exact(sol, sys, config.model);
  const PhaseBudget phases = phase_budget(sys, config.model, omega);
  const NoReflectionBudget budget = no_reflection_budget(w, sys);
  const auto appendix = compare_appendix(appendix_coefficients(w, sys), sol, sys);
  const cplx opaque_s = opaque_multiple_reflection_sum(w, sys);
  const cplx ratio_expected = -std::exp(cplx{0.0, w.k * (sys.period - 2.0 * sys.width)});

  json appendix_json = json::array();
  double appendix_worst = 0.0;
  for (const auto& c : appendix) {
    appendix_json.push_back({{"name", c.name},
                             {"approx", complex_json(c.approx)},
                             {"exact", complex_json(c.exact)},
                             {"relative_error", c.relative_error},
                             {"scaled_error", c.scaled_error}});
    appendix_worst = std::max(appendix_worst, c.scaled_error);
  }

  return {
      {"system", system_json(sys)},
      {"omega", omega},
      {"k", w.k},
      {"chi", w.chi},
      {"chi_a", w.chi * sys.width},
      {"R", complex_json(sol.reflection)},
      {"T", complex_json(sol.transmission)},
      {"partial",
       {{"r1", complex_json(d.r1)},
        {"t1", complex_json(d.t1)},
        {"r2", complex_json(d.r2)},
        {"t2", complex_json(d.t2)},
        {"s", complex_json(d.s)},
        {"r_ob", complex_json(d.r_ob)},
        {"t_ob", complex_json(d.t_ob)},
        {"r_q", complex_json(d.r_q)},
        {"t_q", complex_json(d.t_q)},
        {"r_r", complex_json(d.r_r)},
        {"t_r", complex_json(d.t_r)},
        {"r1_0", complex_json(d.r1_0)},
        {"t1_0", complex_json(d.t1_0)},
        {"r1_0_ors", complex_json(d.r1_0_ors)},
        {"cavity_factor", d.cavity}}},
      {"residuals",
       {{"reconstruction",
         std::abs(d.t1 * d.t2 * d.s - sol.transmission) / std::abs(sol.transmission)},
        {"partial_unitarity_first", std::norm(d.r1) + std::norm(d.t1) - 1.0},
        {"partial_unitarity_second", std::norm(d.r2) + std::norm(d.t2) - 1.0},
        {"phase_ratio",
         std::max(std::abs(d.r_q / d.r_r - ratio_expected),
                  std::abs(d.t_q / d.t_r - ratio_expected))},
        {"first_barrier_opaque",
         std::max(std::abs(d.r1 - (d.r_ob + d.r_q + d.r_r)) / std::abs(d.r1),
                  std::abs(d.t1 - (d.t_ob + d.t_q + d.t_r)) / std::abs(d.t1))},
        {"opaque_s", complex_json(opaque_s)},
        {"opaque_s_relative_difference", std::abs(opaque_s - d.s) / std::abs(d.s)}}},
      {"phase_budget",
       {{"phi1", phases.phi1},
        {"phi2", phases.phi2},
        {"phi_s", phases.phi_s},
        {"phi0", phases.phi0},
        {"total", phases.total},
        {"phase", phases.phase},
        {"closure_residual", phases.closure_residual},
        {"phi1_residual", phases.phi1_residual},
        {"phi2_residual", phases.phi2_residual},
        {"phi_s_residual", phases.phi_s_residual},
        {"first_edge_sum", phases.first_edge_sum},
        {"phi0_minus_phi1", phases.phi0_minus_phi1},
        {"phi_q", phases.phi_q},
        {"phi_r", phases.phi_r}}},
      {"no_reflection",
       {{"deficit", budget.deficit},
        {"ors_excess", budget.ors_excess},
        {"predicted", budget.predicted},
        {"multiple_reflection_probability", budget.multiple_reflection_probability}}},
      {"appendix", appendix_json},
      {"appendix_max_scaled_error", appendix_worst},
  };
}

std::vector<WavefunctionSample> compute_wavefunction(const RunConfig& config,
                                                     const WavefunctionRequest& request) {
  config.check();
  if (!(request.x_min < request.x_max) || request.points < 2) {
    throw ArgumentError("wavefunction needs x_min < x_max and at least 2 points");
  }
  const BarrierSystem& sys = config.system;
  const ScatteringSolution sol = solve_exact(sys, config.model, request.omega);

  std::vector<double> xs = linspace(request.x_min, request.x_max, request.points);
  for (int i = 1; i <= sys.n_barriers; ++i) {
    for (double edge : {sys.barrier_start(i), sys.barrier_start(i) + sys.width}) {
      if (edge < request.x_min || edge > request.x_max) continue;
      const double delta = 1e-9 * std::max(1.0, std::abs(edge));
      xs.push_back(edge);
      if (edge - delta >= request.x_min) xs.push_back(edge - delta);
      if (edge + delta <= request.x_max) xs.push_back(edge + delta);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<WavefunctionSample> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = {xs[i], evaluate_wavefunction(sol, sys, xs[i])};
  }
  return out;
}

void write_wavefunction(const std::vector<WavefunctionSample>& samples, OutputFormat format,
                        std::ostream& out) {
  if (format == OutputFormat::Json) {
    json doc = json::array();
    for (const auto& s : samples) {
      doc.push_back({{"x", s.x},
                     {"re_psi", s.psi.real()},
                     {"im_psi", s.psi.imag()},
                     {"abs_psi2", std::norm(s.psi)}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "x,re_psi,im_psi,abs_psi2\n";
  for (const auto& s : samples) {
    out << format_number(s.x) << ',' << format_number(s.psi.real()) << ','
        << format_number(s.psi.imag()) << ',' << format_number(std::norm(s.psi)) << '\n';
  }
}

}  // namespace mbt
