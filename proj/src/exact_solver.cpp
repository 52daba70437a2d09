#include "mbt/exact_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbt/errors.hpp"
#include "solver_common.hpp"

namespace mbt {

void BarrierSystem::check() const {
  std::ostringstream os;
  if (n_barriers < 1) {
    os << "number of barriers must be >= 1, got " << n_barriers;
  } else if (!(width > 0.0) || !std::isfinite(width)) {
    os << "barrier width must be > 0, got " << width;
  } else if (!(period >= width) || !std::isfinite(period)) {
    os << "period L must satisfy L >= a (a = " << width << "), got " << period;
  } else if (!(height >= 0.0) || !std::isfinite(height)) {
    os << "barrier height must be >= 0, got " << height;
  } else {
    return;
  }
  throw ArgumentError(os.str());
}

namespace detail {

RegionWavevectors prepare(const BarrierSystem& system, const DispersionModel& model,
                          double omega) {
  system.check();
  if (system.height != model.barrier_height()) {
    std::ostringstream os;
    os << "barrier height " << system.height << " does not match the dispersion model height "
       << model.barrier_height();
    throw ArgumentError(os.str());
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be finite and > 0");
  }
  RegionWavevectors rw;
  rw.k = model.free_wavevector(omega);
  rw.kappa = model.barrier_exponent(omega, system.height);
  if (std::abs(rw.kappa) == 0.0) {
    throw DomainError("singular interface matrix: omega equals the barrier height (kappa = 0)");
  }
  return rw;
}

}  // namespace detail

namespace {

struct Mat2 {
  cplx m00, m01, m10, m11;

  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  double norm() const {
    return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
  }
  bool finite() const {
    auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(m00) && ok(m01) && ok(m10) && ok(m11);
  }
};

// Maps right-region coefficients to left-region coefficients across one
// interface. Each region uses the basis exp(+-s (x - x_ref)); offset is the
// interface position measured from that region's reference point.
Mat2 interface_matrix(cplx s_left, double offset_left, cplx s_right, double offset_right) {
  const cplx ratio = s_right / s_left;
  const cplx grow_l = std::exp(-s_left * offset_left) * 0.5;
  const cplx decay_l = std::exp(s_left * offset_left) * 0.5;
  const cplx grow_r = std::exp(s_right * offset_right);
  const cplx decay_r = std::exp(-s_right * offset_right);
  return {grow_l * grow_r * (1.0 + ratio), grow_l * decay_r * (1.0 - ratio),
          decay_l * grow_r * (1.0 - ratio), decay_l * decay_r * (1.0 + ratio)};
}

constexpr cplx kI{0.0, 1.0};

}  // namespace

ScatteringSolution solve_exact(const BarrierSystem& system, const DispersionModel& model,
                               double omega) {
  const auto rw = detail::prepare(system, model, omega);
  const int n = system.n_barriers;
  const cplx ik = kI * rw.k;
  const double a = system.width;

  ScatteringSolution sol;
  sol.omega = omega;
  sol.k = rw.k;
  sol.kappa = rw.kappa;
  sol.barrier.resize(n);
  sol.gap.resize(n - 1);

  // Partial products are accumulated from the outgoing side. The first column
  // of the product up to a region holds that region's coefficients for unit
  // outgoing amplitude.
  Mat2 product{1.0, 0.0, 0.0, 1.0};
  std::vector<CoefficientPair> free_after(n);
  free_after[n - 1] = {1.0, 0.0};
  for (int i = n; i >= 1; --i) {
    product = interface_matrix(rw.kappa, a, ik, a) * product;
    sol.max_transfer_norm = std::max(sol.max_transfer_norm, product.norm());
    sol.barrier[i - 1] = {product.m00, product.m10};

    const double left_offset = (i == 1) ? 0.0 : system.period;
    product = interface_matrix(ik, left_offset, rw.kappa, 0.0) * product;
    sol.max_transfer_norm = std::max(sol.max_transfer_norm, product.norm());
    if (i > 1) {
      free_after[i - 2] = {product.m00, product.m10};
    }
    if (!product.finite()) {
      throw NumericError("transfer-matrix product overflowed; reduce N or the barrier width");
    }
  }

  const cplx incoming = product.m00;
  if (std::abs(incoming) == 0.0) {
    throw NumericError("transfer-matrix product has a vanishing incoming amplitude");
  }
  const cplx scale = 1.0 / incoming;
  sol.transmission = scale;
  sol.reflection = product.m10 * scale;
  for (auto& c : sol.barrier) {
    c.a *= scale;
    c.b *= scale;
  }
  for (int i = 0; i + 1 < n; ++i) {
    sol.gap[i] = {free_after[i].a * scale, free_after[i].b * scale};
  }
  return sol;
}

namespace {

// Region index: 0 incoming side, 2i-1 barrier i, 2i free region after barrier
// i (2N is the outgoing side).
int locate_region(const BarrierSystem& system, double x) {
  for (int i = 1; i <= system.n_barriers; ++i) {
    const double start = system.barrier_start(i);
    if (x < start) return 2 * (i - 1);
    if (x <= start + system.width) return 2 * i - 1;
  }
  return 2 * system.n_barriers;
}

struct Branch {
  cplx value;
  cplx derivative;
};

Branch evaluate_branch(const ScatteringSolution& sol, const BarrierSystem& system, int region,
                       double x) {
  const cplx ik = kI * sol.k;
  const int n = system.n_barriers;
  if (region == 0) {
    const cplx fwd = std::exp(ik * x);
    const cplx bwd = std::exp(-ik * x);
    return {fwd + sol.reflection * bwd, ik * (fwd - sol.reflection * bwd)};
  }
  const int cell = (region + 1) / 2;  // barrier index owning this region
  const double d = x - system.barrier_start(cell);
  if (region % 2 == 1) {
    const auto& c = sol.barrier[cell - 1];
    const cplx up = c.a * std::exp(sol.kappa * d);
    const cplx down = c.b * std::exp(-sol.kappa * d);
    return {up + down, sol.kappa * (up - down)};
  }
  if (region == 2 * n) {
    const cplx out = sol.transmission * std::exp(ik * d);
    return {out, ik * out};
  }
  const auto& c = sol.gap[cell - 1];
  const cplx fwd = c.a * std::exp(ik * d);
  const cplx bwd = c.b * std::exp(-ik * d);
  return {fwd + bwd, ik * (fwd - bwd)};
}

}  // namespace

cplx evaluate_wavefunction(const ScatteringSolution& solution, const BarrierSystem& system,
                           double x) {
  return evaluate_branch(solution, system, locate_region(system, x), x).value;
}

cplx evaluate_wavefunction_derivative(const ScatteringSolution& solution,
                                      const BarrierSystem& system, double x) {
  return evaluate_branch(solution, system, locate_region(system, x), x).derivative;
}

double unitarity_defect(const ScatteringSolution& solution) {
  return std::norm(solution.reflection) + std::norm(solution.transmission) - 1.0;
}

double interface_residual(const ScatteringSolution& solution, const BarrierSystem& system) {
  double worst = 0.0;
  auto compare = [&](double x, int left, int right) {
    const Branch l = evaluate_branch(solution, system, left, x);
    const Branch r = evaluate_branch(solution, system, right, x);
    const double mag = std::max({std::abs(l.value), std::abs(r.value), 1e-300});
    const double dmag = std::max({std::abs(l.derivative), std::abs(r.derivative),
                                  solution.k * mag, 1e-300});
    worst = std::max(worst, std::abs(l.value - r.value) / mag);
    worst = std::max(worst, std::abs(l.derivative - r.derivative) / dmag);
  };
  for (int i = 1; i <= system.n_barriers; ++i) {
    const double start = system.barrier_start(i);
    compare(start, 2 * i - 2, 2 * i - 1);
    compare(start + system.width, 2 * i - 1, 2 * i);
  }
  return worst;
}

double max_relative_difference(const ScatteringSolution& lhs, const ScatteringSolution& rhs) {
  if (lhs.barrier.size() != rhs.barrier.size() || lhs.gap.size() != rhs.gap.size()) {
    throw ArgumentError("solutions describe different barrier counts");
  }
  double worst = 0.0;
  auto rel = [&](cplx x, cplx y) {
    const double mag = std::max({std::abs(x), std::abs(y), 1e-300});
    worst = std::max(worst, std::abs(x - y) / mag);
  };
  rel(lhs.reflection, rhs.reflection);
  rel(lhs.transmission, rhs.transmission);
  for (std::size_t i = 0; i < lhs.barrier.size(); ++i) {
    rel(lhs.barrier[i].a, rhs.barrier[i].a);
    rel(lhs.barrier[i].b, rhs.barrier[i].b);
  }
  for (std::size_t i = 0; i < lhs.gap.size(); ++i) {
    rel(lhs.gap[i].a, rhs.gap[i].a);
    rel(lhs.gap[i].b, rhs.gap[i].b);
  }
  return worst;
}

}  // namespace mbt
