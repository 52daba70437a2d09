#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "mbt/errors.hpp"
#include "mbt/exact_solver.hpp"
#include "solver_common.hpp"

namespace mbt {

namespace {

// Below this reciprocal condition estimate the LU factors are not trusted.
constexpr double kSingularRcond = 1e-15;

}  // namespace

// Unknowns, in order: R, then per barrier (A~_{2i}, B_{2i}) followed by the
// free-region pair (A_{2i+1}, B_{2i+1}) when i < N, then T. The growing
// barrier amplitude is carried as A~ = A e^{kappa a}, its value at the right
// edge, so that every matrix entry stays O(1) for thick barriers.
ScatteringSolution brute_force_solve(const BarrierSystem& system,
                                     const DispersionModel& model, double omega) {
  const auto rw = detail::prepare(system, model, omega);
  const int n = system.n_barriers;
  const int dim = 4 * n;
  const cplx ik{0.0, rw.k};
  const cplx kappa = rw.kappa;
  const cplx decay = std::exp(-kappa * system.width);
  const cplx phase_a = std::exp(ik * system.width);
  const cplx phase_l = std::exp(ik * system.period);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);

  auto barrier_a = [](int i) { return 1 + 4 * (i - 1); };
  auto barrier_b = [](int i) { return 2 + 4 * (i - 1); };
  auto free_a = [](int i) { return 3 + 4 * (i - 1); };
  auto free_b = [](int i) { return 4 + 4 * (i - 1); };
  const int col_t = dim - 1;

  int row = 0;
  for (int i = 1; i <= n; ++i) {
    // Left edge, x = (i-1)L: free side minus barrier side.
    if (i == 1) {
      m(row, 0) = 1.0;
      rhs(row) = -1.0;
      m(row + 1, 0) = -ik;
      rhs(row + 1) = -ik;
    } else {
      m(row, free_a(i - 1)) = phase_l;
      m(row, free_b(i - 1)) = 1.0 / phase_l;
      m(row + 1, free_a(i - 1)) = ik * phase_l;
      m(row + 1, free_b(i - 1)) = -ik / phase_l;
    }
    m(row, barrier_a(i)) = -decay;
    m(row, barrier_b(i)) = -1.0;
    m(row + 1, barrier_a(i)) = -kappa * decay;
    m(row + 1, barrier_b(i)) = kappa;
    row += 2;

    // Right edge, x = (i-1)L + a: barrier side minus free side.
    m(row, barrier_a(i)) = 1.0;
    m(row, barrier_b(i)) = decay;
    m(row + 1, barrier_a(i)) = kappa;
    m(row + 1, barrier_b(i)) = -kappa * decay;
    if (i < n) {
      m(row, free_a(i)) = -phase_a;
      m(row, free_b(i)) = -1.0 / phase_a;
      m(row + 1, free_a(i)) = -ik * phase_a;
      m(row + 1, free_b(i)) = ik / phase_a;
    } else {
      m(row, col_t) = -phase_a;
      m(row + 1, col_t) = -ik * phase_a;
    }
    row += 2;
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond)) {
    std::ostringstream os;
    os << "dense matching system is numerically singular (reciprocal condition estimate "
       << rcond << ")";
    throw NumericError(os.str());
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (!x.allFinite()) {
    throw NumericError("dense matching solve produced non-finite coefficients");
  }

  ScatteringSolution sol;
  sol.omega = omega;
  sol.k = rw.k;
  sol.kappa = kappa;
  sol.reflection = x(0);
  sol.transmission = x(col_t);
  sol.barrier.resize(n);
  sol.gap.resize(n - 1);
  for (int i = 1; i <= n; ++i) {
    sol.barrier[i - 1] = {x(barrier_a(i)) * decay, x(barrier_b(i))};
    if (i < n) {
      sol.gap[i - 1] = {x(free_a(i)), x(free_b(i))};
    }
  }
  return sol;
}

}  // namespace mbt
