#include "mbt/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "mbt/errors.hpp"

namespace mbt {

DispersionModel DispersionModel::particle(double barrier_height) {
  if (!std::isfinite(barrier_height) || barrier_height < 0.0) {
    std::ostringstream os;
    os << "barrier height must be finite and non-negative, got " << barrier_height;
    throw ArgumentError(os.str());
  }
  return DispersionModel(DispersionKind::NonrelativisticParticle, barrier_height);
}

double DispersionModel::free_wavevector(double omega) const {
  if (!(omega > 0.0)) {
    throw DomainError("free wavevector requires omega > 0");
  }
  return std::sqrt(omega);
}

double DispersionModel::dk_domega(double omega) const {
  return 0.5 / free_wavevector(omega);
}

double DispersionModel::dchi_domega(double omega) const {
  return -0.5 / std::sqrt(barrier_height_ - omega);
}

std::complex<double> DispersionModel::barrier_exponent(double omega, double height) const {
  const double excess = height - omega;
  if (excess >= 0.0) {
    return {std::sqrt(excess), 0.0};
  }
  return {0.0, std::sqrt(-excess)};
}

double DispersionModel::omega_for_wavevector(double k) const { return k * k; }

Wavevectors dispersion_eval(const DispersionModel& model, double omega) {
  const double v0 = model.barrier_height();
  if (!(omega > 0.0 && omega < v0)) {
    std::ostringstream os;
    os << "omega = " << omega << " outside the tunneling interval (0, " << v0 << ")";
    throw DomainError(os.str());
  }
  Wavevectors w;
  w.k = std::sqrt(omega);
  w.chi = std::sqrt(v0 - omega);
  w.group_velocity = 2.0 * w.k;
  return w;
}

}  // namespace mbt
