#pragma once

#include <complex>

namespace mbt {

enum class DispersionKind { NonrelativisticParticle };

/// Propagating and evanescent wavevectors at one frequency.
struct Wavevectors {
  double k = 0.0;               ///< free-region wavevector
  double chi = 0.0;             ///< decay constant inside a barrier
  double group_velocity = 0.0;  ///< d(omega)/dk in the free regions
};

/// Frequency to wavevector map. Natural units hbar = 1, 2m = 1, so that the
/// energy equals the angular frequency: omega = k^2 and chi^2 = V0 - omega.
class DispersionModel {
 public:
  /// Throws ArgumentError for a negative or non-finite height. A zero height
  /// is accepted so the exact solver can model free propagation; it leaves
  /// the tunneling interval empty.
  static DispersionModel particle(double barrier_height);

  DispersionKind kind() const noexcept { return kind_; }
  double barrier_height() const noexcept { return barrier_height_; }

  /// Free-region wavevector, any omega > 0.
  double free_wavevector(double omega) const;
  double dk_domega(double omega) const;
  double dchi_domega(double omega) const;

  /// Barrier-region exponent kappa with psi ~ exp(+-kappa x). Real and positive
  /// below the barrier top, purely imaginary above it, zero at omega = height.
  std::complex<double> barrier_exponent(double omega, double height) const;

  /// Inverse of free_wavevector.
  double omega_for_wavevector(double k) const;

  bool in_tunneling_regime(double omega) const noexcept {
    return omega > 0.0 && omega < barrier_height_;
  }

 private:
  DispersionModel(DispersionKind kind, double barrier_height)
      : kind_(kind), barrier_height_(barrier_height) {}

  DispersionKind kind_;
  double barrier_height_;
};

/// Wavevectors in the tunneling regime. Throws DomainError unless
/// 0 < omega < barrier_height.
Wavevectors dispersion_eval(const DispersionModel& model, double omega);

}  // namespace mbt
