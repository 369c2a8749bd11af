#ifndef NUHYP_TYPES_HPP
#define NUHYP_TYPES_HPP

#include <complex>

namespace nuhyp {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Coefficients of
///   V(r) = -a V0 coth(alpha r) + b V1 coth^2(alpha r) - c V2 cosech^2(alpha r) + d.
/// Depths and d in MeV, alpha in inverse length.
struct PotentialParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double V0 = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
  double alpha = 1.0;

  /// Throws Errc::domain naming the offending field.
  void validate() const;
  friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

/// Defaults are natural units with hbar = 1 and 2m = 1.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 0.5;

  void validate() const;
  /// hbar^2 / (2m), the kinetic prefactor.
  double kinetic() const { return hbar * hbar / (2.0 * mass); }
};

struct QuantumState {
  int n = 0;
  int l = 0;

  void validate() const;
};

}  // namespace nuhyp

#endif  // NUHYP_TYPES_HPP
