#ifndef NUHYP_POTENTIAL_HPP
#define NUHYP_POTENTIAL_HPP

#include <optional>
#include <vector>

#include "nuhyp/types.hpp"

namespace nuhyp {

/// V(r) = -a V0 coth(alpha r) + b V1 coth^2(alpha r) - c V2 cosech^2(alpha r) + d.
///
/// Throws Errc::domain for r <= 0 and Errc::overflow (naming the term) when a
/// term is not finite.
double eval_potential(const PotentialParams& params, double r);

/// V(r) + hbar^2 l (l + 1) / (2 m r^2).
double effective_potential(const PotentialParams& params, const PhysicalConstants& consts, int l,
                           double r);

/// Limit of V(r) as r -> infinity: -a V0 + b V1 + d.
double asymptotic_potential(const PotentialParams& params);

/// Coefficient of 1/r^2 in V(r) as r -> 0, i.e. (b V1 - c V2) / alpha^2.
double inverse_square_coefficient(const PotentialParams& params);

enum class SpecialCase { RosenMorse, PoschlTeller, Scarf };

/// How the Rosen-Morse "a" is read. Coefficient plugs it straight into the
/// general form (as the plotted parameter sets read it); Subscript treats the family label
/// V_{-a,0,c,0} literally, so the general-form coefficient is -a.
enum class RosenMorseConvention { Coefficient, Subscript };

struct SpecialCaseShape {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double V0 = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
  double alpha = 1.0;
};

/// Builds general-form parameters for a named special case. Knobs not used by
/// the case are forced to zero; for Poschl-Teller the shape c is the
/// coefficient of +V2 cosech^2 and is negated into the general form.
PotentialParams special_case_params(SpecialCase kind, const SpecialCaseShape& shape,
                                    RosenMorseConvention convention = RosenMorseConvention::Coefficient);

struct CentrifugalApprox {
  double approx;     ///< alpha^2 cosech^2(alpha r)
  double exact;      ///< 1 / r^2
  double rel_error;  ///< |approx - exact| r^2
};

/// Pekeris-type replacement 1/r^2 ~ alpha^2 cosech^2(alpha r), meant for alpha r << 1.
CentrifugalApprox centrifugal_approx(double alpha, double r);

struct SeriesPoint {
  double r;
  std::optional<double> value;  ///< empty marks a gap (non-finite potential)
};

/// Uniform scan on [r_min, r_max] inclusive. With l set the effective
/// potential is sampled instead of the bare one.
std::vector<SeriesPoint> scan_series(const PotentialParams& params, double r_min, double r_max,
                                     int n_points, std::optional<int> l = std::nullopt,
                                     const PhysicalConstants& consts = {});

}  // namespace nuhyp

#endif  // NUHYP_POTENTIAL_HPP
