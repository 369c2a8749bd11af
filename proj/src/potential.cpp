#include "nuhyp/potential.hpp"

#include <cmath>
#include <string>

#include "nuhyp/error.hpp"
#include "nuhyp/special_functions.hpp"

namespace nuhyp {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw Error(Errc::domain, std::string(name) + " must be finite");
}

void check_term(double value, const char* term) {
  if (!std::isfinite(value)) {
    throw Error(Errc::overflow, std::string("eval_potential: term ") + term + " is not finite");
  }
}

}  // namespace

void PotentialParams::validate() const {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(d, "d");
  require_finite(V0, "V0");
  require_finite(V1, "V1");
  require_finite(V2, "V2");
  require_finite(alpha, "alpha");
  if (!(alpha > 0.0)) throw Error(Errc::domain, "alpha must be positive");
}

void PhysicalConstants::validate() const {
  if (!(std::isfinite(hbar) && hbar > 0.0)) throw Error(Errc::domain, "hbar must be positive");
  if (!(std::isfinite(mass) && mass > 0.0)) throw Error(Errc::domain, "mass must be positive");
}

void QuantumState::validate() const {
  if (n < 0) throw Error(Errc::domain, "n must be non-negative");
  if (l < 0) throw Error(Errc::domain, "l must be non-negative");
}

double eval_potential(const PotentialParams& params, double r) {
  if (!(r > 0.0)) throw Error(Errc::domain, "eval_potential: r must be positive (singular at origin)");
  const auto [coth, cosech2] = hyperbolic_pair(params.alpha * r);
  const double t_coth = -params.a * params.V0 * coth;
  const double t_coth2 = params.b * params.V1 * coth * coth;
  const double t_cosech2 = -params.c * params.V2 * cosech2;
  check_term(t_coth, "-a V0 coth");
  check_term(t_coth2, "b V1 coth^2");
  check_term(t_cosech2, "-c V2 cosech^2");
  const double v = t_coth + t_coth2 + t_cosech2 + params.d;
  check_term(v, "sum");
  return v;
}

double effective_potential(const PotentialParams& params, const PhysicalConstants& consts, int l,
                           double r) {
  if (l < 0) throw Error(Errc::domain, "effective_potential: l must be non-negative");
  const double v = eval_potential(params, r);
  if (l == 0) return v;
  const double barrier = consts.kinetic() * l * (l + 1) / (r * r);
  check_term(barrier, "hbar^2 l(l+1)/(2m r^2)");
  return v + barrier;
}

double asymptotic_potential(const PotentialParams& params) {
  return -params.a * params.V0 + params.b * params.V1 + params.d;
}

double inverse_square_coefficient(const PotentialParams& params) {
  return (params.b * params.V1 - params.c * params.V2) / (params.alpha * params.alpha);
}

PotentialParams special_case_params(SpecialCase kind, const SpecialCaseShape& shape,
                                    RosenMorseConvention convention) {
  PotentialParams p;
  p.V0 = shape.V0;
  p.V1 = shape.V1;
  p.V2 = shape.V2;
  p.alpha = shape.alpha;
  switch (kind) {
    case SpecialCase::RosenMorse:
      p.a = convention == RosenMorseConvention::Coefficient ? shape.a : -shape.a;
      p.c = shape.c;
      break;
    case SpecialCase::PoschlTeller:
      p.c = -shape.c;
      break;
    case SpecialCase::Scarf:
      p.b = shape.b;
      break;
  }
  p.validate();
  return p;
}

CentrifugalApprox centrifugal_approx(double alpha, double r) {
  if (!(r > 0.0)) throw Error(Errc::domain, "centrifugal_approx: r must be positive");
  if (!(alpha > 0.0)) throw Error(Errc::domain, "centrifugal_approx: alpha must be positive");
  const auto [coth, cosech2] = hyperbolic_pair(alpha * r);
  (void)coth;
  return {alpha * alpha * cosech2, 1.0 / (r * r), centrifugal_defect(alpha * r)};
}

std::vector<SeriesPoint> scan_series(const PotentialParams& params, double r_min, double r_max,
                                     int n_points, std::optional<int> l,
                                     const PhysicalConstants& consts) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw Error(Errc::domain, "scan_series: need 0 < r_min < r_max");
  }
  if (n_points < 2) throw Error(Errc::domain, "scan_series: need at least two points");
  std::vector<SeriesPoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  const double h = (r_max - r_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double r = i + 1 == n_points ? r_max : r_min + i * h;
    SeriesPoint pt{r, std::nullopt};
    try {
      pt.value = l ? effective_potential(params, consts, *l, r) : eval_potential(params, r);
    } catch (const Error& e) {
      if (e.code() != Errc::overflow) throw;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace nuhyp
