#include "nuhyp/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace nuhyp {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::domain: return "domain";
    case Errc::overflow: return "overflow";
    case Errc::degenerate_parameter: return "degenerate_parameter";
    case Errc::no_solution: return "no_solution";
    case Errc::structural: return "structural";
    case Errc::no_physical_branch: return "no_physical_branch";
    case Errc::singular_coefficient: return "singular_coefficient";
    case Errc::non_normalizable: return "non_normalizable";
    case Errc::resolution: return "resolution";
    case Errc::sampling: return "sampling";
    case Errc::convergence: return "convergence";
    case Errc::precondition: return "precondition";
    case Errc::pole: return "pole";
    case Errc::parse: return "parse";
    case Errc::validation: return "validation";
  }
  return "unknown";
}

HyperbolicPair hyperbolic_pair(double z) {
  if (!(z > 0.0)) throw Error(Errc::domain, "hyperbolic_pair: argument must be positive");
  if (z > kHyperbolicAsymptote) {
    return {1.0, 4.0 * std::exp(-2.0 * z)};
  }
  const double sh = std::sinh(z);
  return {1.0 / std::tanh(z), 1.0 / (sh * sh)};
}

double centrifugal_defect(double z) {
  if (!(z > 0.0)) throw Error(Errc::domain, "centrifugal_defect: argument must be positive");
  if (z < 0.25) {
    // Taylor series of 1 - z^2 cosech^2 z through z^14.
    const double z2 = z * z;
    constexpr std::array<double, 7> coeff = {
        1.0 / 3.0,          -1.0 / 15.0,          2.0 / 189.0,    -1.0 / 675.0,
        2.0 / 10395.0,      -1382.0 / 58046625.0, 4.0 / 1403325.0};
    double sum = 0.0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) sum = sum * z2 + *it;
    return sum * z2;
  }
  const auto [coth, cosech2] = hyperbolic_pair(z);
  (void)coth;
  return 1.0 - z * z * cosech2;
}

Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::sqrt(z);
}

Complex principal_pow(Complex z, Complex w) {
  if (z == Complex(0.0)) {
    if (w.real() > 0.0) return Complex(0.0);
    throw Error(Errc::pole, "principal_pow: zero base with non-positive exponent");
  }
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::exp(w * std::log(z));
}

namespace {

double residual(Complex c2, Complex c1, Complex c0, Complex z) {
  return std::abs((c2 * z + c1) * z + c0);
}

}  // namespace

QuadraticRoots solve_quadratic(Complex c2, Complex c1, Complex c0) {
  QuadraticRoots out;
  if (c2 == Complex(0.0)) {
    if (c1 == Complex(0.0)) {
      throw Error(Errc::no_solution, "solve_quadratic: leading and linear coefficients both vanish");
    }
    out.count = 1;
    out.roots[0] = -c0 / c1;
    out.residuals[0] = residual(c2, c1, c0, out.roots[0]);
    return out;
  }

  const Complex s = principal_sqrt(c1 * c1 - 4.0 * c2 * c0);
  out.count = 2;
  const bool add = (std::conj(c1) * s).real() >= 0.0;
  const Complex q = add ? -0.5 * (c1 + s) : -0.5 * (c1 - s);
  if (q == Complex(0.0)) {
    // c1 = 0 and c1^2 = 4 c2 c0 force a double root at zero.
    out.roots = {Complex(0.0), Complex(0.0)};
  } else if (add) {
    out.roots = {c0 / q, q / c2};
  } else {
    out.roots = {q / c2, c0 / q};
  }
  for (int i = 0; i < 2; ++i) out.residuals[i] = residual(c2, c1, c0, out.roots[i]);
  return out;
}

}  // namespace nuhyp
