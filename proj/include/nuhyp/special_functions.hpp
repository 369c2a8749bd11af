#ifndef NUHYP_SPECIAL_FUNCTIONS_HPP
#define NUHYP_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <string>

#include "nuhyp/error.hpp"
#include "nuhyp/types.hpp"

namespace nuhyp {

/// Above this argument coth is taken as 1 and cosech^2 as 4 exp(-2z).
inline constexpr double kHyperbolicAsymptote = 20.0;

struct HyperbolicPair {
  double coth;
  double cosech2;
};

/// coth(z) and cosech^2(z) for z > 0 without forming exp(z) at large z.
HyperbolicPair hyperbolic_pair(double z);

/// 1 - z^2 cosech^2(z), accurate for small z where the direct form cancels.
double centrifugal_defect(double z);

/// Principal square root; real negatives map to the positive imaginary axis
/// regardless of the sign of a zero imaginary part.
Complex principal_sqrt(Complex z);

/// z^w through the principal logarithm.
Complex principal_pow(Complex z, Complex w);

/// Roots of c2 z^2 + c1 z + c0 = 0. With two roots, roots[0] is
/// (-c1 + sqrt(disc)) / (2 c2) and roots[1] is (-c1 - sqrt(disc)) / (2 c2),
/// each computed through the cancellation-free pairing.
struct QuadraticRoots {
  int count = 0;
  std::array<Complex, 2> roots{};
  std::array<double, 2> residuals{};
};

QuadraticRoots solve_quadratic(Complex c2, Complex c1, Complex c0);

template <typename Scalar>
struct JacobiSpec {
  int n = 0;
  Scalar a{};
  Scalar b{};
  Scalar x{};
};

/// P_n^{(a,b)}(x) by the three-term recurrence, valid for complex a, b, x.
/// Normalization is the standard one, P_n^{(a,b)}(1) = binomial(n + a, n).
template <typename Scalar>
Scalar jacobi(const JacobiSpec<Scalar>& spec) {
  if (spec.n < 0) throw Error(Errc::domain, "jacobi: degree must be non-negative");
  const Scalar a = spec.a;
  const Scalar b = spec.b;
  const Scalar x = spec.x;
  if (spec.n == 0) return Scalar(1);

  Scalar p_prev(1);
  Scalar p = (a + Scalar(1)) + (a + b + Scalar(2)) * (x - Scalar(1)) / Scalar(2);
  const Scalar ab = a + b;
  for (int k = 2; k <= spec.n; ++k) {
    const double kd = k;
    const Scalar lead = Scalar(2 * kd) * (Scalar(kd) + ab) * (Scalar(2 * kd - 2) + ab);
    if (std::abs(lead) == 0.0) {
      throw Error(Errc::degenerate_parameter,
                  "jacobi: recurrence leading coefficient vanishes at k = " + std::to_string(k));
    }
    const Scalar t = Scalar(2 * kd) + ab;
    const Scalar mid = (t - Scalar(1)) * (t * (t - Scalar(2)) * x + a * a - b * b);
    const Scalar tail = Scalar(2) * (Scalar(kd - 1) + a) * (Scalar(kd - 1) + b) * t;
    const Scalar next = (mid * p - tail * p_prev) / lead;
    p_prev = p;
    p = next;
  }
  return p;
}

template <typename Scalar>
Scalar jacobi(int n, Scalar a, Scalar b, Scalar x) {
  return jacobi(JacobiSpec<Scalar>{n, a, b, x});
}

}  // namespace nuhyp

#endif  // NUHYP_SPECIAL_FUNCTIONS_HPP
