#ifndef NUHYP_NU_ENGINE_HPP
#define NUHYP_NU_ENGINE_HPP

#include <array>
#include <vector>

#include "nuhyp/types.hpp"

namespace nuhyp {

/// Polynomial of degree at most two, c[0] + c[1] s + c[2] s^2.
template <typename Scalar>
struct BasicPoly {
  std::array<Scalar, 3> c{};

  Scalar operator()(Scalar s) const { return (c[2] * s + c[1]) * s + c[0]; }
  BasicPoly derivative() const { return {{c[1], Scalar(2) * c[2], Scalar(0)}}; }
  int degree() const {
    for (int i = 2; i > 0; --i)
      if (c[static_cast<std::size_t>(i)] != Scalar(0)) return i;
    return 0;
  }
  bool is_zero() const { return c[0] == Scalar(0) && c[1] == Scalar(0) && c[2] == Scalar(0); }

  friend BasicPoly operator+(BasicPoly p, const BasicPoly& q) {
    for (std::size_t i = 0; i < 3; ++i) p.c[i] += q.c[i];
    return p;
  }
  friend BasicPoly operator-(BasicPoly p, const BasicPoly& q) {
    for (std::size_t i = 0; i < 3; ++i) p.c[i] -= q.c[i];
    return p;
  }
  friend BasicPoly operator*(Scalar k, BasicPoly p) {
    for (auto& x : p.c) x *= k;
    return p;
  }
};

using Poly = BasicPoly<Complex>;

/// Hypergeometric-type equation
///   y'' + (tau_bar / sigma) y' + (sigma_bar / sigma^2) y = 0.
struct NUProblem {
  Poly sigma;      ///< degree <= 2
  Poly sigma_bar;  ///< degree <= 2
  Poly tau_bar;    ///< degree <= 1

  void validate() const;
};

enum class KRoot { Plus, Minus };
enum class PiSign { Plus, Minus };

struct NUSolution {
  Complex k;
  Poly pi;
  Poly tau;
  Complex lambda;
  KRoot k_root = KRoot::Plus;
  PiSign pi_sign = PiSign::Plus;

  Complex tau_slope() const { return tau.c[1]; }
};

/// ((sigma' - tau_bar) / 2)^2 - sigma_bar + k sigma.
Poly radicand_coeffs(const NUProblem& problem, Complex k);

/// Values of k that turn the radicand into the square of a linear polynomial.
/// The zero-discriminant condition is quadratic in k, so at most two values.
/// Returned in solve_quadratic order (plus root first).
std::vector<Complex> k_candidates(const NUProblem& problem);

/// Linear polynomial whose square is the (perfect-square) radicand.
Poly radicand_root(const Poly& radicand);

/// Every (k, +/-) branch, without the negative-slope filter.
std::vector<NUSolution> enumerate_branches(const NUProblem& problem);

struct NUSelection {
  NUSolution selected;                ///< most negative Re(tau') among the admissible branches
  std::vector<NUSolution> admissible; ///< every branch with Re(tau') < 0
  std::vector<NUSolution> branches;   ///< all enumerated (k, +/-) branches
  bool multiple() const { return admissible.size() > 1; }
};

/// Enumerates every (k, +/-) branch and keeps those whose tau has a negative
/// derivative (real part, since coefficients may be complex). Throws
/// Errc::no_physical_branch listing every tau' when none qualifies.
NUSelection pi_tau_select(const NUProblem& problem);

/// lambda_n = -n tau' - n (n - 1) sigma'' / 2.
Complex lambda_n_of(const NUProblem& problem, const Poly& tau, int n);

/// |lambda - lambda_n| for a solved branch; zero when quantization holds.
double quantization_residual(const NUProblem& problem, const NUSolution& solution, int n);

}  // namespace nuhyp

#endif  // NUHYP_NU_ENGINE_HPP
