#include "nuhyp/nu_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nuhyp/error.hpp"
#include "nuhyp/special_functions.hpp"

namespace nuhyp {

void NUProblem::validate() const {
  if (sigma.is_zero()) throw Error(Errc::structural, "NUProblem: sigma is identically zero");
  if (tau_bar.c[2] != Complex(0.0)) throw Error(Errc::structural, "NUProblem: tau_bar must be linear");
}

Poly radicand_coeffs(const NUProblem& problem, Complex k) {
  const Poly half = 0.5 * Complex(1.0) * (problem.sigma.derivative() - problem.tau_bar);
  const Complex p0 = half.c[0];
  const Complex p1 = half.c[1];
  const Poly square{{p0 * p0, 2.0 * p0 * p1, p1 * p1}};
  return square - problem.sigma_bar + k * problem.sigma;
}

std::vector<Complex> k_candidates(const NUProblem& problem) {
  problem.validate();
  const Poly base = radicand_coeffs(problem, Complex(0.0));
  const Complex a0 = base.c[2], b0 = base.c[1], c0 = base.c[0];
  const Complex s0 = problem.sigma.c[0], s1 = problem.sigma.c[1], s2 = problem.sigma.c[2];

  // disc(k) = (b0 + k s1)^2 - 4 (a0 + k s2)(c0 + k s0)
  const Complex q2 = s1 * s1 - 4.0 * s2 * s0;
  const Complex q1 = 2.0 * b0 * s1 - 4.0 * (a0 * s0 + c0 * s2);
  const Complex q0 = b0 * b0 - 4.0 * a0 * c0;
  if (q2 == Complex(0.0) && q1 == Complex(0.0)) {
    throw Error(Errc::structural,
                q0 == Complex(0.0) ? "k_candidates: radicand is a perfect square for every k"
                                   : "k_candidates: no k makes the radicand a perfect square");
  }
  const QuadraticRoots roots = solve_quadratic(q2, q1, q0);
  std::vector<Complex> out(roots.roots.begin(), roots.roots.begin() + roots.count);
  if (out.size() == 2) {
    const double scale = std::max({std::abs(out[0]), std::abs(out[1]), 1.0});
    if (std::abs(out[0] - out[1]) <= 1e-14 * scale) out.pop_back();
  }
  return out;
}

Poly radicand_root(const Poly& radicand) {
  const Complex p1 = principal_sqrt(radicand.c[2]);
  Complex p0 = principal_sqrt(radicand.c[0]);
  if (std::abs(2.0 * p1 * p0 - radicand.c[1]) > std::abs(2.0 * p1 * p0 + radicand.c[1])) p0 = -p0;
  if (p1 == Complex(0.0) && radicand.c[1] != Complex(0.0)) {
    // linear term without a square partner: cannot be a perfect square
    const double scale = std::max(std::abs(radicand.c[0]), 1.0);
    if (std::abs(radicand.c[1]) > 1e-10 * scale) {
      throw Error(Errc::structural, "radicand_root: radicand is not a perfect square");
    }
  }
  return {{p0, p1, Complex(0.0)}};
}

std::vector<NUSolution> enumerate_branches(const NUProblem& problem) {
  const std::vector<Complex> ks = k_candidates(problem);
  const Poly half = 0.5 * Complex(1.0) * (problem.sigma.derivative() - problem.tau_bar);

  std::vector<NUSolution> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const Poly root = radicand_root(radicand_coeffs(problem, ks[i]));
    for (const PiSign sign : {PiSign::Plus, PiSign::Minus}) {
      NUSolution sol;
      sol.k = ks[i];
      sol.k_root = i == 0 ? KRoot::Plus : KRoot::Minus;
      sol.pi_sign = sign;
      sol.pi = sign == PiSign::Plus ? half + root : half - root;
      sol.tau = problem.tau_bar + Complex(2.0) * sol.pi;
      sol.lambda = sol.k + sol.pi.derivative().c[0];
      out.push_back(sol);
    }
  }
  return out;
}

NUSelection pi_tau_select(const NUProblem& problem) {
  NUSelection out;
  out.branches = enumerate_branches(problem);
  for (const auto& sol : out.branches) {
    if (sol.tau_slope().real() < 0.0) out.admissible.push_back(sol);
  }
  if (out.admissible.empty()) {
    std::ostringstream msg;
    msg << "pi_tau_select: no branch with Re(tau') < 0; tau' values:";
    for (const auto& b : out.branches) msg << ' ' << b.tau_slope();
    throw Error(Errc::no_physical_branch, msg.str());
  }
  out.selected = *std::min_element(out.admissible.begin(), out.admissible.end(),
                                   [](const NUSolution& x, const NUSolution& y) {
                                     return x.tau_slope().real() < y.tau_slope().real();
                                   });
  return out;
}

Complex lambda_n_of(const NUProblem& problem, const Poly& tau, int n) {
  if (n < 0) throw Error(Errc::domain, "lambda_n_of: n must be non-negative");
  const double nd = n;
  const Complex sigma2 = 2.0 * problem.sigma.c[2];
  return -nd * tau.c[1] - nd * (nd - 1.0) * sigma2 / 2.0;
}

double quantization_residual(const NUProblem& problem, const NUSolution& solution, int n) {
  return std::abs(solution.lambda - lambda_n_of(problem, solution.tau, n));
}

}  // namespace nuhyp
