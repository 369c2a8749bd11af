#include <algorithm>
#include <random>

#include "doctest.h"
#include "nuhyp/error.hpp"
#include "nuhyp/nu_engine.hpp"
#include "nuhyp/special_functions.hpp"

using namespace nuhyp;

namespace {

Complex random_complex(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

// sigma = 1 + s^2, tau_bar = beta + 2 s, sigma_bar = -eps2 + beta2 s + gamma2 s^2
NUProblem reduced_triple(Complex eps2, Complex beta2, Complex gamma2) {
  return {Poly{{1.0, 0.0, 1.0}}, Poly{{-eps2, beta2, gamma2}}, Poly{{principal_sqrt(beta2), 2.0, 0.0}}};
}

// psi'' + (eps - x^2) psi = 0
NUProblem oscillator(Complex eps) { return {Poly{{1.0, 0.0, 0.0}}, Poly{{eps, 0.0, -1.0}}, Poly{}}; }

double poly_distance(const Poly& p, const Poly& q) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(p.c[i] - q.c[i]));
  return d;
}

}  // namespace

TEST_CASE("poly helpers") {
  const Poly p{{1.0, 2.0, 3.0}};
  CHECK(p(Complex(2.0)) == Complex(17.0));
  CHECK(p.derivative().c[0] == Complex(2.0));
  CHECK(p.derivative().c[1] == Complex(6.0));
  CHECK(p.degree() == 2);
  CHECK(Poly{{4.0, 0.0, 0.0}}.degree() == 0);
  CHECK(Poly{}.is_zero());
  CHECK((p - p).is_zero());
  CHECK(poly_distance(Complex(2.0) * p, p + p) == 0.0);
}

TEST_CASE("problem validation") {
  NUProblem bad = oscillator(1.0);
  bad.tau_bar = Poly{{0.0, 0.0, 1.0}};
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = oscillator(1.0);
  bad.sigma = Poly{};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("radicand of the reduced triple") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const Complex e = random_complex(rng), b = random_complex(rng), g = random_complex(rng), k = random_complex(rng);
    const Poly r = radicand_coeffs(reduced_triple(e, b, g), k);
    CHECK(std::abs(r.c[2] - (k - g)) <= 1e-14 * std::abs(k - g));
    CHECK(std::abs(r.c[1] + b) <= 1e-14 * std::abs(b));
    const Complex c0 = b / 4.0 + e + k;
    CHECK(std::abs(r.c[0] - c0) <= 1e-14 * std::abs(c0));
  }
}

TEST_CASE("radicand vanishes when every term cancels") {
  const NUProblem p{Poly{{0.0, 1.0, 0.0}}, Poly{}, Poly{{1.0, 0.0, 0.0}}};
  CHECK(radicand_coeffs(p, 0.0).is_zero());
}

TEST_CASE("oscillator radicand and k") {
  const Complex eps(5.0);
  const Poly r = radicand_coeffs(oscillator(eps), 2.0);
  CHECK(r.c[2] == Complex(1.0));
  CHECK(r.c[1] == Complex(0.0));
  CHECK(r.c[0] == Complex(2.0) - eps);
  const auto ks = k_candidates(oscillator(eps));
  REQUIRE(ks.size() == 1);
  CHECK(std::abs(ks[0] - eps) < 1e-14);
}

TEST_CASE("degenerate linear radicand forces k = 0") {
  const NUProblem p{Poly{{0.0, 1.0, 0.0}}, Poly{}, Poly{{1.0, 0.0, 0.0}}};
  const auto ks = k_candidates(p);
  REQUIRE(ks.size() == 1);
  CHECK(std::abs(ks[0]) < 1e-15);
}

TEST_CASE("k recovered from a manufactured double root") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Complex p = random_complex(rng), q = random_complex(rng), k = random_complex(rng);
    const Complex tb0 = random_complex(rng), tb1 = random_complex(rng);
    const Poly sigma{{1.0, 0.0, 1.0}};
    const Poly tau_bar{{tb0, tb1, 0.0}};
    const Poly half = Complex(0.5) * (sigma.derivative() - tau_bar);
    const Poly half_sq{{half.c[0] * half.c[0], 2.0 * half.c[0] * half.c[1], half.c[1] * half.c[1]}};
    const Poly square{{q * q, 2.0 * p * q, p * p}};
    const Poly sigma_bar = half_sq + k * sigma - square;
    const auto ks = k_candidates({sigma, sigma_bar, tau_bar});
    double best = 1e300;
    for (const Complex& c : ks) best = std::min(best, std::abs(c - k));
    CHECK(best <= 1e-10 * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("every enumerated branch is a perfect square") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const NUProblem p = reduced_triple(random_complex(rng), random_complex(rng), random_complex(rng));
    const auto branches = enumerate_branches(p);
    REQUIRE(branches.size() == 4);
    for (const NUSolution& s : branches) {
      const Poly r = radicand_coeffs(p, s.k);
      const double scale = std::max({std::abs(r.c[1] * r.c[1]), std::abs(4.0 * r.c[2] * r.c[0]), 1.0});
      CHECK(std::abs(r.c[1] * r.c[1] - 4.0 * r.c[2] * r.c[0]) <= 1e-10 * scale);
      CHECK(poly_distance(s.tau, p.tau_bar + Complex(2.0) * s.pi) <= 1e-14 * std::max(1.0, std::abs(s.pi.c[1])));
      CHECK(std::abs(s.lambda - (s.k + s.pi.derivative().c[0])) <= 1e-14 * std::max(1.0, std::abs(s.lambda)));
      // pi^2 reproduces the radicand
      const Poly half = Complex(0.5) * (p.sigma.derivative() - p.tau_bar);
      const Poly root = s.pi - half;
      const Poly sq{{root.c[0] * root.c[0], 2.0 * root.c[0] * root.c[1], root.c[1] * root.c[1]}};
      CHECK(poly_distance(sq, r) <= 1e-9 * std::max(1.0, std::abs(r.c[0]) + std::abs(r.c[2])));
    }
  }
}

TEST_CASE("radicand_root squares back") {
  const Poly r{{9.0, 12.0, 4.0}};
  const Poly root = radicand_root(r);
  const Poly sq{{root.c[0] * root.c[0], 2.0 * root.c[0] * root.c[1], root.c[1] * root.c[1]}};
  CHECK(poly_distance(sq, r) < 1e-14);
}

TEST_CASE("oscillator selection and spectrum") {
  for (int n = 0; n < 6; ++n) {
    const NUProblem p = oscillator(Complex(2.0 * n + 1.0));
    const NUSelection sel = pi_tau_select(p);
    CHECK_FALSE(sel.multiple());
    CHECK(std::abs(sel.selected.tau_slope() - Complex(-2.0)) < 1e-14);
    CHECK(sel.branches.size() == 2);
    CHECK(quantization_residual(p, sel.selected, n) <= 1e-10);
    CHECK(std::abs(lambda_n_of(p, sel.selected.tau, n) - Complex(2.0 * n)) < 1e-14);
  }
  // lambda = lambda_n gives eps_n = 2n + 1: equal spacing
  double prev = 0.0;
  for (int n = 0; n < 6; ++n) {
    const NUSelection sel = pi_tau_select(oscillator(0.0));
    const Complex eps = lambda_n_of(oscillator(0.0), sel.selected.tau, n) + 1.0;
    if (n > 0) CHECK(std::abs(eps.real() - prev - 2.0) < 1e-10);
    prev = eps.real();
  }
}

TEST_CASE("lambda_n at n = 0 is zero") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const NUProblem p = reduced_triple(random_complex(rng), random_complex(rng), random_complex(rng));
    CHECK(lambda_n_of(p, enumerate_branches(p)[0].tau, 0) == Complex(0.0));
  }
}

TEST_CASE("no admissible branch is reported") {
  // sigma = s^2, sigma_bar = 3 s^2 - 4: k = 2, pi = s +/- 2, both tau' = 2
  const NUProblem p{Poly{{0.0, 0.0, 1.0}}, Poly{{-4.0, 0.0, 3.0}}, Poly{}};
  try {
    pi_tau_select(p);
    FAIL("expected no_physical_branch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_physical_branch);
  }
}

TEST_CASE("structural failure when k is unconstrained") {
  const NUProblem p{Poly{{1.0, 0.0, 0.0}}, Poly{{1.0, 0.0, 0.0}}, Poly{}};
  try {
    k_candidates(p);
    FAIL("expected structural");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::structural);
  }
}
