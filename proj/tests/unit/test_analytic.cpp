#include <cmath>
#include <random>

#include "doctest.h"
#include "nuhyp/analytic.hpp"
#include "nuhyp/error.hpp"
#include "nuhyp/special_functions.hpp"
#include "reference_values.hpp"

using namespace nuhyp;

namespace {

const PotentialParams kFig1{1.0, 0.01, 2.0, 2.0, 1.0, 0.5, 0.02, 1.0};
const PhysicalConstants kUnits{};

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("dimensionless parameters") {
  PotentialParams p = kFig1;
  p.a = 0.0;
  CHECK(dimensionless_params(p, kUnits, -1.0, 0).beta2 == Complex(0.0));

  p = kFig1;
  p.b = 0.0;
  p.c = 0.0;
  CHECK(dimensionless_params(p, kUnits, -1.0, 0).gamma2 == Complex(0.0));

  // pref = 2m / (hbar^2 alpha^2) = 1 for the fig1 set
  const auto dp = dimensionless_params(kFig1, kUnits, -1.0, 0);
  CHECK(rel(dp.beta2, 1.0) < 1e-15);
  CHECK(rel(dp.gamma2, 0.035) < 1e-14);
  CHECK(rel(dp.eps2, 2.71) < 1e-14);
  CHECK(rel(dp.beta, 1.0) < 1e-15);
}

TEST_CASE("energy to eps2 round trip") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    const PotentialParams p{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), pos(rng)};
    const PhysicalConstants consts{pos(rng), pos(rng)};
    const Complex energy(u(rng), u(rng));
    for (const auto grouping : {EpsGrouping::Bracket, EpsGrouping::Trailing}) {
      const auto dp = dimensionless_params(p, consts, energy, 2, grouping);
      const Complex back = energy_from_eps2(p, consts, dp.eps2, 2, grouping);
      CHECK(std::abs(back - energy) <= 1e-12 * std::max(1.0, std::abs(energy)));
    }
  }
}

TEST_CASE("aux quantities limits") {
  auto dp = dimensionless_params(kFig1, kUnits, -1.0, 0);
  dp.eps2 = 0.0;
  const auto aux = aux_quantities(dp, kFig1, kUnits, 0, 0);
  CHECK(std::abs(aux.u - dp.gamma2) == 0.0);

  PotentialParams flat = kFig1;
  flat.a = 0.0;
  const auto dp0 = dimensionless_params(flat, kUnits, -1.0, 0);
  const auto aux0 = aux_quantities(dp0, flat, kUnits, 0, 0);
  CHECK(aux0.v == Complex(0.0));
  CHECK(rel(aux0.mu, 2.0 - principal_sqrt(aux0.u)) < 1e-15);
  CHECK(rel(aux0.nu, principal_sqrt(aux0.u)) < 1e-15);
}

TEST_CASE("fig1 ground auxiliaries") {
  const auto dp = dimensionless_params(kFig1, kUnits, -1.0, 0);
  const auto aux = aux_quantities(dp, kFig1, kUnits, 0, 0);
  CHECK(rel(aux.sigma_big, 0.465) < 1e-14);
  CHECK(rel(aux.v_aux, Complex(0.0, std::sqrt(1.035))) < 1e-14);
  CHECK(rel(aux.v, ref::kFig1Groundv) < 1e-14);
}

TEST_CASE("fig1 quantization coefficients") {
  const auto q = quantization_coefficients(kFig1, kUnits, 0, 0);
  CHECK(rel(q.c2, ref::kFig1GroundC2) < 1e-13);
  CHECK(rel(q.c1, ref::kFig1GroundC1) < 1e-13);
  CHECK(rel(q.c0, ref::kFig1GroundC0) < 1e-13);
}

TEST_CASE("fig1 energies against extended precision") {
  for (const auto& want : ref::kFig1Levels) {
    CAPTURE(want.n);
    CAPTURE(want.l);
    const auto levels = energy_levels(kFig1, kUnits, want.n, want.l, {.with_ode_residual = false});
    CHECK(levels[0].branch == EnergyBranch::Plus);
    CHECK(levels[1].branch == EnergyBranch::Minus);
    CHECK(rel(levels[0].energy, want.plus) < 1e-12);
    CHECK(rel(levels[1].energy, want.minus) < 1e-12);
    for (const auto& lvl : levels) {
      CHECK(lvl.residual_quantization <= 1e-10);
      CHECK(lvl.imag_magnitude == std::abs(lvl.energy.imag()));
    }
  }
}

TEST_CASE("fig1 roots of the quadratic") {
  const auto levels = energy_levels(kFig1, kUnits, 0, 0, {.with_ode_residual = false});
  CHECK(rel(levels[0].eps2, ref::kFig1Groundzp) < 1e-13);
  CHECK(rel(levels[1].eps2, ref::kFig1Groundzm) < 1e-13);
}

TEST_CASE("eps2 grouping shifts energies by 2d") {
  const auto bracket = energy_levels(kFig1, kUnits, 1, 1, {.with_ode_residual = false});
  const auto trailing =
      energy_levels(kFig1, kUnits, 1, 1, {.grouping = EpsGrouping::Trailing, .with_ode_residual = false});
  for (int i = 0; i < 2; ++i) CHECK(std::abs(bracket[i].energy - trailing[i].energy - 2.0 * kFig1.d) < 1e-12);
}

TEST_CASE("constant term variants differ") {
  const auto printed = energy_levels(kFig1, kUnits, 0, 0, {.with_ode_residual = false});
  const auto split =
      energy_levels(kFig1, kUnits, 0, 0, {.constant_term = ConstantTermForm::SplitWithVaux, .with_ode_residual = false});
  CHECK(std::abs(printed[0].energy - split[0].energy) > 1e-3);
  CHECK(split[0].residual_quantization <= 1e-10);
}

TEST_CASE("singular coefficients are named") {
  auto expect = [](const PotentialParams& p, const std::string& what) {
    try {
      quantization_coefficients(p, kUnits, 0, 0);
      FAIL("expected singular_coefficient");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::singular_coefficient);
      CHECK(std::string(e.what()).find(what) != std::string::npos);
    }
  };
  const PotentialParams scarf{0.0, 0.05, 0.0, 0.0, 1.0, 0.5, 0.02, 1.0};
  expect(scarf, "beta");
  PotentialParams no_gamma = kFig1;
  no_gamma.c = 0.25;  // c V2 = b V1 at l = 0
  expect(no_gamma, "gamma");
  CHECK_THROWS_AS(energy_levels(scarf, kUnits, 0, 0), Error);
}

TEST_CASE("random valid parameter sets back-substitute") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.3, 2.5);
  std::uniform_int_distribution<int> q(0, 3);
  int checked = 0;
  while (checked < 100) {
    const PotentialParams p{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), pos(rng)};
    try {
      for (const auto& lvl : energy_levels(p, kUnits, q(rng), q(rng), {.with_ode_residual = false})) {
        CHECK(lvl.residual_quantization <= 1e-10);
      }
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == Errc::singular_coefficient);
    }
  }
}

TEST_CASE("wavefunction parts") {
  const auto dp = dimensionless_params(kFig1, kUnits, -1.0, 0);
  const auto aux = aux_quantities(dp, kFig1, kUnits, 0, 0);
  const auto at0 = wavefunction_parts(aux, 0.0);
  CHECK(rel(at0.rho, 1.0) < 1e-15);
  CHECK(rel(at0.phi, 1.0) < 1e-15);

  AuxQuantities flat = aux;
  flat.mu = 0.0;
  flat.nu = 0.0;
  const Complex s(0.7, 0.2);
  CHECK(rel(wavefunction_parts(flat, s).rho, std::pow(1.0 + s * s, -2.0)) < 1e-14);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    AuxQuantities a = aux;
    a.mu = {u(rng), u(rng)};
    a.nu = {u(rng), u(rng)};
    a.B = {u(rng), u(rng)};
    const Complex x(0.5);
    const Complex I(0.0, 1.0);
    const Complex rho = std::exp(-2.0 * std::log(1.0 + x * x) + (a.mu + I * a.nu) * (std::log(1.0 + I * x) - std::log(1.0 - I * x)));
    const Complex phi = std::exp((a.mu + a.B) / 2.0 * std::log(1.0 + I * x) + (a.mu - a.B) / 2.0 * std::log(1.0 - I * x));
    const auto parts = wavefunction_parts(a, x);
    CHECK(rel(parts.rho, rho) < 1e-13);
    CHECK(rel(parts.phi, phi) < 1e-13);
  }
  CHECK_THROWS_AS(wavefunction_parts(aux, Complex(0.0, 1.0)), Error);
}

TEST_CASE("ground wavefunction normalizes") {
  const auto levels = energy_levels(kFig1, kUnits, 0, 0, {.with_ode_residual = false});
  const std::size_t before = jacobi_evaluation_count();
  RadialWavefunction wf = radial_wavefunction(kFig1, kUnits, levels[0]);
  (void)wf(1.0);
  CHECK(jacobi_evaluation_count() == before);

  CHECK(std::abs(*wf.raw_integral() - ref::kFig1GroundRawIntegral) <= 1e-7 * ref::kFig1GroundRawIntegral);
  CHECK(std::abs(wf.norm_constant() - ref::kFig1GroundNorm) <= 1e-7 * ref::kFig1GroundNorm);
  CHECK(wf.norm_constant().imag() == 0.0);
  CHECK(wf.norm_constant().real() > 0.0);

  const auto window = NormalizationWindow::standard(kFig1.alpha);
  CHECK(std::abs(log_trapezoid_norm(wf, window) - 1.0) < 1e-6);

  const Complex first = wf.norm_constant();
  wf.normalize(window);
  CHECK(std::abs(wf.norm_constant() - first) <= 1e-12 * std::abs(first));

  CHECK(std::abs(wf(30.0)) < 1e-5);
  CHECK(std::abs(wf.psi(2.0) - wf(2.0) / 2.0) < 1e-15);
}

TEST_CASE("excited wavefunctions use the jacobi recurrence") {
  const auto levels = energy_levels(kFig1, kUnits, 2, 1, {.with_ode_residual = false});
  RadialWavefunction wf(kFig1, kUnits, levels[0]);
  const std::size_t before = jacobi_evaluation_count();
  (void)wf.reduced(0.5);
  CHECK(jacobi_evaluation_count() == before + 1);
}

TEST_CASE("minus branch is not normalizable at the origin") {
  const auto levels = energy_levels(kFig1, kUnits, 0, 0, {.with_ode_residual = false});
  try {
    radial_wavefunction(kFig1, kUnits, levels[1]);
    FAIL("expected non_normalizable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_normalizable);
    CHECK(std::string(e.what()).find("r -> 0") != std::string::npos);
  }
}

TEST_CASE("ode residual on manufactured solutions") {
  const auto samples = default_residual_samples(1.0);
  CHECK(samples.size() == 32);
  CHECK(samples.front() == doctest::Approx(0.05));
  CHECK(samples.back() == doctest::Approx(10.0));

  const auto zero = [](double) { return Complex(0.0); };
  CHECK(ode_residual(zero, 1.0, zero, samples, 1e-4) == 0.0);

  const Complex k(0.7, 0.3), beta(1.1, -0.2);
  const Complex q = -k * k - beta * k;
  const auto f = [k](double r) { return std::exp(-k * r); };
  const auto qf = [q](double) { return q; };
  CHECK(ode_residual(f, beta, qf, samples, 1e-4) <= 1e-6);

  // a wrong q leaves an order-one residual
  const auto bad = [q](double) { return q + 1.0; };
  CHECK(ode_residual(f, beta, bad, samples, 1e-4) > 0.1);

  // step too coarse for the requested tolerance
  const auto wiggle = [](double r) { return Complex(std::sin(40.0 * r)); };
  CHECK_THROWS_AS(ode_residual(wiggle, beta, qf, samples, 0.05, 1e-8), Error);
}

TEST_CASE("closed-form wavefunction residuals are finite and recorded") {
  const auto levels = energy_levels(kFig1, kUnits, 0, 0);
  for (const auto& lvl : levels) {
    REQUIRE(lvl.residual_ode.has_value());
    CHECK(std::isfinite(*lvl.residual_ode));
  }
}

TEST_CASE("printed form diagnostics") {
  const auto levels = energy_levels(kFig1, kUnits, 2, 1, {.with_ode_residual = false});
  for (const auto& lvl : levels) {
    const RadialWavefunction wf(kFig1, kUnits, lvl);
    const auto d = printed_form_diagnostics(wf.dimensionless(), wf.aux(), 2);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(d.radicand_x4_engine[i] - d.radicand_x4_printed[i]) <=
            1e-14 * std::max(1.0, std::abs(d.radicand_x4_printed[i])));
    }
    const Complex root = principal_sqrt(wf.aux().u + wf.aux().v);
    CHECK(std::abs(d.lambda_n_of_printed_tau - (2.0 * root - 6.0)) < 1e-12);
    const Complex u = wf.aux().u;
    CHECK(std::abs(d.lambda_n_printed - (u * root - u * (u + 1.0))) < 1e-12);
    CHECK(d.lambda_n_typo_delta > 0.0);
    CHECK(d.branch_tau_slopes.size() == 4);
    CHECK(d.branch_residuals.size() == 4);
  }
}

TEST_CASE("nu cross-check on the reduced problem") {
  const auto levels = energy_levels(kFig1, kUnits, 0, 1, {.with_ode_residual = false});
  const RadialWavefunction wf(kFig1, kUnits, levels[0]);
  const NUProblem p = reduced_problem(wf.dimensionless());
  CHECK(p.sigma.c[2] == Complex(1.0));
  CHECK(p.tau_bar.c[1] == Complex(2.0));
  CHECK(std::isfinite(quantization_residual(wf.dimensionless(), 0)));
}

TEST_CASE("beta limit sequence") {
  const PotentialParams pt{0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.02, 1.0};
  const std::array<double, 3> seq{1e-1, 1e-2, 1e-3};
  const auto samples = beta_limit_sequence(pt, kUnits, 0, 0, seq);
  REQUIRE(samples.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(samples[i].beta2 == seq[i]);
    if (samples[i].levels) {
      CHECK(std::isfinite((*samples[i].levels)[0].energy.real()));
    } else {
      CHECK_FALSE(samples[i].error.empty());
    }
  }
}
