#include "nuhyp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuhyp/error.hpp"
#include "nuhyp/special_functions.hpp"

namespace nuhyp {

namespace {

thread_local std::size_t g_jacobi_evaluations = 0;

double reduced_prefactor(const PotentialParams& params, const PhysicalConstants& consts) {
  return 2.0 * consts.mass / (consts.hbar * consts.hbar * params.alpha * params.alpha);
}

double centrifugal_shift(const PotentialParams& params, int l) {
  return params.alpha * params.alpha * l * (l + 1.0);
}

// beta^2, gamma^2 and beta; eps^2 left at zero.
DimensionlessParams energy_free_params(const PotentialParams& params, const PhysicalConstants& consts,
                                       int l) {
  const double pref = reduced_prefactor(params, consts);
  DimensionlessParams dp;
  dp.beta2 = pref * params.a * params.V0;
  dp.gamma2 = pref * (params.c * params.V2 - params.b * params.V1 - centrifugal_shift(params, l));
  dp.beta = principal_sqrt(dp.beta2);
  dp.eps2 = 0.0;
  return dp;
}

double signed_d(const PotentialParams& params, EpsGrouping grouping) {
  return grouping == EpsGrouping::Bracket ? -params.d : params.d;
}

Complex phi_factor(const AuxQuantities& aux, Complex s) {
  const Complex up = 1.0 + kI * s;
  const Complex down = 1.0 - kI * s;
  if (up == Complex(0.0) || down == Complex(0.0)) {
    throw Error(Errc::pole, "wavefunction_parts: pole at s = +/- i");
  }
  return principal_pow(up, (aux.mu + aux.B) / 2.0) * principal_pow(down, (aux.mu - aux.B) / 2.0);
}

}  // namespace

const char* to_string(EnergyBranch branch) noexcept {
  return branch == EnergyBranch::Plus ? "plus" : "minus";
}

DimensionlessParams dimensionless_params(const PotentialParams& params, const PhysicalConstants& consts,
                                         Complex energy, int l, EpsGrouping grouping) {
  DimensionlessParams dp = energy_free_params(params, consts, l);
  const double pref = reduced_prefactor(params, consts);
  dp.eps2 = -pref * (energy + dp.beta2 / 4.0 + params.c * params.V2 - centrifugal_shift(params, l) +
                     signed_d(params, grouping));
  return dp;
}

Complex energy_from_eps2(const PotentialParams& params, const PhysicalConstants& consts, Complex eps2,
                         int l, EpsGrouping grouping) {
  const DimensionlessParams dp = energy_free_params(params, consts, l);
  const double pref = reduced_prefactor(params, consts);
  return -eps2 / pref - dp.beta2 / 4.0 - params.c * params.V2 + centrifugal_shift(params, l) -
         signed_d(params, grouping);
}

AuxQuantities aux_quantities(const DimensionlessParams& dp, const PotentialParams& params,
                             const PhysicalConstants& consts, int n, int l) {
  const double pref = reduced_prefactor(params, consts);
  const double kinetic_alpha = consts.hbar * consts.hbar * params.alpha * params.alpha / (2.0 * consts.mass);
  AuxQuantities aux;
  aux.u = principal_sqrt(dp.eps2 * dp.eps2 + dp.eps2 * dp.beta2 / 2.0) + dp.gamma2;
  aux.v = kI * dp.beta * principal_sqrt(dp.gamma2 + 2.5 * dp.beta2);
  aux.sigma_big = pref * (params.a * params.V0 / 2.0 - params.c * params.V2 + params.b * params.V1 +
                          centrifugal_shift(params, l) + kinetic_alpha * n * (n + 1.0));
  aux.v_aux = kI * pref *
              principal_sqrt(Complex(params.a * params.V0 + params.c * params.V2 - params.b * params.V1 -
                                     centrifugal_shift(params, l)));
  aux.mu = 2.0 - principal_sqrt(aux.u + aux.v);
  aux.nu = principal_sqrt(aux.u - aux.v);
  aux.A = aux.mu + kI * aux.nu;
  aux.B = (aux.nu + dp.beta) / (2.0 * kI);
  return aux;
}

QuantizationCoefficients quantization_coefficients(const PotentialParams& params,
                                                   const PhysicalConstants& consts, int n, int l,
                                                   ConstantTermForm form) {
  if (n < 0 || l < 0) throw Error(Errc::domain, "quantization_coefficients: n and l must be non-negative");
  const DimensionlessParams dp = energy_free_params(params, consts, l);
  if (dp.beta2 == Complex(0.0)) throw Error(Errc::singular_coefficient, "beta=0");
  if (dp.gamma2 == Complex(0.0)) throw Error(Errc::singular_coefficient, "gamma=0");
  const AuxQuantities aux = aux_quantities(dp, params, consts, n, l);
  const Complex v = aux.v;
  if (v == Complex(0.0)) throw Error(Errc::singular_coefficient, "v=0");

  const Complex beta = dp.beta;
  const Complex gamma = principal_sqrt(dp.gamma2);
  const double root2 = std::sqrt(2.0);
  const double n1 = n + 1.0;

  QuantizationCoefficients q;
  q.c2 = n1 / (8.0 * root2 * beta * gamma) + kI * (gamma / (8.0 * root2 * beta) - 1.0 / (2.0 * v));
  q.c1 = -(1.0 + kI * dp.beta2 / 4.0 * (1.0 + 1.0 / v));
  const Complex shared = beta * gamma / (2.0 * root2) * (n1 + kI * dp.gamma2) -
                         kI * dp.gamma2 * dp.gamma2 / 2.0;
  if (form == ConstantTermForm::AsPrinted) {
    q.c0 = -(aux.sigma_big - n1 / 2.0 * principal_sqrt(v + kI * v) + shared);
  } else {
    q.c0 = -(aux.sigma_big - n1 / 2.0 * principal_sqrt(v) + kI * aux.v_aux + shared);
  }
  return q;
}

std::array<EnergyLevel, 2> energy_levels(const PotentialParams& params, const PhysicalConstants& consts,
                                         int n, int l, const EnergyOptions& options) {
  params.validate();
  consts.validate();
  const QuantizationCoefficients q = quantization_coefficients(params, consts, n, l, options.constant_term);
  const QuadraticRoots roots = solve_quadratic(q.c2, q.c1, q.c0);
  if (roots.count != 2) throw Error(Errc::singular_coefficient, "quantization quadratic degenerated to linear");

  std::array<EnergyLevel, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    EnergyLevel& lvl = out[i];
    const Complex z = roots.roots[i];
    lvl.n = n;
    lvl.l = l;
    lvl.branch = i == 0 ? EnergyBranch::Plus : EnergyBranch::Minus;
    lvl.eps2 = z;
    lvl.energy = energy_from_eps2(params, consts, z, l, options.grouping);
    const double scale = std::max({std::abs(q.c2 * z * z), std::abs(q.c1 * z), std::abs(q.c0), 1.0});
    lvl.residual_quantization = roots.residuals[i] / scale;
    lvl.imag_magnitude = std::abs(lvl.energy.imag());
    if (options.with_ode_residual) {
      try {
        const RadialWavefunction wf(params, consts, lvl);
        const std::vector<double> samples = default_residual_samples(params.alpha);
        lvl.residual_ode = ode_residual(wf, params, consts, lvl.energy, l, samples, 1e-4 / params.alpha);
      } catch (const Error&) {
        lvl.residual_ode.reset();
      }
    }
  }
  return out;
}

NUProblem reduced_problem(const DimensionlessParams& dp) {
  NUProblem p;
  p.sigma = Poly{{1.0, 0.0, 1.0}};
  p.tau_bar = Poly{{dp.beta, 2.0, 0.0}};
  p.sigma_bar = Poly{{-dp.eps2, dp.beta2, dp.gamma2}};
  return p;
}

double quantization_residual(const DimensionlessParams& dp, int n) {
  const NUProblem problem = reduced_problem(dp);
  return quantization_residual(problem, pi_tau_select(problem).selected, n);
}

WavefunctionParts wavefunction_parts(const AuxQuantities& aux, Complex s) {
  const Complex up = 1.0 + kI * s;
  const Complex down = 1.0 - kI * s;
  if (up == Complex(0.0) || down == Complex(0.0)) {
    throw Error(Errc::pole, "wavefunction_parts: pole at s = +/- i");
  }
  const Complex one_plus_s2 = 1.0 + s * s;
  WavefunctionParts parts;
  parts.rho = principal_pow(up / down, aux.mu + kI * aux.nu) / (one_plus_s2 * one_plus_s2);
  parts.phi = phi_factor(aux, s);
  return parts;
}

std::size_t jacobi_evaluation_count() noexcept { return g_jacobi_evaluations; }

RadialWavefunction::RadialWavefunction(const PotentialParams& params, const PhysicalConstants& consts,
                                       const EnergyLevel& level)
    : params_(params), consts_(consts), level_(level) {
  params_.validate();
  consts_.validate();
  dp_ = energy_free_params(params_, consts_, level_.l);
  dp_.eps2 = level_.eps2;
  aux_ = aux_quantities(dp_, params_, consts_, level_.n, level_.l);
}

Complex RadialWavefunction::reduced(double r) const {
  if (!(r > 0.0)) throw Error(Errc::domain, "radial wavefunction: r must be positive");
  const double s = hyperbolic_pair(params_.alpha * r).coth;
  Complex value = norm_ * phi_factor(aux_, s);
  if (level_.n > 0) {
    ++g_jacobi_evaluations;
    value *= jacobi(level_.n, 2.0 + aux_.A, 2.0 - aux_.A, kI * s);
  }
  return value;
}

Complex RadialWavefunction::operator()(double r) const {
  return reduced(r) * std::exp(-dp_.beta * r / 2.0);
}

double log_trapezoid_norm(const std::function<Complex(double)>& f, const NormalizationWindow& window) {
  if (!(window.r_lo > 0.0) || !(window.r_hi > window.r_lo)) {
    throw Error(Errc::domain, "normalization window must satisfy 0 < r_lo < r_hi");
  }
  const double t0 = std::log(window.r_lo);
  const double t1 = std::log(window.r_hi);
  auto g = [&](double t) {
    const double r = std::exp(t);
    const double v = std::norm(f(r)) * r;
    if (!std::isfinite(v)) throw Error(Errc::non_normalizable, "integrand not finite at r = " + std::to_string(r));
    return v;
  };

  long intervals = 128;
  double h = (t1 - t0) / intervals;
  double sum = 0.5 * (g(t0) + g(t1));
  for (long i = 1; i < intervals; ++i) sum += g(t0 + i * h);
  double estimate = sum * h;
  constexpr long kMaxIntervals = 1L << 21;
  while (intervals < kMaxIntervals) {
    for (long i = 0; i < intervals; ++i) sum += g(t0 + (i + 0.5) * h);
    intervals *= 2;
    h /= 2.0;
    const double refined = sum * h;
    const bool converged = std::abs(refined - estimate) <= window.rel_tol * std::abs(refined);
    estimate = refined;
    if (converged) return estimate;
  }
  throw Error(Errc::convergence, "log_trapezoid_norm: no convergence");
}

void RadialWavefunction::normalize(const NormalizationWindow& window) {
  RadialWavefunction raw = *this;
  raw.norm_ = 1.0;
  auto density = [&](double r) { return std::norm(raw(r)); };

  // Origin end: local power law |R|^2 ~ r^p must have p > -1.
  const double lo = window.r_lo;
  const double f_lo = density(lo);
  const double f_lo2 = density(2.0 * lo);
  double origin_tail = 0.0;
  if (f_lo > 0.0 && f_lo2 > 0.0) {
    const double p = std::log(f_lo2 / f_lo) / std::log(2.0);
    if (!(p > -1.0)) {
      throw Error(Errc::non_normalizable, "radial wavefunction not normalizable: |R|^2 ~ r^" +
                                              std::to_string(p) + " diverges at r -> 0");
    }
    origin_tail = lo * f_lo / (p + 1.0);
  } else if (!std::isfinite(f_lo)) {
    throw Error(Errc::non_normalizable, "radial wavefunction not normalizable: |R|^2 not finite at r -> 0");
  }

  // Far end: must decay.
  const double hi = window.r_hi;
  const double step = 1.0 / params_.alpha;
  const double f_hi = density(hi);
  const double f_hi1 = density(hi - step);
  double far_tail = 0.0;
  if (f_hi > 0.0) {
    const double kappa = f_hi1 > 0.0 ? std::log(f_hi1 / f_hi) / step : 0.0;
    if (!(kappa > 0.0)) {
      throw Error(Errc::non_normalizable, "radial wavefunction not normalizable: |R|^2 does not decay as r -> infinity");
    }
    far_tail = f_hi / kappa;
  }

  const double integral = log_trapezoid_norm([&](double r) { return raw(r); }, window);
  if (!(integral > 0.0)) throw Error(Errc::non_normalizable, "radial wavefunction vanishes on the window");
  if (origin_tail > 1e-6 * integral) {
    throw Error(Errc::non_normalizable, "radial wavefunction not normalizable within window: weight beyond r -> 0 end");
  }
  if (far_tail > 1e-6 * integral) {
    throw Error(Errc::non_normalizable, "radial wavefunction not normalizable within window: weight beyond r -> infinity end");
  }
  raw_integral_ = integral;
  norm_ = 1.0 / std::sqrt(integral);
}

RadialWavefunction radial_wavefunction(const PotentialParams& params, const PhysicalConstants& consts,
                                       const EnergyLevel& level) {
  RadialWavefunction wf(params, consts, level);
  wf.normalize(NormalizationWindow::standard(params.alpha));
  return wf;
}

double ode_residual(const std::function<Complex(double)>& F, Complex beta,
                    const std::function<Complex(double)>& q, std::span<const double> samples,
                    double step, double tolerance) {
  if (!(step > 0.0)) throw Error(Errc::domain, "ode_residual: step must be positive");
  double worst = 0.0;
  for (const double r : samples) {
    if (!(r - 2.0 * step > 0.0)) throw Error(Errc::domain, "ode_residual: sample too close to origin");
    const Complex f0 = F(r);
    const Complex fp = F(r + step), fm = F(r - step);
    const Complex fp2 = F(r + 2.0 * step), fm2 = F(r - 2.0 * step);
    const Complex d1 = (fp - fm) / (2.0 * step);
    const Complex d2 = (fp - 2.0 * f0 + fm) / (step * step);
    const Complex d2_wide = (fp2 - 2.0 * f0 + fm2) / (4.0 * step * step);
    const Complex qf = q(r) * f0;
    const double scale = std::max({std::abs(d2), std::abs(beta * d1), std::abs(qf)});
    if (scale == 0.0) continue;
    const double truncation = std::abs(d2_wide - d2) / 3.0;
    if (truncation > tolerance * scale) {
      throw Error(Errc::resolution, "ode_residual: step too coarse at r = " + std::to_string(r));
    }
    worst = std::max(worst, std::abs(d2 - beta * d1 + qf) / scale);
  }
  return worst;
}

double ode_residual(const RadialWavefunction& wf, const PotentialParams& params,
                    const PhysicalConstants& consts, Complex energy, int l,
                    std::span<const double> samples, double step, double tolerance) {
  const double pref = 2.0 * consts.mass / (consts.hbar * consts.hbar);
  const Complex beta2 = wf.dimensionless().beta2;
  auto q = [&](double r) -> Complex {
    const auto [coth, cosech2] = hyperbolic_pair(params.alpha * r);
    return pref * (energy + params.a * params.V0 * coth - params.b * params.V1 * coth * coth +
                   params.c * params.V2 * cosech2 - centrifugal_shift(params, l) * cosech2 - params.d +
                   beta2 / 4.0);
  };
  return ode_residual([&](double r) { return wf.reduced(r); }, wf.dimensionless().beta, q, samples, step,
                      tolerance);
}

std::vector<double> default_residual_samples(double alpha) {
  std::vector<double> out(32);
  const double t0 = std::log(0.05 / alpha), t1 = std::log(10.0 / alpha);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(out.size() - 1));
  }
  return out;
}

PrintedFormDiagnostics printed_form_diagnostics(const DimensionlessParams& dp, const AuxQuantities& aux,
                                                int n) {
  const NUProblem problem = reduced_problem(dp);
  PrintedFormDiagnostics d;

  const Poly rad = radicand_coeffs(problem, 0.0);
  for (std::size_t i = 0; i < 3; ++i) d.radicand_x4_engine[i] = 4.0 * rad.c[i];
  d.radicand_x4_printed = {dp.beta2 + 4.0 * dp.eps2, -4.0 * dp.beta2, -4.0 * dp.gamma2};

  const Complex base = dp.gamma2 - dp.eps2 - dp.beta2 / 4.0;
  const Complex root_uv = principal_sqrt(aux.u * aux.u - aux.v * aux.v);
  const Complex sqrt_upv = principal_sqrt(aux.u + aux.v);
  const Complex sqrt_umv = principal_sqrt(aux.u - aux.v);
  d.k_printed = {base + root_uv, base - root_uv};
  d.tau_printed = Poly{{sqrt_umv, 2.0 - sqrt_upv, 0.0}};
  d.pi_printed = Poly{{-dp.beta / 2.0 + sqrt_umv / 2.0, -sqrt_upv / 2.0, 0.0}};
  d.lambda_printed = base - root_uv - sqrt_upv / 2.0;
  d.lambda_from_printed_k = d.k_printed[0] + d.pi_printed.c[1];
  d.lambda_n_printed = aux.u * sqrt_upv - aux.u * (aux.u + 1.0);
  d.lambda_n_of_printed_tau = lambda_n_of(problem, d.tau_printed, n);
  d.residual_printed_lambda = std::abs(d.lambda_printed - d.lambda_n_of_printed_tau);
  d.residual_printed_k = std::abs(d.lambda_from_printed_k - d.lambda_n_of_printed_tau);
  d.lambda_n_typo_delta = std::abs(d.lambda_n_printed - d.lambda_n_of_printed_tau);

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  d.k_engine = k_candidates(problem);
  d.k_delta = 0.0;
  for (const Complex& kp : d.k_printed) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& ke : d.k_engine) best = std::min(best, std::abs(kp - ke));
    d.k_delta = std::max(d.k_delta, best);
  }
  for (const NUSolution& branch : enumerate_branches(problem)) {
    d.branch_tau_slopes.push_back(branch.tau_slope());
    d.branch_residuals.push_back(quantization_residual(problem, branch, n));
  }
  try {
    const NUSolution sol = pi_tau_select(problem).selected;
    d.tau_engine = sol.tau;
    d.lambda_engine = sol.lambda;
    d.lambda_n_engine = lambda_n_of(problem, sol.tau, n);
    d.residual_engine = quantization_residual(problem, sol, n);
    d.tau_delta = 0.0;
    for (std::size_t i = 0; i < 3; ++i) d.tau_delta = std::max(d.tau_delta, std::abs(sol.tau.c[i] - d.tau_printed.c[i]));
  } catch (const Error& e) {
    d.engine_error = e.what();
    d.tau_engine = Poly{{nan, nan, nan}};
    d.lambda_engine = d.lambda_n_engine = Complex(nan, nan);
    d.residual_engine = d.tau_delta = nan;
  }
  return d;
}

std::vector<BetaLimitSample> beta_limit_sequence(const PotentialParams& params,
                                                 const PhysicalConstants& consts, int n, int l,
                                                 std::span<const double> beta2_values) {
  std::vector<BetaLimitSample> out;
  const double pref = reduced_prefactor(params, consts);
  for (const double target : beta2_values) {
    BetaLimitSample sample;
    sample.beta2 = target;
    PotentialParams p = params;
    if (p.V0 == 0.0) p.V0 = 1.0;
    p.a = target / (pref * p.V0);
    try {
      sample.levels = energy_levels(p, consts, n, l);
    } catch (const Error& e) {
      sample.error = e.what();
    }
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace nuhyp
