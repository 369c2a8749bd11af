#ifndef NUHYP_ANALYTIC_HPP
#define NUHYP_ANALYTIC_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nuhyp/nu_engine.hpp"
#include "nuhyp/types.hpp"

namespace nuhyp {

/// Dimensionless constants of the reduced equation in s = coth(alpha r).
/// beta is the principal root of beta2 and doubles as the decay rate of the
/// exp(-beta r / 2) ansatz.
struct DimensionlessParams {
  Complex eps2;
  Complex beta2;
  Complex gamma2;
  Complex beta;
};

/// Where the constant d enters the energy/eps^2 map.
///  Bracket:   eps^2 = -(2m/hbar^2 alpha^2) [E + beta^2/4 + c V2 - alpha^2 l(l+1) - d]
///  Trailing:  eps^2 = -(2m/hbar^2 alpha^2) [E + beta^2/4 + c V2 - alpha^2 l(l+1) + d]
enum class EpsGrouping { Bracket, Trailing };

DimensionlessParams dimensionless_params(const PotentialParams& params, const PhysicalConstants& consts,
                                         Complex energy, int l,
                                         EpsGrouping grouping = EpsGrouping::Bracket);

/// Inverse of the eps^2 map.
Complex energy_from_eps2(const PotentialParams& params, const PhysicalConstants& consts, Complex eps2,
                         int l, EpsGrouping grouping = EpsGrouping::Bracket);

struct AuxQuantities {
  Complex u;          ///< sqrt(eps^4 + eps^2 beta^2 / 2) + gamma^2
  Complex v;          ///< i beta sqrt(gamma^2 + 5 beta^2 / 2)
  Complex sigma_big;  ///< (2m/hbar^2 alpha^2)[a V0/2 - c V2 + b V1 + alpha^2 l(l+1) + hbar^2 alpha^2 n(n+1)/2m]
  Complex v_aux;      ///< i (2m/hbar^2 alpha^2) sqrt(a V0 + c V2 - b V1 - alpha^2 l(l+1))
  Complex mu;         ///< 2 - sqrt(u + v)
  Complex nu;         ///< sqrt(u - v)
  Complex A;          ///< mu + i nu
  Complex B;          ///< (nu + beta) / 2i
};

AuxQuantities aux_quantities(const DimensionlessParams& dp, const PotentialParams& params,
                             const PhysicalConstants& consts, int n, int l);

/// Which form of the constant coefficient of the eps^2 quadratic is used.
///  AsPrinted:     -[Sigma - (n+1)/2 sqrt(v + i v) + ...]
///  SplitWithVaux: -[Sigma - (n+1)/2 sqrt(v) + i Vaux + ...]
enum class ConstantTermForm { AsPrinted, SplitWithVaux };

struct QuantizationCoefficients {
  Complex c2;
  Complex c1;
  Complex c0;
};

/// Coefficients of C2 z^2 + C1 z + C0 = 0 with z = eps^2. Throws
/// Errc::singular_coefficient naming beta, gamma or v when one vanishes.
QuantizationCoefficients quantization_coefficients(const PotentialParams& params,
                                                   const PhysicalConstants& consts, int n, int l,
                                                   ConstantTermForm form = ConstantTermForm::AsPrinted);

enum class EnergyBranch { Plus, Minus };
const char* to_string(EnergyBranch branch) noexcept;

struct EnergyLevel {
  int n = 0;
  int l = 0;
  EnergyBranch branch = EnergyBranch::Plus;
  Complex energy;
  Complex eps2;
  double residual_quantization = 0.0;  ///< scaled |C2 z^2 + C1 z + C0|
  std::optional<double> residual_ode;
  double imag_magnitude = 0.0;
};

struct EnergyOptions {
  EpsGrouping grouping = EpsGrouping::Bracket;
  ConstantTermForm constant_term = ConstantTermForm::AsPrinted;
  bool with_ode_residual = true;
};

/// Both roots of the quantization quadratic mapped back to energies;
/// element 0 is the Plus branch.
std::array<EnergyLevel, 2> energy_levels(const PotentialParams& params, const PhysicalConstants& consts,
                                         int n, int l, const EnergyOptions& options = {});

/// Polynomial triple of the reduced equation:
/// sigma = 1 + s^2, tau_bar = beta + 2 s, sigma_bar = -eps^2 + beta^2 s + gamma^2 s^2.
NUProblem reduced_problem(const DimensionlessParams& dp);

/// |lambda - lambda_n| of the NU engine's own branch for the reduced problem.
double quantization_residual(const DimensionlessParams& dp, int n);

struct WavefunctionParts {
  Complex rho;
  Complex phi;
};

/// rho(s) = (1+s^2)^-2 ((1+is)/(1-is))^(mu + i nu),
/// phi(s) = (1+is)^((mu+B)/2) (1-is)^((mu-B)/2).
WavefunctionParts wavefunction_parts(const AuxQuantities& aux, Complex s);

/// Number of Jacobi evaluations made by wavefunctions on this thread.
std::size_t jacobi_evaluation_count() noexcept;

struct NormalizationWindow {
  double r_lo;
  double r_hi;
  double rel_tol = 1e-8;

  static NormalizationWindow standard(double alpha) { return {1e-6 / alpha, 40.0 / alpha}; }
};

/// R(r) = N (1 + i coth)^((mu+B)/2) (1 - i coth)^((mu-B)/2) P_n^(2+A, 2-A)(i coth) exp(-beta r / 2)
/// with coth = coth(alpha r).
class RadialWavefunction {
 public:
  RadialWavefunction(const PotentialParams& params, const PhysicalConstants& consts,
                     const EnergyLevel& level);

  int n() const { return level_.n; }
  int l() const { return level_.l; }
  const EnergyLevel& level() const { return level_; }
  const AuxQuantities& aux() const { return aux_; }
  const DimensionlessParams& dimensionless() const { return dp_; }
  Complex norm_constant() const { return norm_; }
  /// Integral of |R|^2 reached by the last normalize() call (before rescaling).
  std::optional<double> raw_integral() const { return raw_integral_; }

  /// F(r) = R(r) exp(+beta r / 2), the solution of the reduced equation.
  Complex reduced(double r) const;
  Complex operator()(double r) const;
  /// Psi = R / r.
  Complex psi(double r) const { return (*this)(r) / r; }

  /// Fixes N so that the integral of |R|^2 dr over the window is one. Throws
  /// Errc::non_normalizable naming the divergent end.
  void normalize(const NormalizationWindow& window);

 private:
  PotentialParams params_;
  PhysicalConstants consts_;
  EnergyLevel level_;
  DimensionlessParams dp_;
  AuxQuantities aux_;
  Complex norm_{1.0};
  std::optional<double> raw_integral_;
};

/// Builds and normalizes over NormalizationWindow::standard(alpha).
RadialWavefunction radial_wavefunction(const PotentialParams& params, const PhysicalConstants& consts,
                                       const EnergyLevel& level);

/// Integral of |f|^2 over the window, trapezoid in log r with doubling until
/// successive estimates agree to rel_tol.
double log_trapezoid_norm(const std::function<Complex(double)>& f, const NormalizationWindow& window);

/// max over samples of |F'' - beta F' + q F| / max(|F''|, |beta F'|, |q F|),
/// derivatives by central differences of step h. Throws Errc::resolution when
/// the estimated truncation error exceeds the tolerance.
double ode_residual(const std::function<Complex(double)>& F, Complex beta,
                    const std::function<Complex(double)>& q, std::span<const double> samples,
                    double step, double tolerance = 1e-3);

/// The working-ODE residual of a closed-form wavefunction at energy E.
double ode_residual(const RadialWavefunction& wf, const PotentialParams& params,
                    const PhysicalConstants& consts, Complex energy, int l,
                    std::span<const double> samples, double step, double tolerance = 1e-3);

/// Default diagnostic sample set: 32 log-spaced points on [0.05, 10] / alpha.
std::vector<double> default_residual_samples(double alpha);

/// Mechanical NU results against the printed closed forms of the reduced problem.
struct PrintedFormDiagnostics {
  std::array<Complex, 3> radicand_x4_engine;   ///< 4 x radicand at k = 0, (s^0, s^1, s^2)
  std::array<Complex, 3> radicand_x4_printed;  ///< (beta^2 + 4 eps^2, -4 beta^2, -4 gamma^2) at k = 0
  std::vector<Complex> k_engine;
  std::array<Complex, 2> k_printed;            ///< gamma^2 - eps^2 - beta^2/4 +/- sqrt(u^2 - v^2)
  double k_delta = 0.0;                        ///< worst distance from a printed k to the nearest engine k
  Poly tau_engine;
  Poly tau_printed;                            ///< 2s - sqrt(u+v) s + sqrt(u-v)
  Poly pi_printed;                             ///< -beta/2 - (sqrt(u+v) s - sqrt(u-v)) / 2
  double tau_delta = 0.0;
  Complex lambda_engine;
  Complex lambda_printed;                      ///< with -sqrt(u^2 - v^2)
  Complex lambda_from_printed_k;               ///< printed k (+ root) plus printed pi'
  Complex lambda_n_engine;
  Complex lambda_n_printed;                    ///< u sqrt(u+v) - u(u+1)
  Complex lambda_n_of_printed_tau;             ///< n sqrt(u+v) - n(n+1)
  double residual_engine = 0.0;                ///< |lambda - lambda_n| with engine values
  double residual_printed_lambda = 0.0;        ///< |lambda_printed - lambda_n_of_printed_tau|
  double residual_printed_k = 0.0;             ///< |lambda_from_printed_k - lambda_n_of_printed_tau|
  double lambda_n_typo_delta = 0.0;            ///< |lambda_n_printed - lambda_n_of_printed_tau|
  std::string engine_error;                    ///< set when no branch has Re(tau') < 0
  std::vector<Complex> branch_tau_slopes;      ///< tau' of every enumerated branch
  std::vector<double> branch_residuals;        ///< |lambda - lambda_n| of every enumerated branch
};

PrintedFormDiagnostics printed_form_diagnostics(const DimensionlessParams& dp, const AuxQuantities& aux,
                                                int n);

/// Energies along a sequence beta^2 -> 0+ obtained by switching on a small
/// a V0; used to inspect the special cases where beta vanishes.
struct BetaLimitSample {
  double beta2 = 0.0;
  std::optional<std::array<EnergyLevel, 2>> levels;
  std::string error;
};

std::vector<BetaLimitSample> beta_limit_sequence(const PotentialParams& params,
                                                 const PhysicalConstants& consts, int n, int l,
                                                 std::span<const double> beta2_values);

}  // namespace nuhyp

#endif  // NUHYP_ANALYTIC_HPP
