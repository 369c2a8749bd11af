#ifndef NUHYP_ORACLE_HPP
#define NUHYP_ORACLE_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nuhyp/analytic.hpp"
#include "nuhyp/types.hpp"

namespace nuhyp {

using RadialPotential = std::function<double(double)>;

/// Uniform grid r_i = r_min + i h, i = 0 .. n_points - 1.
struct RadialGrid {
  double r_min = 1e-6;
  double r_max = 40.0;
  int n_points = 2000;

  void validate() const;
  double spacing() const { return (r_max - r_min) / (n_points - 1); }
  double r(int i) const { return i + 1 == n_points ? r_max : r_min + i * spacing(); }
  Eigen::VectorXd points() const;

  /// r in [1e-6, 40 / alpha] with 2000 points.
  static RadialGrid standard(double alpha) { return {1e-6, 40.0 / alpha, 2000}; }
};

/// Real symmetric tridiagonal matrix: diag(0..m-1), off(0..m-2).
struct SymmetricTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
int sturm_count(const SymmetricTridiagonal& t, double x);

std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t);

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const SymmetricTridiagonal& t, int k, int max_iterations = 200);

/// Unit eigenvector for an (accurate) eigenvalue estimate.
Eigen::VectorXd inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue, int iterations = 3);

/// Three-point discretization of -(hbar^2/2m) u'' + [V + hbar^2 l(l+1)/(2m r^2)] u
/// on the grid interior with Dirichlet ends.
SymmetricTridiagonal fd_hamiltonian(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                                    const RadialGrid& grid);

enum class OracleMethod { FiniteDifference, Numerov };
const char* to_string(OracleMethod method) noexcept;

struct OracleLevel {
  int index = 0;
  double energy = 0.0;
  int nodes = 0;
  bool below_edge = false;  ///< energy below the effective potential at r_max
};

struct NumericSpectrum {
  OracleMethod method = OracleMethod::FiniteDifference;
  RadialGrid grid;
  int l = 0;
  double edge_potential = 0.0;
  std::vector<OracleLevel> levels;
  std::vector<Eigen::VectorXd> wavefunctions;  ///< full-grid samples, unit trapezoid norm
  std::string note;
};

/// Interior sign changes, ignoring samples below 1e-10 of the peak magnitude.
int count_nodes(const Eigen::VectorXd& u);

/// Trapezoid-rule integral of u^2 on a uniform grid.
double trapezoid_norm2(const Eigen::VectorXd& u, double h);

NumericSpectrum fd_spectrum(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                            const RadialGrid& grid, int n_states);

/// Outward Numerov shooting from the regular start u ~ r^(l+1); levels located
/// by the node count of the shot and refined by bisection to
/// |dE| <= 1e-10 max(1, |E|).
NumericSpectrum numerov_spectrum(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                                 const RadialGrid& grid, std::pair<double, double> energy_window,
                                 int n_states);

/// Sign changes of the outward Numerov solution at energy E.
int numerov_node_count(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                       const RadialGrid& grid, double energy);

struct ComparisonRow {
  int n = 0;
  double analytic_re = 0.0;
  double analytic_im = 0.0;
  double numeric = 0.0;
  double abs_delta = 0.0;
  double rel_delta = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double max_abs_delta = 0.0;
  double mean_abs_delta = 0.0;
  std::string note;
};

/// Pairs analytic level n with the oracle level of node count n. Reports, never asserts.
ComparisonReport compare_levels(std::span<const EnergyLevel> analytic, const NumericSpectrum& numeric);

struct StudyRow {
  int index = 0;
  double exact_energy = 0.0;
  double approx_energy = 0.0;
  double rel_shift = 0.0;  ///< (approx - exact) / |exact|
};

struct StudyReport {
  double alpha = 0.0;
  int l = 0;
  std::vector<StudyRow> rows;
  double max_abs_rel_shift = 0.0;
};

/// Solves the finite-difference problem with the exact centrifugal barrier and
/// with its alpha^2 cosech^2(alpha r) replacement. Requires l >= 1.
StudyReport approximation_study(const PotentialParams& params, const PhysicalConstants& consts, int l,
                                const RadialGrid& grid, int n_states);

/// Near-origin behaviour of the effective potential, C / r^2.
struct OracleReliability {
  double inverse_square = 0.0;  ///< C, in energy x length^2
  bool singular_attractive = false;
  bool unreliable = false;      ///< C below the fall-to-center bound -hbar^2/(8m)
};

OracleReliability assess_reliability(const PotentialParams& params, const PhysicalConstants& consts, int l);

}  // namespace nuhyp

#endif  // NUHYP_ORACLE_HPP
