#include "nuhyp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nuhyp/error.hpp"
#include "nuhyp/potential.hpp"
#include "nuhyp/special_functions.hpp"

namespace nuhyp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sample_effective(const RadialPotential& potential, int l, const PhysicalConstants& consts, double r) {
  double v;
  try {
    v = potential(r);
  } catch (const Error& e) {
    throw Error(Errc::sampling, "potential could not be sampled at r = " + std::to_string(r) + ": " + e.what());
  }
  v += consts.kinetic() * l * (l + 1.0) / (r * r);
  if (!std::isfinite(v)) throw Error(Errc::sampling, "potential not finite at r = " + std::to_string(r));
  return v;
}

void fix_sign(Eigen::VectorXd& u) {
  const double peak = u.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > 1e-6 * peak) {
      if (u[i] < 0.0) u = -u;
      return;
    }
  }
}

void normalize_on_grid(Eigen::VectorXd& u, double h) {
  const double norm2 = trapezoid_norm2(u, h);
  if (norm2 > 0.0) u /= std::sqrt(norm2);
  fix_sign(u);
}

}  // namespace

const char* to_string(OracleMethod method) noexcept {
  return method == OracleMethod::FiniteDifference ? "finite_difference" : "numerov";
}

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw Error(Errc::domain, "grid: need 0 < r_min < r_max");
  }
  if (n_points < 16) throw Error(Errc::domain, "grid: n_points must be at least 16");
}

Eigen::VectorXd RadialGrid::points() const {
  Eigen::VectorXd out(n_points);
  for (int i = 0; i < n_points; ++i) out[i] = r(i);
  return out;
}

int sturm_count(const SymmetricTridiagonal& t, double x) {
  const Eigen::Index m = t.size();
  if (m == 0) return 0;
  const double tiny = kEps * std::max(1.0, t.diag.cwiseAbs().maxCoeff());
  int count = 0;
  double q = t.diag[0] - x;
  for (Eigen::Index i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == m) break;
    q = t.diag[i + 1] - x - t.off[i] * t.off[i] / q;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
  const Eigen::Index m = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < m; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < m) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) * static_cast<double>(m) + kEps;
  return {lo - pad, hi + pad};
}

double bisect_eigenvalue(const SymmetricTridiagonal& t, int k, int max_iterations) {
  if (k < 0 || k >= t.size()) throw Error(Errc::domain, "bisect_eigenvalue: index out of range");
  auto [lo, hi] = gershgorin_bounds(t);
  const double width = hi - lo;
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) || hi - lo <= kEps * width ||
        mid <= lo || mid >= hi) {
      return mid;
    }
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw Error(Errc::convergence, "bisect_eigenvalue: no convergence for eigenvalue " + std::to_string(k));
}

Eigen::VectorXd inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue, int iterations) {
  const Eigen::Index m = t.size();
  const double scale = std::max(1.0, t.diag.cwiseAbs().maxCoeff() + 2.0 * t.off.cwiseAbs().maxCoeff());
  const double tiny = kEps * scale;

  // LU factorization of (T - lambda I) without pivoting, tiny pivots nudged.
  Eigen::VectorXd pivot(m), lower(std::max<Eigen::Index>(m - 1, 0));
  pivot[0] = t.diag[0] - eigenvalue;
  if (std::abs(pivot[0]) < tiny) pivot[0] = tiny;
  for (Eigen::Index i = 1; i < m; ++i) {
    lower[i - 1] = t.off[i - 1] / pivot[i - 1];
    pivot[i] = t.diag[i] - eigenvalue - lower[i - 1] * t.off[i - 1];
    if (std::abs(pivot[i]) < tiny) pivot[i] = tiny;
  }

  Eigen::VectorXd x(m);
  for (Eigen::Index i = 0; i < m; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  x.normalize();
  for (int it = 0; it < iterations; ++it) {
    for (Eigen::Index i = 1; i < m; ++i) x[i] -= lower[i - 1] * x[i - 1];
    x[m - 1] /= pivot[m - 1];
    for (Eigen::Index i = m - 2; i >= 0; --i) x[i] = (x[i] - t.off[i] * x[i + 1]) / pivot[i];
    x.normalize();
  }
  return x;
}

SymmetricTridiagonal fd_hamiltonian(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                                    const RadialGrid& grid) {
  grid.validate();
  const int m = grid.n_points - 2;
  const double h = grid.spacing();
  const double kin = consts.kinetic() / (h * h);
  SymmetricTridiagonal t;
  t.diag.resize(m);
  t.off.setConstant(m - 1, -kin);
  for (int i = 0; i < m; ++i) t.diag[i] = 2.0 * kin + sample_effective(potential, l, consts, grid.r(i + 1));
  return t;
}

int count_nodes(const Eigen::VectorXd& u) {
  if (u.size() == 0) return 0;
  const double floor = 1e-10 * u.cwiseAbs().maxCoeff();
  int nodes = 0;
  int last_sign = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) <= floor) continue;
    const int sign = u[i] > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

double trapezoid_norm2(const Eigen::VectorXd& u, double h) {
  if (u.size() < 2) return 0.0;
  return h * (u.squaredNorm() - 0.5 * (u[0] * u[0] + u[u.size() - 1] * u[u.size() - 1]));
}

NumericSpectrum fd_spectrum(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                            const RadialGrid& grid, int n_states) {
  grid.validate();
  consts.validate();
  if (l < 0) throw Error(Errc::domain, "fd_spectrum: l must be non-negative");
  if (n_states < 0 || n_states >= grid.n_points / 4) {
    throw Error(Errc::precondition, "fd_spectrum: need 0 <= n_states < n_points / 4");
  }
  NumericSpectrum out;
  out.method = OracleMethod::FiniteDifference;
  out.grid = grid;
  out.l = l;
  out.edge_potential = sample_effective(potential, l, consts, grid.r_max);
  if (n_states == 0) return out;

  const SymmetricTridiagonal t = fd_hamiltonian(potential, l, consts, grid);
  const double h = grid.spacing();
  for (int k = 0; k < n_states; ++k) {
    const double e = bisect_eigenvalue(t, k);
    const Eigen::VectorXd interior = inverse_iteration(t, e);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(grid.n_points);
    u.segment(1, interior.size()) = interior;
    normalize_on_grid(u, h);
    out.levels.push_back({k, e, count_nodes(u), e < out.edge_potential});
    out.wavefunctions.push_back(std::move(u));
  }
  return out;
}

namespace {

struct NumerovShot {
  Eigen::VectorXd u;
  int sign_changes = 0;
};

// The weight at r_min is taken as one: the start sits at r_min ~ 0 where the
// regular solution vanishes, which also keeps singular potentials harmless.
Eigen::VectorXd numerov_weights(const Eigen::VectorXd& veff, double energy, double two_m_over_hbar2, double h) {
  Eigen::VectorXd w = (1.0 - h * h / 12.0 * two_m_over_hbar2 * (veff.array() - energy)).matrix();
  w[0] = 1.0;
  return w;
}

void rescale_if_needed(Eigen::VectorXd& u, Eigen::Index upto) {
  constexpr double kBig = 1e150;
  if (std::abs(u[upto]) > kBig) u.head(upto + 1) /= kBig;
}

NumerovShot shoot_outward(const Eigen::VectorXd& veff, const RadialGrid& grid, int l, double energy,
                          double two_m_over_hbar2) {
  const Eigen::Index n = veff.size();
  const double h = grid.spacing();
  const Eigen::VectorXd w = numerov_weights(veff, energy, two_m_over_hbar2, h);
  NumerovShot shot;
  shot.u.resize(n);
  shot.u[0] = std::pow(grid.r(0), l + 1);
  shot.u[1] = std::pow(grid.r(1), l + 1);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    shot.u[i + 1] = ((12.0 - 10.0 * w[i]) * shot.u[i] - w[i - 1] * shot.u[i - 1]) / w[i + 1];
    if (!std::isfinite(shot.u[i + 1])) throw Error(Errc::overflow, "numerov: integration overflow");
    rescale_if_needed(shot.u, i + 1);
  }
  int last = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int sign = shot.u[i] > 0.0 ? 1 : (shot.u[i] < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++shot.sign_changes;
    last = sign;
  }
  return shot;
}

Eigen::VectorXd shoot_inward(const Eigen::VectorXd& veff, const RadialGrid& grid, double energy,
                             double two_m_over_hbar2, Eigen::Index stop) {
  const Eigen::Index n = veff.size();
  const double h = grid.spacing();
  const Eigen::VectorXd w = numerov_weights(veff, energy, two_m_over_hbar2, h);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u[n - 1] = 0.0;
  u[n - 2] = 1e-30;
  constexpr double kBig = 1e150;
  for (Eigen::Index i = n - 2; i > stop; --i) {
    u[i - 1] = ((12.0 - 10.0 * w[i]) * u[i] - w[i + 1] * u[i + 1]) / w[i - 1];
    if (std::abs(u[i - 1]) > kBig) u.segment(i - 1, n - i + 1) /= kBig;
  }
  return u;
}

Eigen::VectorXd sample_veff(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                            const RadialGrid& grid) {
  Eigen::VectorXd veff(grid.n_points);
  // r_min itself only enters through the regular start value.
  veff[0] = 0.0;
  for (int i = 1; i < grid.n_points; ++i) veff[i] = sample_effective(potential, l, consts, grid.r(i));
  return veff;
}

Eigen::VectorXd matched_wavefunction(const Eigen::VectorXd& veff, const RadialGrid& grid, int l, double energy,
                                     double two_m_over_hbar2) {
  const Eigen::Index n = veff.size();
  Eigen::Index match = n / 2;
  for (Eigen::Index i = n - 3; i >= 2; --i) {
    if (veff[i] < energy) {
      match = i;
      break;
    }
  }
  match = std::clamp<Eigen::Index>(match, 2, n - 3);
  Eigen::VectorXd out = shoot_outward(veff, grid, l, energy, two_m_over_hbar2).u;
  const Eigen::VectorXd in = shoot_inward(veff, grid, energy, two_m_over_hbar2, match - 2);
  // avoid matching on a node
  while (match > 2 && (std::abs(in[match]) < 1e-300 ||
                       std::abs(out[match]) < 1e-8 * out.head(match + 1).cwiseAbs().maxCoeff())) {
    --match;
  }
  const double ratio = out[match] / in[match];
  if (std::isfinite(ratio)) {
    for (Eigen::Index i = match + 1; i < n; ++i) out[i] = in[i] * ratio;
  }
  out[n - 1] = 0.0;
  return out;
}

}  // namespace

int numerov_node_count(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                       const RadialGrid& grid, double energy) {
  grid.validate();
  const Eigen::VectorXd veff = sample_veff(potential, l, consts, grid);
  return shoot_outward(veff, grid, l, energy, 1.0 / consts.kinetic()).sign_changes;
}

NumericSpectrum numerov_spectrum(const RadialPotential& potential, int l, const PhysicalConstants& consts,
                                 const RadialGrid& grid, std::pair<double, double> energy_window,
                                 int n_states) {
  grid.validate();
  consts.validate();
  if (l < 0) throw Error(Errc::domain, "numerov_spectrum: l must be non-negative");
  auto [e_lo, e_hi] = energy_window;
  if (!(e_hi > e_lo)) throw Error(Errc::domain, "numerov_spectrum: empty energy window");

  NumericSpectrum out;
  out.method = OracleMethod::Numerov;
  out.grid = grid;
  out.l = l;
  out.edge_potential = sample_effective(potential, l, consts, grid.r_max);

  const double g = 1.0 / consts.kinetic();
  const Eigen::VectorXd veff = sample_veff(potential, l, consts, grid);
  auto count = [&](double e) { return shoot_outward(veff, grid, l, e, g).sign_changes; };

  const int below_lo = count(e_lo);
  const int below_hi = count(e_hi);
  if (below_hi <= below_lo) {
    std::ostringstream note;
    note << "no level in searched window [" << e_lo << ", " << e_hi << "]";
    out.note = note.str();
    return out;
  }

  const double h = grid.spacing();
  for (int k = below_lo; k < below_hi && static_cast<int>(out.levels.size()) < n_states; ++k) {
    double lo = e_lo, hi = e_hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 1e-10 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
      if (count(mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double e = 0.5 * (lo + hi);
    Eigen::VectorXd u = matched_wavefunction(veff, grid, l, e, g);
    normalize_on_grid(u, h);
    out.levels.push_back({k, e, count_nodes(u), e < out.edge_potential});
    out.wavefunctions.push_back(std::move(u));
  }
  return out;
}

ComparisonReport compare_levels(std::span<const EnergyLevel> analytic, const NumericSpectrum& numeric) {
  ComparisonReport report;
  double sum = 0.0;
  for (const EnergyLevel& level : analytic) {
    const auto it = std::find_if(numeric.levels.begin(), numeric.levels.end(),
                                 [&](const OracleLevel& o) { return o.index == level.n; });
    if (it == numeric.levels.end()) continue;
    ComparisonRow row;
    row.n = level.n;
    row.analytic_re = level.energy.real();
    row.analytic_im = level.energy.imag();
    row.numeric = it->energy;
    row.abs_delta = std::abs(row.analytic_re - row.numeric);
    row.rel_delta = row.numeric != 0.0 ? row.abs_delta / std::abs(row.numeric) : row.abs_delta;
    report.max_abs_delta = std::max(report.max_abs_delta, row.abs_delta);
    sum += row.abs_delta;
    report.rows.push_back(row);
  }
  if (!report.rows.empty()) report.mean_abs_delta = sum / static_cast<double>(report.rows.size());
  if (analytic.size() != numeric.levels.size()) {
    std::ostringstream note;
    note << "length mismatch: " << analytic.size() << " analytic vs " << numeric.levels.size() << " numeric";
    report.note = note.str();
  }
  return report;
}

StudyReport approximation_study(const PotentialParams& params, const PhysicalConstants& consts, int l,
                                const RadialGrid& grid, int n_states) {
  if (l < 1) throw Error(Errc::precondition, "approximation_study: requires l >= 1");
  params.validate();
  const RadialPotential bare = [&](double r) { return eval_potential(params, r); };
  const double barrier = consts.kinetic() * l * (l + 1.0) * params.alpha * params.alpha;
  const RadialPotential approx = [&](double r) {
    return eval_potential(params, r) + barrier * hyperbolic_pair(params.alpha * r).cosech2;
  };
  const NumericSpectrum exact = fd_spectrum(bare, l, consts, grid, n_states);
  const NumericSpectrum replaced = fd_spectrum(approx, 0, consts, grid, n_states);

  StudyReport report;
  report.alpha = params.alpha;
  report.l = l;
  for (std::size_t k = 0; k < exact.levels.size(); ++k) {
    StudyRow row;
    row.index = static_cast<int>(k);
    row.exact_energy = exact.levels[k].energy;
    row.approx_energy = replaced.levels[k].energy;
    row.rel_shift = (row.approx_energy - row.exact_energy) / std::abs(row.exact_energy);
    report.max_abs_rel_shift = std::max(report.max_abs_rel_shift, std::abs(row.rel_shift));
    report.rows.push_back(row);
  }
  return report;
}

OracleReliability assess_reliability(const PotentialParams& params, const PhysicalConstants& consts, int l) {
  OracleReliability out;
  out.inverse_square = inverse_square_coefficient(params) + consts.kinetic() * l * (l + 1.0);
  out.singular_attractive = out.inverse_square < 0.0;
  out.unreliable = out.inverse_square < -consts.kinetic() / 4.0;
  return out;
}

}  // namespace nuhyp
