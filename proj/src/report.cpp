#include "nuhyp/report.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "nuhyp/error.hpp"
#include "nuhyp/oracle.hpp"
#include "nuhyp/potential.hpp"

namespace nuhyp {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json poly_json(const Poly& p) {
  return json::array({complex_json(p.c[0]), complex_json(p.c[1]), complex_json(p.c[2])});
}

json params_json(const RunConfig& config) {
  const PotentialParams p = config.params();
  return json{{"kind", to_string(config.kind)},
              {"a", p.a},
              {"b", p.b},
              {"c", p.c},
              {"d", p.d},
              {"V0", p.V0},
              {"V1", p.V1},
              {"V2", p.V2},
              {"alpha", p.alpha}};
}

json config_json(const RunConfig& config) {
  const RadialGrid g = config.grid();
  return json{{"potential", params_json(config)},
              {"constants", {{"hbar", config.constants.hbar}, {"mass", config.constants.mass}}},
              {"states", {{"n", config.n_values}, {"l", config.l_values}}},
              {"grid", {{"r_min", g.r_min}, {"r_max", g.r_max}, {"n_points", g.n_points}}}};
}

json level_json(const EnergyLevel& level) {
  json j{{"branch", to_string(level.branch)},
         {"energy", complex_json(level.energy)},
         {"eps2", complex_json(level.eps2)},
         {"residual_quantization", level.residual_quantization},
         {"imag_magnitude", level.imag_magnitude}};
  j["residual_ode"] = level.residual_ode ? json(*level.residual_ode) : json(nullptr);
  return j;
}

// Smaller |Im E| is taken as the physical branch; ties go to plus.
const EnergyLevel& physical_level(const std::array<EnergyLevel, 2>& levels) {
  return levels[1].imag_magnitude < levels[0].imag_magnitude ? levels[1] : levels[0];
}

json physical_json(const std::array<EnergyLevel, 2>& levels) {
  const EnergyLevel& p = physical_level(levels);
  return json{{"branch", to_string(p.branch)}, {"re", p.energy.real()}};
}

json singular_entry(int n, int l, const Error& e) {
  return json{{"n", n}, {"l", l}, {"status", "singular"}, {"singular", e.what()}};
}

json spectrum_json(const NumericSpectrum& s) {
  json levels = json::array();
  for (const OracleLevel& lvl : s.levels) {
    levels.push_back(
        {{"index", lvl.index}, {"energy", lvl.energy}, {"nodes", lvl.nodes}, {"below_edge", lvl.below_edge}});
  }
  return json{{"method", to_string(s.method)},
              {"edge_potential", s.edge_potential},
              {"levels", levels},
              {"note", s.note}};
}

int state_count(const RunConfig& config) {
  int top = 0;
  for (int n : config.n_values) top = std::max(top, n);
  return config.n_values.empty() ? 0 : top + 1;
}

struct OraclePair {
  NumericSpectrum fd;
  NumericSpectrum numerov;
};

OraclePair run_oracles(const RunConfig& config, int l, int n_states) {
  const PotentialParams params = config.params();
  const RadialGrid grid = config.grid();
  const RadialPotential potential = [params](double r) { return eval_potential(params, r); };
  OraclePair out;
  if (n_states == 0) {
    out.fd = fd_spectrum(potential, l, config.constants, grid, 0);
    out.numerov = out.fd;
    out.numerov.method = OracleMethod::Numerov;
    return out;
  }
  const NumericSpectrum wide = fd_spectrum(potential, l, config.constants, grid, n_states + 1);
  out.fd = wide;
  out.fd.levels.resize(static_cast<std::size_t>(n_states));
  out.fd.wavefunctions.resize(static_cast<std::size_t>(n_states));

  double v_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i < grid.n_points; ++i) {
    const double r = grid.r(i);
    v_min = std::min(v_min, eval_potential(params, r) + config.constants.kinetic() * l * (l + 1.0) / (r * r));
  }
  const double top = wide.levels[static_cast<std::size_t>(n_states)].energy;
  const double last = wide.levels[static_cast<std::size_t>(n_states - 1)].energy;
  const double e_lo = v_min - 1e-3 * std::max(1.0, std::abs(v_min));
  const double e_hi = 0.5 * (last + top);
  out.numerov = numerov_spectrum(potential, l, config.constants, grid, {e_lo, e_hi}, n_states);
  return out;
}

double max_rel_delta(const NumericSpectrum& a, const NumericSpectrum& b) {
  double worst = 0.0;
  const std::size_t n = std::min(a.levels.size(), b.levels.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(std::abs(a.levels[i].energy), 1e-300);
    worst = std::max(worst, std::abs(a.levels[i].energy - b.levels[i].energy) / scale);
  }
  return worst;
}

std::string stamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buf + "\n";
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string cmd_potential(const RunConfig& config, const std::vector<double>& alphas) {
  const std::vector<double> sweep = alphas.empty() ? std::vector<double>{config.potential.alpha} : alphas;
  const RadialGrid grid = config.grid();
  std::vector<std::vector<SeriesPoint>> columns;
  std::ostringstream out;
  out << "r";
  for (const double alpha : sweep) {
    RunConfig variant = config;
    variant.potential.alpha = alpha;
    columns.push_back(scan_series(variant.params(), grid.r_min, grid.r_max, grid.n_points));
    char label[40];
    std::snprintf(label, sizeof label, "%g", alpha);
    out << ",V_alpha=" << label;
  }
  out << '\n';
  for (int i = 0; i < grid.n_points; ++i) {
    out << format_number(columns.front()[static_cast<std::size_t>(i)].r);
    for (const auto& col : columns) {
      const auto& pt = col[static_cast<std::size_t>(i)];
      out << ',' << (pt.value ? format_number(*pt.value) : std::string());
    }
    out << '\n';
  }
  return out.str();
}

std::string cmd_effective(const RunConfig& config, const std::vector<int>& ls) {
  const std::vector<int> sweep = ls.empty() ? config.l_values : ls;
  const RadialGrid grid = config.grid();
  const PotentialParams params = config.params();
  std::vector<std::vector<SeriesPoint>> columns;
  std::ostringstream out;
  out << "r";
  for (const int l : sweep) {
    if (l < 0) throw Error(Errc::validation, "validation error: l must be non-negative");
    columns.push_back(scan_series(params, grid.r_min, grid.r_max, grid.n_points, l, config.constants));
    out << ",Veff_l=" << l;
  }
  out << '\n';
  for (int i = 0; i < grid.n_points; ++i) {
    out << format_number(grid.r(i));
    for (const auto& col : columns) {
      const auto& pt = col[static_cast<std::size_t>(i)];
      out << ',' << (pt.value ? format_number(*pt.value) : std::string());
    }
    out << '\n';
  }
  return out.str();
}

json cmd_spectrum(const RunConfig& config) {
  const PotentialParams params = config.params();
  json entries = json::array();
  for (const int n : config.n_values) {
    for (const int l : config.l_values) {
      try {
        const auto levels = energy_levels(params, config.constants, n, l);
        entries.push_back({{"n", n},
                           {"l", l},
                           {"status", "ok"},
                           {"branches", json::array({level_json(levels[0]), level_json(levels[1])})},
                           {"physical", physical_json(levels)}});
      } catch (const Error& e) {
        if (e.code() != Errc::singular_coefficient) throw;
        entries.push_back(singular_entry(n, l, e));
      }
    }
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"command", "spectrum"},
              {"config", config_json(config)},
              {"entries", entries}};
}

json cmd_oracle(const RunConfig& config) {
  const PotentialParams params = config.params();
  const int n_states = state_count(config);
  json per_l = json::array();
  for (const int l : config.l_values) {
    const OraclePair pair = run_oracles(config, l, n_states);
    const OracleReliability rel = assess_reliability(params, config.constants, l);
    per_l.push_back({{"l", l},
                     {"reliability",
                      {{"inverse_square", rel.inverse_square},
                       {"singular_attractive", rel.singular_attractive},
                       {"unreliable", rel.unreliable}}},
                     {"finite_difference", spectrum_json(pair.fd)},
                     {"numerov", spectrum_json(pair.numerov)},
                     {"max_rel_delta", max_rel_delta(pair.fd, pair.numerov)}});
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"command", "oracle"},
              {"config", config_json(config)},
              {"per_l", per_l}};
}

namespace {

json printed_forms_json(const PrintedFormDiagnostics& d) {
  json k_engine = json::array();
  for (const Complex& k : d.k_engine) k_engine.push_back(complex_json(k));
  json slopes = json::array();
  for (const Complex& s : d.branch_tau_slopes) slopes.push_back(complex_json(s));
  double radicand_delta = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    radicand_delta = std::max(radicand_delta, std::abs(d.radicand_x4_engine[i] - d.radicand_x4_printed[i]));
  }
  json j{{"radicand_x4_engine",
          json::array({complex_json(d.radicand_x4_engine[0]), complex_json(d.radicand_x4_engine[1]),
                       complex_json(d.radicand_x4_engine[2])})},
         {"radicand_x4_printed",
          json::array({complex_json(d.radicand_x4_printed[0]), complex_json(d.radicand_x4_printed[1]),
                       complex_json(d.radicand_x4_printed[2])})},
         {"radicand_delta", radicand_delta},
         {"k_engine", k_engine},
         {"k_printed", json::array({complex_json(d.k_printed[0]), complex_json(d.k_printed[1])})},
         {"k_delta", d.k_delta},
         {"tau_engine", poly_json(d.tau_engine)},
         {"tau_printed", poly_json(d.tau_printed)},
         {"pi_printed", poly_json(d.pi_printed)},
         {"tau_delta", d.tau_delta},
         {"lambda_engine", complex_json(d.lambda_engine)},
         {"lambda_printed", complex_json(d.lambda_printed)},
         {"lambda_from_printed_k", complex_json(d.lambda_from_printed_k)},
         {"lambda_n_engine", complex_json(d.lambda_n_engine)},
         {"lambda_n_printed", complex_json(d.lambda_n_printed)},
         {"lambda_n_of_printed_tau", complex_json(d.lambda_n_of_printed_tau)},
         {"residual_engine", d.residual_engine},
         {"residual_printed_lambda", d.residual_printed_lambda},
         {"residual_printed_k", d.residual_printed_k},
         {"lambda_n_typo_delta", d.lambda_n_typo_delta},
         {"branch_tau_slopes", slopes},
         {"branch_residuals", d.branch_residuals}};
  j["engine_error"] = d.engine_error.empty() ? json(nullptr) : json(d.engine_error);
  return j;
}

json nu_check_entries(const RunConfig& config) {
  const PotentialParams params = config.params();
  json out = json::array();
  for (const int n : config.n_values) {
    for (const int l : config.l_values) {
      try {
        const auto levels = energy_levels(params, config.constants, n, l, {.with_ode_residual = false});
        for (const EnergyLevel& lvl : levels) {
          const DimensionlessParams dp = RadialWavefunction(params, config.constants, lvl).dimensionless();
          const AuxQuantities aux = aux_quantities(dp, params, config.constants, n, l);
          json entry = printed_forms_json(printed_form_diagnostics(dp, aux, n));
          entry["n"] = n;
          entry["l"] = l;
          entry["branch"] = to_string(lvl.branch);
          out.push_back(std::move(entry));
        }
      } catch (const Error& e) {
        if (e.code() != Errc::singular_coefficient) throw;
        out.push_back(singular_entry(n, l, e));
      }
    }
  }
  return out;
}

}  // namespace

json cmd_nu_check(const RunConfig& config) {
  return json{{"schema_version", kReportSchemaVersion},
              {"command", "nu-check"},
              {"config", config_json(config)},
              {"entries", nu_check_entries(config)}};
}

json cmd_validate(const RunConfig& config) {
  const PotentialParams params = config.params();
  json errors = json::array();
  json report{{"schema_version", kReportSchemaVersion}, {"command", "validate"}, {"config", config_json(config)}};

  // potential: l-independent
  json samples = json::array();
  for (const double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const double r = x / params.alpha;
    samples.push_back(json::array({r, eval_potential(params, r)}));
  }
  report["potential"] = {{"asymptote", asymptotic_potential(params)},
                         {"inverse_square_coefficient", inverse_square_coefficient(params)},
                         {"samples", samples}};

  // analytic
  json analytic = json::array();
  json beta_limit = json::array();
  std::map<std::pair<int, int>, std::array<EnergyLevel, 2>> solved;
  const std::array<double, 4> beta2_sequence = {1e-1, 1e-2, 1e-3, 1e-4};
  for (const int n : config.n_values) {
    for (const int l : config.l_values) {
      try {
        const auto levels = energy_levels(params, config.constants, n, l);
        solved[{n, l}] = levels;
        const auto trailing =
            energy_levels(params, config.constants, n, l, {.grouping = EpsGrouping::Trailing, .with_ode_residual = false});
        const auto split = energy_levels(params, config.constants, n, l,
                                         {.constant_term = ConstantTermForm::SplitWithVaux, .with_ode_residual = false});
        json branches = json::array();
        for (const EnergyLevel& lvl : levels) {
          json b = level_json(lvl);
          const DimensionlessParams dp = RadialWavefunction(params, config.constants, lvl).dimensionless();
          try {
            b["nu_quantization_residual"] = quantization_residual(dp, n);
          } catch (const Error& e) {
            b["nu_quantization_residual"] = nullptr;
            b["nu_error"] = e.what();
          }
          try {
            RadialWavefunction wf = radial_wavefunction(params, config.constants, lvl);
            b["normalization"] = {{"status", "ok"},
                                  {"norm_constant", complex_json(wf.norm_constant())},
                                  {"raw_integral", *wf.raw_integral()}};
          } catch (const Error& e) {
            b["normalization"] = {{"status", to_string(e.code())}, {"message", e.what()}};
          }
          branches.push_back(std::move(b));
        }
        json grouping = json::array();
        json split_json = json::array();
        for (std::size_t i = 0; i < 2; ++i) {
          grouping.push_back({{"branch", to_string(levels[i].branch)},
                              {"bracket", complex_json(levels[i].energy)},
                              {"trailing", complex_json(trailing[i].energy)}});
          split_json.push_back({{"branch", to_string(split[i].branch)}, {"energy", complex_json(split[i].energy)}});
        }
        analytic.push_back({{"n", n},
                            {"l", l},
                            {"status", "ok"},
                            {"branches", branches},
                            {"physical", physical_json(levels)},
                            {"eps2_grouping", grouping},
                            {"constant_term_split", split_json}});
      } catch (const Error& e) {
        if (e.code() != Errc::singular_coefficient) {
          errors.push_back({{"section", "analytic"}, {"n", n}, {"l", l}, {"error", e.what()}});
          continue;
        }
        analytic.push_back(singular_entry(n, l, e));
        json seq = json::array();
        for (const BetaLimitSample& s : beta_limit_sequence(params, config.constants, n, l, beta2_sequence)) {
          json row{{"beta2", s.beta2}};
          if (s.levels) {
            row["plus"] = complex_json((*s.levels)[0].energy);
            row["minus"] = complex_json((*s.levels)[1].energy);
          } else {
            row["error"] = s.error;
          }
          seq.push_back(std::move(row));
        }
        beta_limit.push_back({{"n", n}, {"l", l}, {"sequence", seq}});
      }
    }
  }
  report["analytic"] = analytic;
  report["beta_limit"] = beta_limit;

  // oracles and comparison
  json oracle = json::array();
  json comparison = json::array();
  const int n_states = state_count(config);
  for (const int l : config.l_values) {
    try {
      const OraclePair pair = run_oracles(config, l, n_states);
      const OracleReliability rel = assess_reliability(params, config.constants, l);
      oracle.push_back({{"l", l},
                        {"reliability",
                         {{"inverse_square", rel.inverse_square},
                          {"singular_attractive", rel.singular_attractive},
                          {"unreliable", rel.unreliable}}},
                        {"finite_difference", spectrum_json(pair.fd)},
                        {"numerov", spectrum_json(pair.numerov)},
                        {"max_rel_delta", max_rel_delta(pair.fd, pair.numerov)}});

      std::vector<EnergyLevel> physical;
      for (const int n : config.n_values) {
        if (auto it = solved.find({n, l}); it != solved.end()) physical.push_back(physical_level(it->second));
      }
      const ComparisonReport cmp = compare_levels(physical, pair.fd);
      json rows = json::array();
      for (const ComparisonRow& row : cmp.rows) {
        rows.push_back({{"n", row.n},
                        {"analytic_re", row.analytic_re},
                        {"analytic_im", row.analytic_im},
                        {"numeric", row.numeric},
                        {"abs_delta", row.abs_delta},
                        {"rel_delta", row.rel_delta}});
      }
      comparison.push_back({{"l", l},
                            {"rows", rows},
                            {"max_abs_delta", cmp.max_abs_delta},
                            {"mean_abs_delta", cmp.mean_abs_delta},
                            {"note", cmp.note}});
    } catch (const Error& e) {
      errors.push_back({{"section", "oracle"}, {"l", l}, {"error", e.what()}});
    }
  }
  report["oracle"] = oracle;
  report["comparison"] = comparison;

  try {
    report["nu_printed_forms"] = nu_check_entries(config);
  } catch (const Error& e) {
    report["nu_printed_forms"] = json::array();
    errors.push_back({{"section", "nu_printed_forms"}, {"error", e.what()}});
  }

  json study = json::array();
  for (const int l : config.l_values) {
    if (l < 1 || n_states == 0) continue;
    try {
      const StudyReport s = approximation_study(params, config.constants, l, config.grid(), n_states);
      json rows = json::array();
      for (const StudyRow& row : s.rows) {
        rows.push_back({{"index", row.index},
                        {"exact", row.exact_energy},
                        {"approx", row.approx_energy},
                        {"rel_shift", row.rel_shift}});
      }
      study.push_back({{"l", l}, {"alpha", s.alpha}, {"rows", rows}, {"max_abs_rel_shift", s.max_abs_rel_shift}});
    } catch (const Error& e) {
      errors.push_back({{"section", "approximation_study"}, {"l", l}, {"error", e.what()}});
    }
  }
  report["approximation_study"] = study;
  report["errors"] = errors;
  return report;
}

std::string cmd_wavefunction(const RunConfig& config, int n, int l, EnergyBranch branch) {
  const PotentialParams params = config.params();
  const auto levels = energy_levels(params, config.constants, n, l, {.with_ode_residual = false});
  const EnergyLevel& level = levels[branch == EnergyBranch::Plus ? 0 : 1];
  const RadialWavefunction wf = radial_wavefunction(params, config.constants, level);
  const double achieved = log_trapezoid_norm(wf, NormalizationWindow::standard(params.alpha));

  const RadialGrid grid = config.grid();
  std::ostringstream out;
  out << "r,Re_R,Im_R,abs_R2\n";
  double emitted = 0.0;
  double prev_r = 0.0, prev_d = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.r(i);
    const Complex R = wf(r);
    const double density = std::norm(R);
    out << format_number(r) << ',' << format_number(R.real()) << ',' << format_number(R.imag()) << ','
        << format_number(density) << '\n';
    if (i > 0) emitted += 0.5 * (r - prev_r) * (density + prev_d);
    prev_r = r;
    prev_d = density;
  }
  out << "# n=" << n << " l=" << l << " branch=" << to_string(branch) << '\n';
  out << "# energy=" << format_number(level.energy.real()) << ',' << format_number(level.energy.imag()) << '\n';
  out << "# norm_constant=" << format_number(wf.norm_constant().real()) << ','
      << format_number(wf.norm_constant().imag()) << '\n';
  out << "# normalization_integral=" << format_number(achieved) << '\n';
  out << "# emitted_trapezoid=" << format_number(emitted) << '\n';
  return out.str();
}

namespace {

bool use_color(const std::ostream& err) {
  return std::getenv("NO_COLOR") == nullptr && &err == &std::cerr && ::isatty(2) != 0;
}

void report_error(std::ostream& err, const std::string& message) {
  if (use_color(err)) {
    err << "\x1b[31merror:\x1b[0m " << message << '\n';
  } else {
    err << "error: " << message << '\n';
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse:
    case Errc::validation:
      return kExitConfig;
    case Errc::singular_coefficient:
    case Errc::non_normalizable:
      return kExitSingular;
    default:
      return kExitInternal;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of the generalized inverted hyperbolic potential", "nuhyp"};
  app.require_subcommand(1);

  std::string config_path, out_path, alpha_text, l_text, n_text, kind_text;
  std::string branch_text = "plus";
  bool stamp = false;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"potential", "potential V(r) columns for an alpha sweep (CSV)"},
      {"effective", "effective potential columns for an l sweep (CSV)"},
      {"spectrum", "analytic complex energy levels (JSON)"},
      {"wavefunction", "analytic radial wavefunction samples (CSV)"},
      {"oracle", "finite-difference and Numerov reference spectra (JSON)"},
      {"validate", "full analytic-versus-oracle report (JSON)"},
      {"nu-check", "NU engine against the printed closed forms (JSON)"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "config file (section.key = value)");
    sub->add_option("--out", out_path, "output path, - for stdout");
    sub->add_option("--alpha", alpha_text, "comma-separated alpha values");
    sub->add_option("--l", l_text, "l values, e.g. 1,2,3 or 0..2");
    sub->add_option("--n", n_text, "n values, e.g. 0..2");
    sub->add_option("--branch", branch_text, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    sub->add_option("--kind", kind_text, "general, rosen-morse, poschl-teller or scarf");
    sub->add_flag("--stamp", stamp, "append a generation timestamp comment to CSV output");
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, e.what());
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    config = config_path.empty() ? parse_config("") : load_config(config_path);
    if (!kind_text.empty()) config.kind = parse_potential_kind(kind_text);
    if (!n_text.empty()) config.n_values = parse_int_list(n_text);
    if (!l_text.empty() && command != "effective") config.l_values = parse_int_list(l_text);
    config.validate();
    config.params();
  } catch (const Error& e) {
    report_error(err, e.what());
    return kExitConfig;
  }

  std::string payload;
  try {
    if (command == "potential") {
      payload = cmd_potential(config, alpha_text.empty() ? std::vector<double>{} : parse_double_list(alpha_text));
    } else if (command == "effective") {
      if (!alpha_text.empty()) config.potential.alpha = parse_double_list(alpha_text).at(0);
      payload = cmd_effective(config, l_text.empty() ? std::vector<int>{} : parse_int_list(l_text));
    } else if (command == "spectrum") {
      payload = cmd_spectrum(config).dump(2) + "\n";
    } else if (command == "oracle") {
      payload = cmd_oracle(config).dump(2) + "\n";
    } else if (command == "validate") {
      payload = cmd_validate(config).dump(2) + "\n";
    } else if (command == "nu-check") {
      payload = cmd_nu_check(config).dump(2) + "\n";
    } else if (command == "wavefunction") {
      if (config.n_values.empty() || config.l_values.empty()) {
        throw Error(Errc::validation, "validation error: wavefunction needs one n and one l");
      }
      const EnergyBranch branch = branch_text == "minus" ? EnergyBranch::Minus : EnergyBranch::Plus;
      payload = cmd_wavefunction(config, config.n_values.front(), config.l_values.front(), branch);
    }
    if (stamp && (command == "potential" || command == "effective" || command == "wavefunction")) {
      payload += stamp_line();
    }
  } catch (const Error& e) {
    const bool singular = e.code() == Errc::singular_coefficient;
    report_error(err, singular ? std::string("singular analytic case: ") + e.what() : std::string(e.what()));
    return exit_code_for(e);
  } catch (const std::exception& e) {
    report_error(err, e.what());
    return kExitInternal;
  }

  const std::string target = !out_path.empty() ? out_path : config.path;
  if (target.empty() || target == "-") {
    out << payload;
  } else {
    std::ofstream file(target, std::ios::binary);
    if (!file) {
      report_error(err, "cannot write '" + target + "'");
      return kExitInternal;
    }
    file << payload;
  }
  return kExitOk;
}

}  // namespace nuhyp
