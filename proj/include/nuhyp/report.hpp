#ifndef NUHYP_REPORT_HPP
#define NUHYP_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "nuhyp/analytic.hpp"
#include "nuhyp/config.hpp"

namespace nuhyp {

inline constexpr int kReportSchemaVersion = 1;

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitInternal = 3,
  kExitSingular = 4,
};

/// "%.9g"; empty for a missing value.
std::string format_number(double value);

/// r column plus one potential column per alpha, header `r,V_alpha=...`.
std::string cmd_potential(const RunConfig& config, const std::vector<double>& alphas);

/// r column plus one effective-potential column per l, header `r,Veff_l=...`.
std::string cmd_effective(const RunConfig& config, const std::vector<int>& ls);

nlohmann::json cmd_spectrum(const RunConfig& config);

nlohmann::json cmd_oracle(const RunConfig& config);

nlohmann::json cmd_validate(const RunConfig& config);

nlohmann::json cmd_nu_check(const RunConfig& config);

/// Columns r, Re(R), Im(R), |R|^2 on the config grid, then `#` metadata.
/// Throws Errc::singular_coefficient or Errc::non_normalizable for analytic
/// cases without a usable wavefunction.
std::string cmd_wavefunction(const RunConfig& config, int n, int l, EnergyBranch branch);

/// Entry point shared by the executable and the tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nuhyp

#endif  // NUHYP_REPORT_HPP
