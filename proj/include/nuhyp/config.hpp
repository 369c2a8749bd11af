#ifndef NUHYP_CONFIG_HPP
#define NUHYP_CONFIG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nuhyp/oracle.hpp"
#include "nuhyp/potential.hpp"
#include "nuhyp/types.hpp"

namespace nuhyp {

enum class PotentialKind { General, RosenMorse, PoschlTeller, Scarf };

const char* to_string(PotentialKind kind) noexcept;
/// Accepts general, rosen-morse, poschl-teller, scarf. Throws Errc::validation.
PotentialKind parse_potential_kind(std::string_view text);

/// A validated run description. The potential block holds the knobs as
/// written; params() resolves them through the special-case constructors.
struct RunConfig {
  PotentialParams potential{1.0, 0.01, 2.0, 2.0, 1.0, 0.5, 0.02, 1.0};
  PotentialKind kind = PotentialKind::General;
  RosenMorseConvention rosen_morse = RosenMorseConvention::Coefficient;
  PhysicalConstants constants;
  std::vector<int> n_values{0};
  std::vector<int> l_values{0};
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<int> n_points;
  std::string format;
  std::string path = "-";

  PotentialParams params() const;
  /// Grid block with unset fields taken from RadialGrid::standard(alpha).
  RadialGrid grid() const;
  /// Re-checks every invariant; throws Errc::validation naming the field.
  void validate() const;
};

/// Flat `section.key = value` document; `#` starts a comment. Lists are
/// comma separated or `lo..hi` ranges. Throws Errc::parse with line and
/// column, or Errc::validation naming the field.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

/// "0,1,2" or "0..2".
std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace nuhyp

#endif  // NUHYP_CONFIG_HPP
