#include "nuhyp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nuhyp/error.hpp"

namespace nuhyp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_integer(std::string_view text, int& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
  std::ostringstream msg;
  msg << "parse error at line " << line << ", column " << column << ": " << what;
  throw Error(Errc::parse, msg.str());
}

[[noreturn]] void invalid(const std::string& field, const std::string& constraint) {
  throw Error(Errc::validation, "validation error: " + field + ": " + constraint);
}

}  // namespace

const char* to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::General: return "general";
    case PotentialKind::RosenMorse: return "rosen-morse";
    case PotentialKind::PoschlTeller: return "poschl-teller";
    case PotentialKind::Scarf: return "scarf";
  }
  return "general";
}

PotentialKind parse_potential_kind(std::string_view text) {
  text = trim(text);
  if (text == "general") return PotentialKind::General;
  if (text == "rosen-morse") return PotentialKind::RosenMorse;
  if (text == "poschl-teller") return PotentialKind::PoschlTeller;
  if (text == "scarf") return PotentialKind::Scarf;
  invalid("potential.kind", "expected general, rosen-morse, poschl-teller or scarf");
}

std::vector<int> parse_int_list(std::string_view text) {
  text = trim(text);
  std::vector<int> out;
  if (text.empty()) return out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    int lo = 0, hi = 0;
    if (!parse_integer(text.substr(0, dots), lo) || !parse_integer(text.substr(dots + 2), hi) || hi < lo) {
      throw Error(Errc::validation, "invalid integer range '" + std::string(text) + "'");
    }
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    int value = 0;
    if (!parse_integer(item, value)) {
      throw Error(Errc::validation, "invalid integer '" + std::string(trim(item)) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    double value = 0.0;
    if (!parse_number(item, value)) {
      throw Error(Errc::validation, "invalid number '" + std::string(trim(item)) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

PotentialParams RunConfig::params() const {
  SpecialCaseShape shape{potential.a, potential.b, potential.c, potential.V0,
                         potential.V1, potential.V2, potential.alpha};
  switch (kind) {
    case PotentialKind::General: return potential;
    case PotentialKind::RosenMorse: return special_case_params(SpecialCase::RosenMorse, shape, rosen_morse);
    case PotentialKind::PoschlTeller: return special_case_params(SpecialCase::PoschlTeller, shape);
    case PotentialKind::Scarf: return special_case_params(SpecialCase::Scarf, shape);
  }
  return potential;
}

RadialGrid RunConfig::grid() const {
  RadialGrid g = RadialGrid::standard(potential.alpha);
  if (r_min) g.r_min = *r_min;
  if (r_max) g.r_max = *r_max;
  if (n_points) g.n_points = *n_points;
  return g;
}

void RunConfig::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"potential.a", potential.a},   {"potential.b", potential.b},   {"potential.c", potential.c},
      {"potential.d", potential.d},   {"potential.V0", potential.V0}, {"potential.V1", potential.V1},
      {"potential.V2", potential.V2}, {"potential.alpha", potential.alpha}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) invalid(name, "must be finite");
  }
  if (!(potential.alpha > 0.0)) invalid("potential.alpha", "must be positive");
  if (!(std::isfinite(constants.hbar) && constants.hbar > 0.0)) invalid("constants.hbar", "must be positive");
  if (!(std::isfinite(constants.mass) && constants.mass > 0.0)) invalid("constants.mass", "must be positive");
  for (int n : n_values)
    if (n < 0) invalid("state.n", "must be non-negative");
  for (int l : l_values)
    if (l < 0) invalid("state.l", "must be non-negative");
  const RadialGrid g = grid();
  if (!(g.r_min > 0.0)) invalid("grid.r_min", "must be positive");
  if (!(g.r_max > g.r_min) || !std::isfinite(g.r_max)) invalid("grid.r_max", "must exceed grid.r_min");
  if (g.n_points < 16) invalid("grid.n_points", "must be at least 16");
  if (!format.empty() && format != "csv" && format != "json") invalid("output.format", "expected csv or json");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  using Setter = std::function<void(std::string_view, const std::string&)>;
  auto real = [](double& slot) -> Setter {
    return [&slot](std::string_view v, const std::string& key) {
      if (!parse_number(v, slot)) invalid(key, "expected a number");
    };
  };
  auto optional_real = [](std::optional<double>& slot) -> Setter {
    return [&slot](std::string_view v, const std::string& key) {
      double x = 0.0;
      if (!parse_number(v, x)) invalid(key, "expected a number");
      slot = x;
    };
  };
  auto int_list = [](std::vector<int>& slot) -> Setter {
    return [&slot](std::string_view v, const std::string& key) {
      try {
        slot = parse_int_list(v);
      } catch (const Error& e) {
        invalid(key, e.what());
      }
    };
  };

  const std::map<std::string, Setter, std::less<>> setters = {
      {"potential.a", real(cfg.potential.a)},
      {"potential.b", real(cfg.potential.b)},
      {"potential.c", real(cfg.potential.c)},
      {"potential.d", real(cfg.potential.d)},
      {"potential.V0", real(cfg.potential.V0)},
      {"potential.V1", real(cfg.potential.V1)},
      {"potential.V2", real(cfg.potential.V2)},
      {"potential.alpha", real(cfg.potential.alpha)},
      {"potential.kind", [&](std::string_view v, const std::string&) { cfg.kind = parse_potential_kind(v); }},
      {"potential.rosen_morse_convention",
       [&](std::string_view v, const std::string& key) {
         if (v == "coefficient") {
           cfg.rosen_morse = RosenMorseConvention::Coefficient;
         } else if (v == "subscript") {
           cfg.rosen_morse = RosenMorseConvention::Subscript;
         } else {
           invalid(key, "expected coefficient or subscript");
         }
       }},
      {"constants.hbar", real(cfg.constants.hbar)},
      {"constants.mass", real(cfg.constants.mass)},
      {"state.n", int_list(cfg.n_values)},
      {"state.l", int_list(cfg.l_values)},
      {"grid.r_min", optional_real(cfg.r_min)},
      {"grid.r_max", optional_real(cfg.r_max)},
      {"grid.n_points",
       [&](std::string_view v, const std::string& key) {
         int x = 0;
         if (!parse_integer(v, x)) invalid(key, "expected an integer");
         cfg.n_points = x;
       }},
      {"output.format", [&](std::string_view v, const std::string&) { cfg.format = std::string(v); }},
      {"output.path", [&](std::string_view v, const std::string&) { cfg.path = std::string(v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;

    const auto eq = line.find('=');
    const std::size_t key_col = line.find_first_not_of(" \t") + 1;
    if (eq == std::string_view::npos) parse_fail(line_no, key_col, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) parse_fail(line_no, key_col, "missing key");
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) parse_fail(line_no, eq + 2, "missing value for '" + key + "'");

    const auto it = setters.find(key);
    if (it == setters.end()) parse_fail(line_no, key_col, "unknown key '" + key + "'");
    if (!seen.insert(key).second) parse_fail(line_no, key_col, "duplicate key '" + key + "'");
    it->second(value, key);
  }

  cfg.validate();
  try {
    cfg.params();
  } catch (const Error& e) {
    invalid("potential", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace nuhyp
