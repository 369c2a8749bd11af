#ifndef NUHYP_ERROR_HPP
#define NUHYP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nuhyp {

enum class Errc {
  domain,
  overflow,
  degenerate_parameter,
  no_solution,
  structural,
  no_physical_branch,
  singular_coefficient,
  non_normalizable,
  resolution,
  sampling,
  convergence,
  precondition,
  pole,
  parse,
  validation,
};

const char* to_string(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying a category.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nuhyp

#endif  // NUHYP_ERROR_HPP
