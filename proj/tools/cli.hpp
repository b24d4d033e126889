#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gfc/algebra.hpp"

namespace gfc::cli {

/// Malformed pair-spec input; `line` is 1-based, what() is the bare message.
class SpecError : public std::runtime_error {
 public:
  SpecError(int line, const std::string& message)
      : std::runtime_error(message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Builds a pair from pair-spec JSON text. Throws SpecError.
KernelPair parse_pair_spec(const std::string& text);

/// 12 significant digits; lowercase scientific outside [1e-4, 1e6).
std::string format_real(double x);

/// Exit codes: 0 success or pass, 1 failed check or unsupported request,
/// 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gfc::cli
