#ifndef VARCONV_ERROR_HPP
#define VARCONV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace varconv {

enum class errc {
  // measure construction / family
  empty_support,
  negative_mass,
  mass_deviation,
  duplicate_point,
  family_exhausted,
  parameter_out_of_range,
  // sequence norms
  empty_sequence,
  rho_out_of_range,
  too_long,
  block_out_of_range,
  // spectral / dyadic
  range_violation,
  degenerate_factor,
  non_centered_family,
  // harness
  size_mismatch,
  precondition_failed,
  // plumbing
  io_error,
  config_error,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace varconv

#endif
