#pragma once

#include <stdexcept>
#include <string>

namespace lef {

// Error categories shared with the C API status codes (see include/lef.h).
enum class errc : int {
  ok = 0,
  invalid_argument = 1,
  dimension_mismatch = 2,
  not_positive_definite = 3,
  domain = 4,
  incompatible = 5,
  degenerate = 6,
  divergent_integral = 7,
  io = 8,
  internal = 9,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace lef
