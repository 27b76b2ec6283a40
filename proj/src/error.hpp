#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hecke {

// Mirrors the status codes of the C API.
enum class Errc {
  invalid_argument = 1,
  hypothesis = 2,
  numeric = 3,
  pole = 4,
  capacity = 5,
  internal = 6,
};

class Failure : public std::runtime_error {
 public:
  Failure(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Failure(code, what); }

// Short numeric formatting for error messages.
inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}
inline std::string num(std::complex<double> z) { return "(" + num(z.real()) + ", " + num(z.imag()) + ")"; }

}  // namespace hecke
