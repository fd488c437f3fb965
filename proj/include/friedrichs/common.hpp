#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace friedrichs {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Violated precondition or contract. The CLI maps this to exit code 2.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested accuracy could not be reached. The CLI maps this to exit code 3.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace friedrichs
