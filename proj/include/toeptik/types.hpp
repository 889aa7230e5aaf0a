#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace toeptik {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Raised for inconsistent shapes, lengths, or otherwise malformed inputs.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation signals a singular or numerically unresolvable system.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace toeptik
