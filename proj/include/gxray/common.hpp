#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gxray {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double half_pi = 0.5 * std::numbers::pi;

// Kernels that parallelize over grid nodes take an execution policy so the
// serial path can be compared against the OpenMP path in tests.
enum class Exec { serial, parallel };

// Raised for inputs that fail a numerical precondition (non-finite samples,
// empty mode sets, grid mismatches).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid run configuration or mismatched input layout.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reduce to [0, 2pi).
double wrap_two_pi(double angle);

// Reduce to [-pi, pi).
double wrap_pi(double angle);

}  // namespace gxray
