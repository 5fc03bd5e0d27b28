#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fgamp {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Thrown when a numeric guard trips: enumeration limits, singular
/// parameter bands, vanishing pivots/overlaps. CLI maps these to exit 3.
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown on malformed textual/JSON input. CLI maps these to exit 2.
class parse_error : public std::invalid_argument {
 public:
  explicit parse_error(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace fgamp
