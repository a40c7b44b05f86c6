#pragma once

// Independent reference values computed at 50 significant digits.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline big pi() { return boost::math::constants::pi<big>(); }
inline big asinh(const big& x) { return log(x + sqrt(x * x + 1)); }
inline big acosh(const big& x) { return log(x + sqrt(x * x - 1)); }

inline double bavard(int chi) {
  const big gamma = pi() / (6 - 6 * chi);
  return static_cast<double>(acosh(1 / (2 * sin(gamma))));
}

inline double katz_sabourau(int chi) {
  const int n = 6 * (1 - chi);
  return static_cast<double>(1 / (n * tan(pi() / n)));
}

}  // namespace oracle
