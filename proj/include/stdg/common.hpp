// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stdg {

/// Invalid user input (bad config value, out-of-range argument, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure (singular factorization, non-converged construction, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Least-squares slope of log(y) against log(x); x, y > 0, sizes equal, >= 2.
double fit_loglog_rate(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stdg
