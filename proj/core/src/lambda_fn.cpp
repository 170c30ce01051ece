#include "riskcal/lambda_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace riskcal {

LambdaFn::LambdaFn(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("LambdaFn: need exactly one more plateau value than breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw std::invalid_argument("LambdaFn: breakpoints must be strictly increasing");
    }
  }
  for (double x : breakpoints_) {
    if (!std::isfinite(x)) throw std::invalid_argument("LambdaFn: breakpoints must be finite");
  }
  bool all_zero = true;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw std::invalid_argument("LambdaFn: plateau value " + std::to_string(v) + " outside [0,1]");
    }
    if (i > 0 && v > values_[i - 1] + 1e-15) {
      throw std::invalid_argument("LambdaFn: plateau values must be non-increasing (increasing step data rejected)");
    }
    if (v > 0.0) all_zero = false;
  }
  if (all_zero) throw std::invalid_argument("LambdaFn: identically zero");
}

LambdaFn LambdaFn::constant(double level) { return LambdaFn({}, {level}); }

LambdaFn LambdaFn::two_level(double a, double b, double z) {
  if (!(0.0 < a && a < b && b < 1.0)) {
    throw std::invalid_argument("LambdaFn::two_level: need 0 < a < b < 1");
  }
  return LambdaFn({z}, {b, a});
}

double LambdaFn::at(double x) const noexcept {
  // Plateau index = number of breakpoints strictly below x, so a breakpoint
  // itself still belongs to the plateau on its left.
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double LambdaFn::right_limit(double x) const noexcept {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

ExtReal LambdaFn::plateau_left(std::size_t i) const {
  if (i >= values_.size()) throw std::out_of_range("LambdaFn::plateau_left");
  return i == 0 ? ExtReal::neg_inf() : ExtReal(breakpoints_[i - 1]);
}

ExtReal LambdaFn::plateau_right(std::size_t i) const {
  if (i >= values_.size()) throw std::out_of_range("LambdaFn::plateau_right");
  return i == breakpoints_.size() ? ExtReal::pos_inf() : ExtReal(breakpoints_[i]);
}

ExtReal LambdaFn::zero_onset() const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0.0) {
      // v_0 = 0 would force the whole function to zero, which the constructor rejects.
      return ExtReal(breakpoints_[i - 1]);
    }
  }
  return ExtReal::pos_inf();
}

}  // namespace riskcal
