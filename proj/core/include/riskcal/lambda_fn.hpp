#pragma once

#include <cstddef>
#include <vector>

#include "riskcal/ext_real.hpp"

namespace riskcal {

// Non-increasing step function R -> [0,1], not identically zero, given by
// strictly increasing breakpoints x_1 < ... < x_k and plateau values
// v_0 >= v_1 >= ... >= v_k:
//
//   L(x) = v_0 on (-inf, x_1],  v_i on (x_i, x_{i+1}],  v_k on (x_k, +inf).
//
// The plateau that owns a breakpoint is the one on its left, matching the
// two-level form  b*1{x<=z} + a*1{x>z}  used throughout; right limits at the
// breakpoints are exposed separately for the feasibility reduction.
// Increasing step data is rejected outright rather than mirrored.
class LambdaFn {
 public:
  LambdaFn(std::vector<double> breakpoints, std::vector<double> values);

  static LambdaFn constant(double level);
  // b*1{x<=z} + a*1{x>z} with 0 < a < b < 1.
  static LambdaFn two_level(double a, double b, double z);

  double at(double x) const noexcept;           // L(x)
  double right_limit(double x) const noexcept;  // L(x+)

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t plateau_count() const noexcept { return values_.size(); }

  // Left endpoint of plateau i: -inf for i = 0, otherwise breakpoints[i-1].
  ExtReal plateau_left(std::size_t i) const;
  // Right endpoint of plateau i: +inf for the last plateau, else breakpoints[i].
  ExtReal plateau_right(std::size_t i) const;

  // Smallest x beyond which L vanishes; +inf when L never reaches zero.
  ExtReal zero_onset() const noexcept;

 private:
  std::vector<double> breakpoints_;  // size k, strictly increasing
  std::vector<double> values_;       // size k+1, non-increasing, in [0,1], not all zero
};

}  // namespace riskcal
