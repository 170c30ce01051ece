#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "riskcal/finite_space.hpp"

namespace riskcal {

// Probability weights over a fixed outcome count. Unlike FiniteSpace, zeros
// are allowed: these vectors serve as alternative measures, ambiguity-set
// members, and simplex grid points.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> w);

  static ProbabilityVector dirac(std::size_t i, std::size_t n);
  static ProbabilityVector from_space(const FiniteSpace& s);

  std::size_t size() const noexcept { return w_.size(); }
  double weight(std::size_t i) const { return w_.at(i); }
  const std::vector<double>& weights() const noexcept { return w_; }

  double expect(const Rv& x) const;
  bool is_dirac(double tol = 1e-12) const noexcept;

 private:
  std::vector<double> w_;
};

// Indemnity-style payoff transform: increasing, 1-Lipschitz, vanishing at and
// below zero. Validity is checked pointwise on a declared support rather than
// symbolically.
class PayoffFn {
 public:
  static PayoffFn positive_part();
  static PayoffFn deductible_limit(double d, double l);  // min((x-d)+, l)
  static PayoffFn piecewise_linear(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  const std::string& label() const noexcept { return label_; }

  // Checks increasing / 1-Lipschitz / zero-below-zero on the given points
  // (plus 0 and any internal knots); throws std::invalid_argument on failure.
  void validate_on(const std::vector<double>& support) const;

 private:
  enum class Kind { positive_part, deductible_limit, piecewise };
  Kind kind_ = Kind::positive_part;
  double d_ = 0.0, l_ = 0.0;
  std::vector<double> xs_, ys_;
  std::string label_;
};

// Strictly increasing transform with an evaluable inverse, used for
// certainty equivalents. The convexity flag is a declared claim checked by
// spot tests where required.
class UtilityFn {
 public:
  static UtilityFn identity();
  static UtilityFn exponential(double gamma);          // exp(gamma x), gamma > 0
  static UtilityFn power(double p);                    // x^p on x >= 0, p >= 1
  static UtilityFn piecewise_linear(std::vector<double> xs, std::vector<double> ys);

  double value(double x) const;    // throws std::domain_error outside the domain
  double inverse(double y) const;  // throws std::domain_error outside the range
  bool convex() const noexcept { return convex_; }
  const std::string& label() const noexcept { return label_; }

 private:
  enum class Kind { identity, exponential, power, piecewise };
  Kind kind_ = Kind::identity;
  double gamma_ = 1.0, p_ = 1.0;
  std::vector<double> xs_, ys_;
  bool convex_ = true;
  std::string label_;
};

// Probability distortion on [0,1]: T(0)=0, T(1)=1, non-decreasing. Closed
// forms or a dense grid with linear interpolation; shape flags are declared
// claims used as preconditions.
class DistortionFn {
 public:
  enum class Shape { none, convex, concave, affine };  // affine = both convex and concave

  static DistortionFn identity();
  static DistortionFn power(double theta);       // u^theta, convex for theta >= 1
  static DistortionFn dual_power(double theta);  // 1-(1-u)^theta, concave for theta >= 1
  static DistortionFn grid(std::vector<double> us, std::vector<double> ts, Shape shape);

  double at(double u) const;  // domain error outside [0,1]
  Shape shape() const noexcept { return shape_; }
  bool convex() const noexcept { return shape_ == Shape::convex || shape_ == Shape::affine; }
  bool concave() const noexcept { return shape_ == Shape::concave || shape_ == Shape::affine; }
  const std::string& label() const noexcept { return label_; }

 private:
  enum class Kind { identity, power, dual_power, grid };
  Kind kind_ = Kind::identity;
  double theta_ = 1.0;
  std::vector<double> us_, ts_;
  Shape shape_ = Shape::none;
  std::string label_;
};

}  // namespace riskcal
