#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace riskcal {

// Finite probability space: strictly positive outcome probabilities summing to one.
// Spaces are immutable and shared by the random variables living on them.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<double> probs);

  static std::shared_ptr<const FiniteSpace> make(std::vector<double> probs);
  static std::shared_ptr<const FiniteSpace> uniform(std::size_t n);

  std::size_t size() const noexcept { return probs_.size(); }
  double prob(std::size_t i) const { return probs_.at(i); }
  const std::vector<double>& probs() const noexcept { return probs_; }

  bool same_probs(const FiniteSpace& other, double tol = 1e-12) const noexcept;

 private:
  std::vector<double> probs_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

// Random variable on a finite space: one finite value per outcome.
class Rv {
 public:
  Rv(SpacePtr space, std::vector<double> values);

  static Rv constant(SpacePtr space, double c);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double value(std::size_t i) const { return values_.at(i); }
  std::size_t size() const noexcept { return values_.size(); }

  // True when both variables live on the same space object or on spaces with
  // identical probability vectors.
  bool same_space(const Rv& other) const noexcept;

  Rv operator+(const Rv& o) const;
  Rv operator-(const Rv& o) const;
  Rv operator-() const;
  Rv operator+(double c) const;
  Rv operator-(double c) const;
  Rv operator*(double k) const;
  friend Rv operator*(double k, const Rv& x) { return x * k; }

  // Pointwise max(X, c); used for floored losses.
  Rv max_with(double c) const;
  Rv map(const std::function<double(double)>& f) const;

  double mean() const;
  double ess_sup() const;
  double ess_inf() const;
  double sup_norm() const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

// Expectation of X under an alternative probability vector on the same outcome set.
double expectation(const Rv& x, const std::vector<double>& q);

}  // namespace riskcal
