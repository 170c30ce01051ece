#pragma once

#include <vector>

#include "riskcal/ext_real.hpp"
#include "riskcal/finite_space.hpp"

namespace riskcal {

struct Atom {
  double value;  // atom location
  double prob;   // P(X = value)
  double cum;    // P(X <= value)
};

// Left-continuous step quantile curve: value(t) = values[i] on (breakpoints[i-1], breakpoints[i]].
struct QuantileCurve {
  std::vector<double> breakpoints;  // strictly increasing cumulative probabilities, last == 1
  std::vector<double> values;       // strictly increasing atom values
};

// Law of a random variable on a finite space: sorted, merged atoms with
// cumulative probabilities. All quantile/expected-shortfall arithmetic runs on
// this exact step structure; nothing is interpolated.
class Distribution {
 public:
  explicit Distribution(const Rv& x);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  // Smallest x with P(X <= x) >= t. t=0 maps to -inf, t=1 to the essential
  // supremum; t outside [0,1] is a domain error.
  ExtReal quantile(double t) const;

  double ess_sup() const { return atoms_.back().value; }
  double ess_inf() const { return atoms_.front().value; }
  double mean() const;

  // P(X <= x), right-continuous in x.
  double cdf(double x) const;

  // Exact integral of the quantile curve over (t, 1].
  double tail_integral(double t) const;

  // Expected shortfall at level t: tail_integral(t) / (1-t); mean at t=0,
  // essential supremum at t=1.
  double es(double t) const;

  // E[(X - k)+]
  double stop_loss(double k) const;

  QuantileCurve quantile_curve() const;

 private:
  std::vector<Atom> atoms_;
};

ExtReal quantile(const Rv& x, double t);
double es_value(const Rv& x, double t);

}  // namespace riskcal
