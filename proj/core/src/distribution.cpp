#include "riskcal/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskcal {

namespace {
// Absolute slack for cumulative-probability comparisons; absorbs summation
// noise without ever flipping a decision made at the 1e-9 reporting tolerance.
constexpr double kCumTol = 1e-12;
constexpr double kValueMergeTol = 1e-12;
}  // namespace

Distribution::Distribution(const Rv& x) {
  std::vector<std::pair<double, double>> vp;  // (value, prob)
  vp.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vp.emplace_back(x.value(i), x.space()->prob(i));
  std::sort(vp.begin(), vp.end());

  atoms_.reserve(vp.size());
  for (const auto& [v, p] : vp) {
    if (!atoms_.empty() && v - atoms_.back().value <= kValueMergeTol) {
      atoms_.back().prob += p;
    } else {
      atoms_.push_back(Atom{v, p, 0.0});
    }
  }
  double cum = 0.0;
  for (Atom& a : atoms_) {
    cum += a.prob;
    a.cum = cum;
  }
  atoms_.back().cum = 1.0;  // clamp away float dust on the final cumulative
}

ExtReal Distribution::quantile(double t) const {
  if (t < -kCumTol || t > 1.0 + kCumTol) {
    throw std::domain_error("quantile: level " + std::to_string(t) + " outside [0,1]");
  }
  if (t <= kCumTol) return ExtReal::neg_inf();
  const double level = std::min(t, 1.0);
  for (const Atom& a : atoms_) {
    if (a.cum >= level - kCumTol) return ExtReal(a.value);
  }
  return ExtReal(atoms_.back().value);  // unreachable: last cum is 1
}

double Distribution::mean() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.value * a.prob;
  return s;
}

double Distribution::cdf(double x) const {
  double c = 0.0;
  for (const Atom& a : atoms_) {
    if (a.value <= x + kValueMergeTol) c = a.cum;
    else break;
  }
  return c;
}

double Distribution::tail_integral(double t) const {
  if (t < -kCumTol || t > 1.0 + kCumTol) {
    throw std::domain_error("tail_integral: level outside [0,1]");
  }
  const double lo = std::clamp(t, 0.0, 1.0);
  double s = 0.0;
  double prev = 0.0;
  for (const Atom& a : atoms_) {
    const double a0 = std::max(prev, lo);
    const double a1 = a.cum;
    if (a1 > a0) s += a.value * (a1 - a0);
    prev = a.cum;
  }
  return s;
}

double Distribution::es(double t) const {
  if (t < -kCumTol || t > 1.0 + kCumTol) {
    throw std::domain_error("es: level " + std::to_string(t) + " outside [0,1]");
  }
  const double level = std::clamp(t, 0.0, 1.0);
  if (level >= 1.0 - kCumTol) return ess_sup();
  return tail_integral(level) / (1.0 - level);
}

double Distribution::stop_loss(double k) const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (a.value > k) s += (a.value - k) * a.prob;
  }
  return s;
}

QuantileCurve Distribution::quantile_curve() const {
  QuantileCurve q;
  q.breakpoints.reserve(atoms_.size());
  q.values.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    q.breakpoints.push_back(a.cum);
    q.values.push_back(a.value);
  }
  return q;
}

ExtReal quantile(const Rv& x, double t) { return Distribution(x).quantile(t); }

double es_value(const Rv& x, double t) { return Distribution(x).es(t); }

}  // namespace riskcal
