#include "riskcal/payoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riskcal {

ProbabilityVector::ProbabilityVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
  double sum = 0.0;
  for (double p : w_) {
    if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("ProbabilityVector: weights must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("ProbabilityVector: weights sum to " + std::to_string(sum) +
                                ", expected 1 within 1e-12");
  }
}

ProbabilityVector ProbabilityVector::dirac(std::size_t i, std::size_t n) {
  if (i >= n) throw std::invalid_argument("ProbabilityVector::dirac: index out of range");
  std::vector<double> w(n, 0.0);
  w[i] = 1.0;
  return ProbabilityVector(std::move(w));
}

ProbabilityVector ProbabilityVector::from_space(const FiniteSpace& s) {
  return ProbabilityVector(s.probs());
}

double ProbabilityVector::expect(const Rv& x) const { return expectation(x, w_); }

bool ProbabilityVector::is_dirac(double tol) const noexcept {
  for (double p : w_) {
    if (p > tol && p < 1.0 - tol) return false;
  }
  return true;
}

// ---- PayoffFn ----

PayoffFn PayoffFn::positive_part() {
  PayoffFn f;
  f.kind_ = Kind::positive_part;
  f.label_ = "positive_part";
  return f;
}

PayoffFn PayoffFn::deductible_limit(double d, double l) {
  if (!(d >= 0.0) || !(l > 0.0)) {
    throw std::invalid_argument("PayoffFn::deductible_limit: need d >= 0 and l > 0");
  }
  PayoffFn f;
  f.kind_ = Kind::deductible_limit;
  f.d_ = d;
  f.l_ = l;
  f.label_ = "deductible_limit(d=" + std::to_string(d) + ",l=" + std::to_string(l) + ")";
  return f;
}

PayoffFn PayoffFn::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("PayoffFn::piecewise_linear: need matching xs/ys with at least two knots");
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("PayoffFn::piecewise_linear: xs must increase");
  }
  PayoffFn f;
  f.kind_ = Kind::piecewise;
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  f.label_ = "piecewise_linear";
  return f;
}

double PayoffFn::operator()(double x) const {
  switch (kind_) {
    case Kind::positive_part:
      return x > 0.0 ? x : 0.0;
    case Kind::deductible_limit: {
      const double e = x - d_;
      return std::min(e > 0.0 ? e : 0.0, l_);
    }
    case Kind::piecewise: {
      if (x <= xs_.front()) return ys_.front();
      if (x >= xs_.back()) return ys_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
    }
  }
  throw std::logic_error("PayoffFn: bad kind");
}

void PayoffFn::validate_on(const std::vector<double>& support) const {
  std::vector<double> pts(support);
  pts.push_back(0.0);
  if (kind_ == Kind::piecewise) pts.insert(pts.end(), xs_.begin(), xs_.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  constexpr double tol = 1e-9;
  const PayoffFn& f = *this;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] <= tol && std::abs(f(pts[i])) > tol) {
      throw std::invalid_argument("PayoffFn '" + label_ + "': must vanish at x <= 0 (x=" +
                                  std::to_string(pts[i]) + ")");
    }
    if (i == 0) continue;
    const double rise = f(pts[i]) - f(pts[i - 1]);
    const double run = pts[i] - pts[i - 1];
    if (rise < -tol) {
      throw std::invalid_argument("PayoffFn '" + label_ + "': not increasing near x=" + std::to_string(pts[i]));
    }
    if (rise > run + tol) {
      throw std::invalid_argument("PayoffFn '" + label_ + "': not 1-Lipschitz near x=" + std::to_string(pts[i]));
    }
  }
}

// ---- UtilityFn ----

UtilityFn UtilityFn::identity() {
  UtilityFn u;
  u.kind_ = Kind::identity;
  u.convex_ = true;  // affine: convex in the weak sense used by the preconditions
  u.label_ = "identity";
  return u;
}

UtilityFn UtilityFn::exponential(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("UtilityFn::exponential: gamma must be > 0");
  UtilityFn u;
  u.kind_ = Kind::exponential;
  u.gamma_ = gamma;
  u.convex_ = true;
  u.label_ = "exponential(gamma=" + std::to_string(gamma) + ")";
  return u;
}

UtilityFn UtilityFn::power(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("UtilityFn::power: p must be >= 1");
  UtilityFn u;
  u.kind_ = Kind::power;
  u.p_ = p;
  u.convex_ = true;
  u.label_ = "power(p=" + std::to_string(p) + ")";
  return u;
}

UtilityFn UtilityFn::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("UtilityFn::piecewise_linear: need matching xs/ys with at least two knots");
  }
  bool convex = true;
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("UtilityFn::piecewise_linear: xs must increase");
    const double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (!(slope > 0.0)) {
      throw std::invalid_argument("UtilityFn::piecewise_linear: must be strictly increasing");
    }
    if (slope < prev_slope - 1e-12) convex = false;
    prev_slope = slope;
  }
  UtilityFn u;
  u.kind_ = Kind::piecewise;
  u.xs_ = std::move(xs);
  u.ys_ = std::move(ys);
  u.convex_ = convex;
  u.label_ = "piecewise_linear";
  return u;
}

double UtilityFn::value(double x) const {
  switch (kind_) {
    case Kind::identity:
      return x;
    case Kind::exponential:
      return std::exp(gamma_ * x);
    case Kind::power:
      if (x < 0.0) {
        throw std::domain_error("UtilityFn power: negative argument " + std::to_string(x));
      }
      return std::pow(x, p_);
    case Kind::piecewise: {
      // extrapolate with the end segments' slopes: stays strictly increasing
      if (x <= xs_.front()) {
        const double s = (ys_[1] - ys_[0]) / (xs_[1] - xs_[0]);
        return ys_.front() + s * (x - xs_.front());
      }
      if (x >= xs_.back()) {
        const std::size_t n = xs_.size();
        const double s = (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
        return ys_.back() + s * (x - xs_.back());
      }
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
    }
  }
  throw std::logic_error("UtilityFn: bad kind");
}

double UtilityFn::inverse(double y) const {
  switch (kind_) {
    case Kind::identity:
      return y;
    case Kind::exponential:
      if (!(y > 0.0)) throw std::domain_error("UtilityFn exponential inverse: argument must be > 0");
      return std::log(y) / gamma_;
    case Kind::power:
      if (y < 0.0) throw std::domain_error("UtilityFn power inverse: negative argument");
      return std::pow(y, 1.0 / p_);
    case Kind::piecewise: {
      if (y <= ys_.front()) {
        const double s = (ys_[1] - ys_[0]) / (xs_[1] - xs_[0]);
        return xs_.front() + (y - ys_.front()) / s;
      }
      if (y >= ys_.back()) {
        const std::size_t n = xs_.size();
        const double s = (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
        return xs_.back() + (y - ys_.back()) / s;
      }
      const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
      const std::size_t i = static_cast<std::size_t>(it - ys_.begin());
      const double w = (y - ys_[i - 1]) / (ys_[i] - ys_[i - 1]);
      return xs_[i - 1] + w * (xs_[i] - xs_[i - 1]);
    }
  }
  throw std::logic_error("UtilityFn: bad kind");
}

// ---- DistortionFn ----

DistortionFn DistortionFn::identity() {
  DistortionFn t;
  t.kind_ = Kind::identity;
  t.shape_ = Shape::affine;
  t.label_ = "identity";
  return t;
}

DistortionFn DistortionFn::power(double theta) {
  if (!(theta >= 1.0)) throw std::invalid_argument("DistortionFn::power: theta must be >= 1");
  DistortionFn t;
  t.kind_ = Kind::power;
  t.theta_ = theta;
  t.shape_ = Shape::convex;
  t.label_ = "power(theta=" + std::to_string(theta) + ")";
  return t;
}

DistortionFn DistortionFn::dual_power(double theta) {
  if (!(theta >= 1.0)) throw std::invalid_argument("DistortionFn::dual_power: theta must be >= 1");
  DistortionFn t;
  t.kind_ = Kind::dual_power;
  t.theta_ = theta;
  t.shape_ = Shape::concave;
  t.label_ = "dual_power(theta=" + std::to_string(theta) + ")";
  return t;
}

DistortionFn DistortionFn::grid(std::vector<double> us, std::vector<double> ts, Shape shape) {
  if (us.size() != ts.size() || us.size() < 2) {
    throw std::invalid_argument("DistortionFn::grid: need matching us/ts with at least two knots");
  }
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    if (!(us[i] < us[i + 1])) throw std::invalid_argument("DistortionFn::grid: us must increase");
    if (ts[i + 1] < ts[i] - 1e-12) throw std::invalid_argument("DistortionFn::grid: ts must be non-decreasing");
  }
  if (std::abs(us.front()) > 1e-12 || std::abs(us.back() - 1.0) > 1e-12) {
    throw std::invalid_argument("DistortionFn::grid: us must span [0,1]");
  }
  if (std::abs(ts.front()) > 1e-12 || std::abs(ts.back() - 1.0) > 1e-12) {
    throw std::invalid_argument("DistortionFn::grid: need T(0)=0 and T(1)=1");
  }
  DistortionFn t;
  t.kind_ = Kind::grid;
  t.us_ = std::move(us);
  t.ts_ = std::move(ts);
  t.shape_ = shape;
  t.label_ = "grid";
  return t;
}

double DistortionFn::at(double u) const {
  if (u < -1e-12 || u > 1.0 + 1e-12) {
    throw std::domain_error("DistortionFn: argument " + std::to_string(u) + " outside [0,1]");
  }
  const double v = std::clamp(u, 0.0, 1.0);
  switch (kind_) {
    case Kind::identity:
      return v;
    case Kind::power:
      return std::pow(v, theta_);
    case Kind::dual_power:
      return 1.0 - std::pow(1.0 - v, theta_);
    case Kind::grid: {
      if (v <= us_.front()) return ts_.front();
      if (v >= us_.back()) return ts_.back();
      const auto it = std::upper_bound(us_.begin(), us_.end(), v);
      const std::size_t i = static_cast<std::size_t>(it - us_.begin());
      const double w = (v - us_[i - 1]) / (us_[i] - us_[i - 1]);
      return ts_[i - 1] + w * (ts_[i] - ts_[i - 1]);
    }
  }
  throw std::logic_error("DistortionFn: bad kind");
}

}  // namespace riskcal
