#include "riskcal/finite_space.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace riskcal {

namespace {
constexpr double kProbSumTol = 1e-12;
}

FiniteSpace::FiniteSpace(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("FiniteSpace: no outcomes");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p <= 0.0) {
      throw std::invalid_argument("FiniteSpace: probability at outcome " + std::to_string(i) +
                                  " must be strictly positive and finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw std::invalid_argument("FiniteSpace: probabilities sum to " + std::to_string(sum) +
                                ", expected 1 within 1e-12");
  }
}

SpacePtr FiniteSpace::make(std::vector<double> probs) {
  return std::make_shared<const FiniteSpace>(std::move(probs));
}

SpacePtr FiniteSpace::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("FiniteSpace::uniform: n must be positive");
  return make(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool FiniteSpace::same_probs(const FiniteSpace& other, double tol) const noexcept {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(probs_[i] - other.probs_[i]) > tol) return false;
  }
  return true;
}

Rv::Rv(SpacePtr space, std::vector<double> values) : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw std::invalid_argument("Rv: null space");
  if (values_.size() != space_->size()) {
    throw std::invalid_argument("Rv: value count " + std::to_string(values_.size()) +
                                " does not match outcome count " + std::to_string(space_->size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Rv: values must be finite");
  }
}

Rv Rv::constant(SpacePtr space, double c) {
  if (!space) throw std::invalid_argument("Rv::constant: null space");
  return Rv(space, std::vector<double>(space->size(), c));
}

bool Rv::same_space(const Rv& other) const noexcept {
  if (space_ == other.space_) return true;
  return space_->same_probs(*other.space_);
}

namespace {
void require_same_space(const Rv& a, const Rv& b, const char* op) {
  if (!a.same_space(b)) throw std::invalid_argument(std::string("Rv: ") + op + " across mismatched spaces");
}
}  // namespace

Rv Rv::operator+(const Rv& o) const {
  require_same_space(*this, o, "addition");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return Rv(space_, std::move(v));
}

Rv Rv::operator-(const Rv& o) const {
  require_same_space(*this, o, "subtraction");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.values_[i];
  return Rv(space_, std::move(v));
}

Rv Rv::operator-() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return Rv(space_, std::move(v));
}

Rv Rv::operator+(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x += c;
  return Rv(space_, std::move(v));
}

Rv Rv::operator-(double c) const { return *this + (-c); }

Rv Rv::operator*(double k) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= k;
  return Rv(space_, std::move(v));
}

Rv Rv::max_with(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x = x < c ? c : x;
  return Rv(space_, std::move(v));
}

Rv Rv::map(const std::function<double(double)>& f) const {
  if (!f) throw std::invalid_argument("Rv::map: empty function");
  std::vector<double> v(values_);
  for (double& x : v) x = f(x);
  return Rv(space_, std::move(v));
}

double Rv::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * space_->prob(i);
  return s;
}

double Rv::ess_sup() const {
  double m = values_[0];
  for (double v : values_) m = v > m ? v : m;
  return m;
}

double Rv::ess_inf() const {
  double m = values_[0];
  for (double v : values_) m = v < m ? v : m;
  return m;
}

double Rv::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::abs(v) > m ? std::abs(v) : m;
  return m;
}

double expectation(const Rv& x, const std::vector<double>& q) {
  if (q.size() != x.size()) throw std::invalid_argument("expectation: weight count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * x.value(i);
  return s;
}

}  // namespace riskcal
