#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace riskcal {

// Extended real line: finite doubles plus the two infinities, totally ordered.
// NaN is banned at construction so every comparison below is total.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT: implicit by design, values flow in freely
    if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not a value");
  }

  static ExtReal pos_inf() noexcept { return ExtReal(std::numeric_limits<double>::infinity(), RawTag{}); }
  static ExtReal neg_inf() noexcept { return ExtReal(-std::numeric_limits<double>::infinity(), RawTag{}); }

  bool finite() const noexcept { return std::isfinite(v_); }
  bool is_pos_inf() const noexcept { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const noexcept { return std::isinf(v_) && v_ < 0; }

  // Raw IEEE value; infinities compare correctly under the built-in order.
  double raw() const noexcept { return v_; }

  double finite_value() const {
    if (!finite()) throw std::domain_error("ExtReal: infinite value where a finite one is required");
    return v_;
  }

  friend bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) noexcept { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) noexcept { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) noexcept { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) noexcept { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) noexcept { return a.v_ >= b.v_; }

  ExtReal operator-() const noexcept { return ExtReal(-v_, RawTag{}); }

  // Addition must not mix opposite infinities; that combination has no value here.
  friend ExtReal operator+(ExtReal a, ExtReal b) {
    const double r = a.v_ + b.v_;
    if (std::isnan(r)) throw std::domain_error("ExtReal: inf + (-inf) is undefined");
    return ExtReal(r, RawTag{});
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

 private:
  struct RawTag {};
  ExtReal(double v, RawTag) noexcept : v_(v) {}
  double v_ = 0.0;
};

inline ExtReal emax(ExtReal a, ExtReal b) noexcept { return a < b ? b : a; }
inline ExtReal emin(ExtReal a, ExtReal b) noexcept { return b < a ? b : a; }

inline std::string to_string(ExtReal x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x.raw();
  return os.str();
}

}  // namespace riskcal
