#pragma once

#include <cassert>
#include <cmath>
#include <limits>

namespace entromin {

// Extended real number. Uses IEEE infinities for +-inf and fixes the two
// indeterminate forms:
//
//   inf + (-inf) = (-inf) + inf = +inf
//   0 * (+-inf)  = (+-inf) * 0  = 0
//
// so that sums and products are defined for every pair of values. NaN is not
// a valid state.
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}
  ExtReal(double v) : v_(v) { assert(!std::isnan(v)); }

  static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  ExtReal operator-() const { return ExtReal(-v_); }

 private:
  double v_;
};

// a + b with the convention that opposite infinities sum to +inf.
inline ExtReal ext_add(ExtReal a, ExtReal b) {
  if (std::isinf(a.value()) && std::isinf(b.value()) && a.value() != b.value())
    return ExtReal::pos_inf();
  return ExtReal(a.value() + b.value());
}

// a * b with the convention 0 * (+-inf) = 0. Signs follow the usual rules
// otherwise.
inline ExtReal ext_mul(ExtReal a, ExtReal b) {
  if (a.value() == 0.0 || b.value() == 0.0) return ExtReal(0.0);
  return ExtReal(a.value() * b.value());
}

inline ExtReal operator+(ExtReal a, ExtReal b) { return ext_add(a, b); }
inline ExtReal operator*(ExtReal a, ExtReal b) { return ext_mul(a, b); }

}  // namespace entromin
