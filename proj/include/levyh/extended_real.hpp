#pragma once

#include <cmath>
#include <limits>

namespace levyh {

/// Nonnegative quantity that may be (analytically) infinite, e.g. the mass or
/// variation of a Levy measure.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v); }
  static ExtendedReal infinite() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(value_); }
  bool is_infinite() const { return !is_finite(); }
  /// Finite value; +inf when infinite.
  double value() const { return value_; }

  ExtendedReal& operator+=(const ExtendedReal& o) {
    value_ += o.value_;
    return *this;
  }
  friend ExtendedReal operator+(ExtendedReal a, const ExtendedReal& b) {
    a += b;
    return a;
  }

 private:
  explicit ExtendedReal(double v) : value_(v) {}
  double value_ = 0.0;
};

}  // namespace levyh
