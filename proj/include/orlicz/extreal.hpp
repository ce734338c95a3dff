#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orlicz {

// Extended real in [0, +inf]. The infinity is an explicit marker, not a
// sentinel double; arithmetic with the marker propagates it.
struct ExtReal {
  double value = 0.0;
  bool is_inf = false;

  ExtReal() = default;
  ExtReal(double v) : value(v), is_inf(false) {
    if (std::isinf(v)) {
      value = 0.0;
      is_inf = true;
    }
  }

  static ExtReal infinity() {
    ExtReal r;
    r.is_inf = true;
    return r;
  }

  bool finite() const { return !is_inf; }

  // Finite value, throws on the marker.
  double require_finite() const {
    if (is_inf) throw std::range_error("ExtReal: value is infinite");
    return value;
  }

  // As a plain double, mapping the marker to +inf (for printing/fitting).
  double as_double() const {
    return is_inf ? std::numeric_limits<double>::infinity() : value;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_inf || b.is_inf) return infinity();
    return ExtReal(a.value + b.value);
  }
  friend ExtReal operator*(double c, ExtReal a) {
    if (a.is_inf) return c == 0.0 ? ExtReal(0.0) : infinity();
    return ExtReal(c * a.value);
  }
  friend bool operator<=(ExtReal a, double b) { return !a.is_inf && a.value <= b; }
  friend bool operator>(ExtReal a, double b) { return !(a <= b); }
  friend bool operator<(ExtReal a, ExtReal b) {
    if (b.is_inf) return !a.is_inf;
    if (a.is_inf) return false;
    return a.value < b.value;
  }
};

}  // namespace orlicz
