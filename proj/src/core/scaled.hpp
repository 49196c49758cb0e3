#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace monoheight {

// Nonnegative real in the form frac * 2^exp2 with frac in [1,2) (or 0).
// Heights of iterated points involve integers far beyond double range;
// sums and logarithms of such quantities go through this representation.
struct Scaled {
  double frac = 0.0;
  long exp2 = 0;

  bool is_zero() const { return frac == 0.0; }

  static Scaled zero() { return {}; }

  static Scaled from_double(double v) {
    Scaled s;
    if (v <= 0.0) return s;
    int e = 0;
    s.frac = std::frexp(v, &e) * 2.0;  // frexp gives [0.5,1)
    s.exp2 = e - 1;
    return s;
  }

  static Scaled from_mpz_abs(const mpz_class& v) {
    Scaled s;
    if (v == 0) return s;
    long e = 0;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    s.frac = std::fabs(d) * 2.0;
    s.exp2 = e - 1;
    return s;
  }

  Scaled times(double w) const {
    if (is_zero() || w <= 0.0) return zero();
    Scaled r = *this;
    r.frac *= w;
    r.normalize();
    return r;
  }

  Scaled plus(const Scaled& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const Scaled& hi = (exp2 >= o.exp2) ? *this : o;
    const Scaled& lo = (exp2 >= o.exp2) ? o : *this;
    long d = hi.exp2 - lo.exp2;
    Scaled r = hi;
    if (d < 128) r.frac += std::ldexp(lo.frac, -static_cast<int>(d));
    r.normalize();
    return r;
  }

  // Natural logarithm; -inf for zero.
  double log_value() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(frac) + static_cast<double>(exp2) * std::numbers::ln2;
  }

  // Double value; +inf when out of range.
  double value() const {
    if (is_zero()) return 0.0;
    if (exp2 > 1020) return std::numeric_limits<double>::infinity();
    if (exp2 < -1060) return 0.0;
    return std::ldexp(frac, static_cast<int>(exp2));
  }

  bool less_than(const Scaled& o) const {
    if (is_zero()) return !o.is_zero();
    if (o.is_zero()) return false;
    if (exp2 != o.exp2) return exp2 < o.exp2;
    return frac < o.frac;
  }

 private:
  void normalize() {
    if (frac <= 0.0) {
      frac = 0.0;
      exp2 = 0;
      return;
    }
    int e = 0;
    frac = std::frexp(frac, &e) * 2.0;
    exp2 += e - 1;
  }
};

}  // namespace monoheight
