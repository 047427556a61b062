#pragma once

#include <cmath>
#include <stdexcept>

namespace ellat {

// Sign-and-log representation for long products of theta brackets. Weight
// functions and coefficient quotients multiply dozens of factors whose
// magnitudes can drift far outside double range; carrying the log of the
// magnitude and the sign separately keeps every intermediate finite.
// Only multiplication, division and square root are supported; sums of
// LogSigned values go through value() at the call site.
struct LogSigned {
  int sign = 0;        // -1, 0 or +1
  double logmag = 0.0; // log of the magnitude, meaningless when sign == 0

  static LogSigned one() { return {1, 0.0}; }
  static LogSigned zero() { return {0, 0.0}; }

  static LogSigned of(double x) {
    if (x == 0.0) return zero();
    if (!std::isfinite(x)) throw std::domain_error("LogSigned::of: non-finite input");
    return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
  }

  bool is_zero() const { return sign == 0; }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(logmag); }

  LogSigned& operator*=(const LogSigned& o) {
    if (sign == 0 || o.sign == 0) {
      sign = 0;
      logmag = 0.0;
    } else {
      sign *= o.sign;
      logmag += o.logmag;
    }
    return *this;
  }

  LogSigned& operator/=(const LogSigned& o) {
    if (o.sign == 0) throw std::domain_error("LogSigned: division by zero");
    if (sign != 0) {
      sign *= o.sign;
      logmag -= o.logmag;
    }
    return *this;
  }

  friend LogSigned operator*(LogSigned a, const LogSigned& b) { return a *= b; }
  friend LogSigned operator/(LogSigned a, const LogSigned& b) { return a /= b; }
};

// Square root of a nonnegative LogSigned value.
inline LogSigned sqrt(const LogSigned& x) {
  if (x.sign < 0) throw std::domain_error("LogSigned sqrt of negative value");
  if (x.sign == 0) return LogSigned::zero();
  return {1, 0.5 * x.logmag};
}

// x^k for integer k (k may be negative, x must then be nonzero).
inline LogSigned pow(const LogSigned& x, int k) {
  if (k == 0) return LogSigned::one();
  if (x.sign == 0) {
    if (k < 0) throw std::domain_error("LogSigned pow: zero to negative power");
    return LogSigned::zero();
  }
  int s = (x.sign < 0 && (k % 2 != 0)) ? -1 : 1;
  return {s, k * x.logmag};
}

}  // namespace ellat
