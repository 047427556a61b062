#pragma once

#include <quadmath.h>

#include <cmath>
#include <span>
#include <stdexcept>

#include "ellat/errors.hpp"
#include "ellat/logsigned.hpp"

namespace ellat {

// Evaluation context for the normalized bracket family [z]_r, r = 1..4.
// alpha scales the argument (the series run in x = alpha*z/2), p is the
// deformation parameter with |p| < 1 (negative p allowed), tol controls
// the relative series cutoff. At p = 0 the brackets reduce to
// sin(alpha*z/2)/sin(alpha/2), cos(alpha*z/2), 1, 1 for r = 1..4.
struct ThetaContext {
  double alpha;
  double p;
  double tol;

  explicit ThetaContext(double alpha_, double p_, double tol_ = 1e-16)
      : alpha(alpha_), p(p_), tol(tol_) {
    if (!(std::isfinite(alpha) && alpha > 0.0 && alpha < 6.283185307179586))
      throw std::domain_error("ThetaContext: need 0 < alpha < 2*pi");
    if (!(std::isfinite(p) && std::fabs(p) < 1.0))
      throw std::domain_error("ThetaContext: need finite p with |p| < 1");
    if (!(std::isfinite(tol) && tol > 0.0))
      throw std::domain_error("ThetaContext: tol must be positive");
  }
};

namespace theta_detail {

// Series are cut off once the next coefficient envelope drops below
// tol * |partial sum|; the hard cap keeps the worst case bounded. The
// exponents l(l+1) resp. l^2 make convergence superexponential, so the
// cap is generous for any |p| that occurs in practice.
inline constexpr int kMaxTerms = 64;

// The alternating sums (families 1 and 4, and their normalizers at x = 0)
// cancel down to values exponentially smaller than their terms as |p|
// grows: the l = 0 terms are O(1) while e.g. the slope normalizer is
// ~ 2e-3 at p = 0.75, ~ 1e-8 at p = 0.9 and ~ 5e-13 at p = 0.93. Plain
// double accumulation caps the achievable relative accuracy of the first
// family at machine epsilon times the mass ratio of the raw sine series
// to the normalized value, and for small alpha the 1/sin(alpha/2) scaling
// inflates that further: measured worst over the random consistency
// battery is ~3e-12 by p ~ 0.75 at alpha ~ 0.3. Past the switch point the
// identical sums run in quad precision, which keeps the rounded double
// result accurate to its own epsilon for any |p| up to ~0.95, and the
// double region below keeps a ~40x margin against 1e-12.
inline constexpr double kQuadSwitch = 0.6;

struct Series {
  double value;
  double scale;  // sum of coefficient magnitudes, reference for zero tests
  double floor;  // below this magnitude the value is accumulation noise
};

struct DoubleOps {
  using real = double;
  static real sin(real x) { return std::sin(x); }
  static real cos(real x) { return std::cos(x); }
  static real fabs(real x) { return std::fabs(x); }
  static constexpr double kNoise = 1e-12;  // eps with headroom for ~30 terms
};

struct QuadOps {
  using real = __float128;
  static real sin(real x) { return sinq(x); }
  static real cos(real x) { return cosq(x); }
  static real fabs(real x) { return fabsq(x); }
  static constexpr double kNoise = 1e-28;
};

// Exhausting the cap with the next coefficient still above tol times the
// accumulated coefficient mass means the tail is not negligible: |p| is too
// close to 1 for the cap. Returning the partial sum would be silently wrong.
// Compared against the mass, not the sum, so that full trigonometric
// cancellation (an honest zero) does not read as failure.
inline void require_tail_negligible(double tail, double scale, double tol) {
  if (!(tail <= tol * scale))
    throw numeric_error("theta series: term cap reached before convergence");
}

// sum_{l>=0} (-1)^l p^(l(l+1)) sin((2l+1)x)
template <class Ops>
inline Series s1_sum(double x0, double p0, double tol) {
  using R = typename Ops::real;
  R x = x0, p = p0;
  R sum = 0.0, scale = 0.0;
  R coef = 1.0;    // (-1)^l p^(l(l+1)), updated incrementally
  R pw = p * p;    // p^(2(l+1))
  for (int l = 0; l < kMaxTerms; ++l) {
    sum += coef * Ops::sin(R(2 * l + 1) * x);
    scale += Ops::fabs(coef);
    coef *= -pw;
    pw *= p * p;
    if (Ops::fabs(coef) <= R(tol) * Ops::fabs(sum)) break;
  }
  double sc = double(scale);
  require_tail_negligible(double(Ops::fabs(coef)), sc, tol);
  return {double(sum), sc, Ops::kNoise * sc};
}

// d/dx of s1: sum (-1)^l (2l+1) p^(l(l+1)) cos((2l+1)x)
template <class Ops>
inline Series s1d_sum(double x0, double p0, double tol) {
  using R = typename Ops::real;
  R x = x0, p = p0;
  R sum = 0.0, scale = 0.0;
  R coef = 1.0;
  R pw = p * p;
  for (int l = 0; l < kMaxTerms; ++l) {
    R w = coef * R(2 * l + 1);
    sum += w * Ops::cos(R(2 * l + 1) * x);
    scale += Ops::fabs(w);
    coef *= -pw;
    pw *= p * p;
    if (Ops::fabs(coef) * R(2 * l + 3) <= R(tol) * Ops::fabs(sum)) break;
  }
  double sc = double(scale);
  require_tail_negligible(double(Ops::fabs(coef)), sc, tol);
  return {double(sum), sc, Ops::kNoise * sc};
}

// sum_{l>=0} p^(l(l+1)) cos((2l+1)x)
template <class Ops>
inline Series s2_sum(double x0, double p0, double tol) {
  using R = typename Ops::real;
  R x = x0, p = p0;
  R sum = 0.0, scale = 0.0;
  R coef = 1.0;
  R pw = p * p;
  for (int l = 0; l < kMaxTerms; ++l) {
    sum += coef * Ops::cos(R(2 * l + 1) * x);
    scale += Ops::fabs(coef);
    coef *= pw;
    pw *= p * p;
    if (Ops::fabs(coef) <= R(tol) * Ops::fabs(sum)) break;
  }
  double sc = double(scale);
  require_tail_negligible(double(Ops::fabs(coef)), sc, tol);
  return {double(sum), sc, Ops::kNoise * sc};
}

// d/dx of s2: -sum (2l+1) p^(l(l+1)) sin((2l+1)x)
template <class Ops>
inline Series s2d_sum(double x0, double p0, double tol) {
  using R = typename Ops::real;
  R x = x0, p = p0;
  R sum = 0.0, scale = 0.0;
  R coef = 1.0;
  R pw = p * p;
  for (int l = 0; l < kMaxTerms; ++l) {
    R w = coef * R(2 * l + 1);
    sum -= w * Ops::sin(R(2 * l + 1) * x);
    scale += Ops::fabs(w);
    coef *= pw;
    pw *= p * p;
    if (Ops::fabs(coef) * R(2 * l + 3) <= R(tol) * Ops::fabs(sum)) break;
  }
  double sc = double(scale);
  require_tail_negligible(double(Ops::fabs(coef)), sc, tol);
  return {double(sum), sc, Ops::kNoise * sc};
}

// 1 + 2 sum_{l>=1} (+-1)^l p^(l^2) cos(2lx); sgn = +1 gives the third
// family, sgn = -1 the fourth.
template <class Ops>
inline Series t34_sum(double x0, double p0, double tol, int sgn) {
  using R = typename Ops::real;
  R x = x0, p = p0;
  R sum = 1.0, scale = 1.0;
  R coef = R(2 * sgn) * p;  // 2 (+-1)^l p^(l^2), l >= 1
  R podd = p * p * p;       // p^(2l+1)
  for (int l = 1; l < kMaxTerms; ++l) {
    sum += coef * Ops::cos(R(2 * l) * x);
    scale += Ops::fabs(coef);
    coef *= R(sgn) * podd;
    podd *= p * p;
    if (Ops::fabs(coef) <= R(tol) * Ops::fabs(sum)) break;
  }
  double sc = double(scale);
  require_tail_negligible(double(Ops::fabs(coef)), sc, tol);
  return {double(sum), sc, Ops::kNoise * sc};
}

// d/dx of t34: -4 sum_{l>=1} (+-1)^l l p^(l^2) sin(2lx)
template <class Ops>
inline Series t34d_sum(double x0, double p0, double tol, int sgn) {
  using R = typename Ops::real;
  R x = x0, p = p0;
  R sum = 0.0, scale = 0.0;
  R coef = R(2 * sgn) * p;
  R podd = p * p * p;
  for (int l = 1; l < kMaxTerms; ++l) {
    R w = R(2 * l) * coef;
    sum -= w * Ops::sin(R(2 * l) * x);
    scale += Ops::fabs(w);
    coef *= R(sgn) * podd;
    podd *= p * p;
    if (Ops::fabs(coef) * R(2 * (l + 1)) <= R(tol) * Ops::fabs(sum)) break;
  }
  double sc = double(scale);
  require_tail_negligible(double(Ops::fabs(coef)), sc, tol);
  return {double(sum), sc, Ops::kNoise * sc};
}

inline bool use_quad(double p) { return std::fabs(p) > kQuadSwitch; }

inline Series s1(double x, double p, double tol) {
  return use_quad(p) ? s1_sum<QuadOps>(x, p, tol) : s1_sum<DoubleOps>(x, p, tol);
}
inline Series s1d(double x, double p, double tol) {
  return use_quad(p) ? s1d_sum<QuadOps>(x, p, tol) : s1d_sum<DoubleOps>(x, p, tol);
}
inline Series s2(double x, double p, double tol) {
  return use_quad(p) ? s2_sum<QuadOps>(x, p, tol) : s2_sum<DoubleOps>(x, p, tol);
}
inline Series s2d(double x, double p, double tol) {
  return use_quad(p) ? s2d_sum<QuadOps>(x, p, tol) : s2d_sum<DoubleOps>(x, p, tol);
}
inline Series t34(double x, double p, double tol, int sgn) {
  return use_quad(p) ? t34_sum<QuadOps>(x, p, tol, sgn)
                     : t34_sum<DoubleOps>(x, p, tol, sgn);
}
inline Series t34d(double x, double p, double tol, int sgn) {
  return use_quad(p) ? t34d_sum<QuadOps>(x, p, tol, sgn)
                     : t34d_sum<DoubleOps>(x, p, tol, sgn);
}

// Normalizers sit in denominators; if one cancels below the accumulation
// noise floor the ratio would be garbage, so fail loudly instead. With the
// quad path this needs |p| well above 0.95.
inline double over(const Series& num, const Series& den, const char* what) {
  if (std::fabs(den.value) <= den.floor)
    throw numeric_error(std::string(what) +
                        ": normalizing series cancels below evaluation precision");
  return num.value / den.value;
}

inline void check_r(int r) {
  if (r < 1 || r > 4) throw std::domain_error("bracket: r must be in 1..4");
}

}  // namespace theta_detail

// Normalized bracket [z]_r evaluated by truncated series. The first family
// is scaled by sin(alpha/2) times the slope series at zero, so that
// [z]_1 ~ z * (alpha/2)/sin(alpha/2) near z = 0; families 2..4 are scaled
// to equal 1 at z = 0.
inline double bracket(const ThetaContext& c, double z, int r) {
  using namespace theta_detail;
  check_r(r);
  double x = 0.5 * c.alpha * z;
  switch (r) {
    case 1:
      return over(s1(x, c.p, c.tol), s1d(0.0, c.p, c.tol), "bracket") /
             std::sin(0.5 * c.alpha);
    case 2:
      return over(s2(x, c.p, c.tol), s2(0.0, c.p, c.tol), "bracket");
    case 3:
      return over(t34(x, c.p, c.tol, +1), t34(0.0, c.p, c.tol, +1), "bracket");
    default:
      return over(t34(x, c.p, c.tol, -1), t34(0.0, c.p, c.tol, -1), "bracket");
  }
}

// Same bracket through the infinite-product representation. Used as an
// independent route in tests and consistency checks; each factor is a
// squared complex modulus, so the sign of the result is carried entirely
// by the trigonometric prefactor.
inline double bracket_product(const ThetaContext& c, double z, int r) {
  using namespace theta_detail;
  check_r(r);
  constexpr int kMaxFactors = 4096;
  double x = 0.5 * c.alpha * z;
  double c2x = std::cos(2.0 * x);
  double p = c.p;
  double v;
  if (r == 1)
    v = std::sin(x) / std::sin(0.5 * c.alpha);
  else if (r == 2)
    v = std::cos(x);
  else
    v = 1.0;
  double peven = p * p;       // p^(2l)
  double podd = p;            // p^(2l-1)
  for (int l = 1; l <= kMaxFactors; ++l) {
    double e = (r <= 2) ? peven : podd;
    double s = (r == 1 || r == 4) ? -1.0 : 1.0;
    v *= (1.0 + s * 2.0 * e * c2x + e * e) / ((1.0 + s * e) * (1.0 + s * e));
    if (5.0 * std::fabs(e) <= c.tol) break;
    peven *= p * p;
    podd *= p * p;
  }
  return v;
}

// Logarithmic derivative d/dz log [z]_r. Throws pole_error when z sits on
// a zero of the bracket.
inline double bracket_log_deriv(const ThetaContext& c, double z, int r) {
  using namespace theta_detail;
  check_r(r);
  double x = 0.5 * c.alpha * z;
  Series num, den;
  switch (r) {
    case 1:
      num = s1d(x, c.p, c.tol);
      den = s1(x, c.p, c.tol);
      break;
    case 2:
      num = s2d(x, c.p, c.tol);
      den = s2(x, c.p, c.tol);
      break;
    case 3:
      num = t34d(x, c.p, c.tol, +1);
      den = t34(x, c.p, c.tol, +1);
      break;
    default:
      num = t34d(x, c.p, c.tol, -1);
      den = t34(x, c.p, c.tol, -1);
      break;
  }
  if (std::fabs(den.value) <= den.floor)
    throw pole_error("bracket_log_deriv: argument lies on a bracket zero");
  return 0.5 * c.alpha * num.value / den.value;
}

// Slope of the first bracket at z = 0. The series normalization makes it
// independent of p.
inline double bracket1_slope0(const ThetaContext& c) {
  return 0.5 * c.alpha / std::sin(0.5 * c.alpha);
}

// prod_i prod_{k=0..len-1} [z_i + k]_r as a LogSigned value.
inline LogSigned shifted_factorial(const ThetaContext& c,
                                   std::span<const double> zs, int r, int len) {
  if (len < 0) throw std::domain_error("shifted_factorial: len must be >= 0");
  LogSigned out = LogSigned::one();
  for (double z : zs)
    for (int k = 0; k < len; ++k) out *= LogSigned::of(bracket(c, z + k, r));
  return out;
}

// Trigonometric bracket, the p = 0 specialization. Only the first two
// families are nontrivial there.
inline double q_bracket(double alpha, double z, int r) {
  if (!(std::isfinite(alpha) && alpha > 0.0))
    throw std::domain_error("q_bracket: alpha must be positive");
  if (r == 1) return std::sin(0.5 * alpha * z) / std::sin(0.5 * alpha);
  if (r == 2) return std::cos(0.5 * alpha * z);
  throw std::domain_error("q_bracket: r must be 1 or 2");
}

inline LogSigned q_shifted_factorial(double alpha, std::span<const double> zs,
                                     int r, int len) {
  if (len < 0) throw std::domain_error("q_shifted_factorial: len must be >= 0");
  LogSigned out = LogSigned::one();
  for (double z : zs)
    for (int k = 0; k < len; ++k) out *= LogSigned::of(q_bracket(alpha, z + k, r));
  return out;
}

}  // namespace ellat
