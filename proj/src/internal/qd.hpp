#pragma once

// Minimal quadruple-precision (__float128) real/complex arithmetic used by the
// extended-precision construction and reduction paths.  Only the operations
// the pipelines need are provided.

#include <quadmath.h>

#include <complex>
#include <cstdio>
#include <string>

namespace fgt::qd {

using qreal = __float128;

inline double to_double(qreal x) { return static_cast<double>(x); }
inline long double to_long_double(qreal x) { return static_cast<long double>(x); }

struct qcomplex {
  qreal re{0};
  qreal im{0};

  qcomplex() = default;
  qcomplex(qreal r, qreal i) : re(r), im(i) {}
  explicit qcomplex(qreal r) : re(r), im(0) {}
  qcomplex(double r, double i) : re(r), im(i) {}
};

inline qcomplex operator+(qcomplex a, qcomplex b) { return {a.re + b.re, a.im + b.im}; }
inline qcomplex operator-(qcomplex a, qcomplex b) { return {a.re - b.re, a.im - b.im}; }
inline qcomplex operator-(qcomplex a) { return {-a.re, -a.im}; }
inline qcomplex operator*(qcomplex a, qcomplex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qcomplex operator*(qreal s, qcomplex a) { return {s * a.re, s * a.im}; }
inline qcomplex operator*(qcomplex a, qreal s) { return {s * a.re, s * a.im}; }

// Smith's algorithm: avoids overflow/underflow in the intermediate products.
inline qcomplex operator/(qcomplex a, qcomplex b) {
  if (fabsq(b.re) >= fabsq(b.im)) {
    qreal r = b.im / b.re;
    qreal den = b.re + b.im * r;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  qreal r = b.re / b.im;
  qreal den = b.re * r + b.im;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}
inline qcomplex operator/(qcomplex a, qreal s) { return {a.re / s, a.im / s}; }

inline qcomplex& operator+=(qcomplex& a, qcomplex b) { a = a + b; return a; }
inline qcomplex& operator-=(qcomplex& a, qcomplex b) { a = a - b; return a; }
inline qcomplex& operator*=(qcomplex& a, qcomplex b) { a = a * b; return a; }

inline qcomplex conj(qcomplex a) { return {a.re, -a.im}; }
inline qreal real(qcomplex a) { return a.re; }
inline qreal imag(qcomplex a) { return a.im; }
inline qreal norm(qcomplex a) { return a.re * a.re + a.im * a.im; }
inline qreal abs(qcomplex a) { return hypotq(a.re, a.im); }
inline qreal arg(qcomplex a) { return atan2q(a.im, a.re); }

// Principal branch: result in the closed right half-plane, sign(Im) preserved.
inline qcomplex sqrt(qcomplex a) {
  if (a.re == 0 && a.im == 0) return {qreal(0), qreal(0)};
  qreal m = abs(a);
  if (a.re >= 0) {
    qreal t = sqrtq((m + a.re) / 2);
    return {t, a.im / (2 * t)};
  }
  qreal u = sqrtq((m - a.re) / 2);
  qreal r = fabsq(a.im) / (2 * u);
  return {r, a.im >= 0 ? u : -u};
}

inline qcomplex exp(qcomplex a) {
  qreal e = expq(a.re);
  return {e * cosq(a.im), e * sinq(a.im)};
}

inline qcomplex sin(qcomplex a) {
  return {sinq(a.re) * coshq(a.im), cosq(a.re) * sinhq(a.im)};
}

inline qcomplex cos(qcomplex a) {
  return {cosq(a.re) * coshq(a.im), -sinq(a.re) * sinhq(a.im)};
}

inline std::complex<double> to_std(qcomplex a) {
  return {to_double(a.re), to_double(a.im)};
}
inline std::complex<long double> to_std_ld(qcomplex a) {
  return {to_long_double(a.re), to_long_double(a.im)};
}
inline qcomplex from_std(std::complex<long double> a) {
  return {static_cast<qreal>(a.real()), static_cast<qreal>(a.imag())};
}

inline std::string to_string(qreal x) {
  char buf[64];
  quadmath_snprintf(buf, sizeof buf, "%.33Qe", x);
  return buf;
}

}  // namespace fgt::qd
