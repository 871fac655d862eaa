#pragma once

// Uniform interface over the three precisions the library computes in:
// double, long double (x87 80-bit), and __float128.  The numerical pipelines
// are templated over one of these trait structs.

#include <cfloat>
#include <cmath>
#include <complex>

#include "internal/qd.hpp"

namespace fgt::internal {

struct ops_double {
  using real = double;
  using cplx = std::complex<double>;
  static constexpr real eps() { return DBL_EPSILON; }
  static real pi() { return 3.14159265358979323846; }
  static real r_sqrt(real x) { return std::sqrt(x); }
  static real r_abs(real x) { return std::fabs(x); }
  static real r_acosh(real x) { return std::acosh(x); }
  static real r_sin(real x) { return std::sin(x); }
  static real r_cos(real x) { return std::cos(x); }
  static cplx c_sqrt(cplx z) { return std::sqrt(z); }
  static cplx c_exp(cplx z) { return std::exp(z); }
  static cplx c_sin(cplx z) { return std::sin(z); }
  static cplx c_cos(cplx z) { return std::cos(z); }
  static real c_abs(cplx z) { return std::abs(z); }
  static real c_norm(cplx z) { return std::norm(z); }
  static real c_arg(cplx z) { return std::arg(z); }
  static cplx c_conj(cplx z) { return std::conj(z); }
  static real c_real(cplx z) { return z.real(); }
  static real c_imag(cplx z) { return z.imag(); }
  static cplx make(real re, real im) { return {re, im}; }
  static real from_double(double x) { return x; }
  static double to_double(real x) { return x; }
};

struct ops_ld {
  using real = long double;
  using cplx = std::complex<long double>;
  static constexpr real eps() { return LDBL_EPSILON; }
  static real pi() { return 3.141592653589793238462643383279502884L; }
  static real r_sqrt(real x) { return std::sqrt(x); }
  static real r_abs(real x) { return std::fabs(x); }
  static real r_acosh(real x) { return std::acosh(x); }
  static real r_sin(real x) { return std::sin(x); }
  static real r_cos(real x) { return std::cos(x); }
  static cplx c_sqrt(cplx z) { return std::sqrt(z); }
  static cplx c_exp(cplx z) { return std::exp(z); }
  static cplx c_sin(cplx z) { return std::sin(z); }
  static cplx c_cos(cplx z) { return std::cos(z); }
  static real c_abs(cplx z) { return std::abs(z); }
  static real c_norm(cplx z) { return std::norm(z); }
  static real c_arg(cplx z) { return std::arg(z); }
  static cplx c_conj(cplx z) { return std::conj(z); }
  static real c_real(cplx z) { return z.real(); }
  static real c_imag(cplx z) { return z.imag(); }
  static cplx make(real re, real im) { return {re, im}; }
  static real from_double(double x) { return x; }
  static double to_double(real x) { return static_cast<double>(x); }
};

struct ops_quad {
  using real = qd::qreal;
  using cplx = qd::qcomplex;
  static real eps() { return FLT128_EPSILON; }
  static real pi() { return M_PIq; }
  static real r_sqrt(real x) { return sqrtq(x); }
  static real r_abs(real x) { return fabsq(x); }
  static real r_acosh(real x) { return acoshq(x); }
  static real r_sin(real x) { return sinq(x); }
  static real r_cos(real x) { return cosq(x); }
  static cplx c_sqrt(cplx z) { return qd::sqrt(z); }
  static cplx c_exp(cplx z) { return qd::exp(z); }
  static cplx c_sin(cplx z) { return qd::sin(z); }
  static cplx c_cos(cplx z) { return qd::cos(z); }
  static real c_abs(cplx z) { return qd::abs(z); }
  static real c_norm(cplx z) { return qd::norm(z); }
  static real c_arg(cplx z) { return qd::arg(z); }
  static cplx c_conj(cplx z) { return qd::conj(z); }
  static real c_real(cplx z) { return z.re; }
  static real c_imag(cplx z) { return z.im; }
  static cplx make(real re, real im) { return {re, im}; }
  static real from_double(double x) { return static_cast<real>(x); }
  static double to_double(real x) { return qd::to_double(x); }
};

}  // namespace fgt::internal
