#pragma once

// Contour parameterizations z(theta), z'(theta) and the midpoint-rule SOE
// construction, templated over the working precision.  The numeric constants
// are stored as double and widened, so every precision discretizes the same
// contour.

#include <stdexcept>
#include <vector>

#include "fgt1d/contour.hpp"
#include "fgt1d/errors.hpp"
#include "internal/precision_ops.hpp"

namespace fgt::internal {

inline double stabilized_theta_default(int n) {
  return n <= 16 ? 0.25 : 12.0 / n;
}

// Truncation half-width of the stabilized hyperbola's parameter interval.
template <class Ops>
typename Ops::real stabilized_half_width(typename Ops::real theta_p) {
  using R = typename Ops::real;
  R one = Ops::from_double(1.0);
  R s08 = Ops::r_sin(Ops::from_double(0.8));
  return Ops::r_acosh(Ops::from_double(2.0) / ((one - theta_p) * s08));
}

template <class Ops>
struct ZPoint {
  typename Ops::cplx z;
  typename Ops::cplx zp;
};

// z(theta) and z'(theta) for one contour family.  theta_p is only used by
// the stabilized hyperbola.
template <class Ops>
ZPoint<Ops> contour_zz(ContourKind kind, int n, typename Ops::real theta,
                       typename Ops::real theta_p) {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  const R rn = Ops::from_double(static_cast<double>(n));
  switch (kind) {
    case ContourKind::Parabolic: {
      const R c0 = Ops::from_double(0.1309);
      const R c1 = Ops::from_double(0.1194);
      const R c2 = Ops::from_double(0.25);
      C z = Ops::make(rn * (c0 - c1 * theta * theta), rn * c2 * theta);
      C zp = Ops::make(-rn * Ops::from_double(0.2388) * theta, rn * c2);
      return {z, zp};
    }
    case ContourKind::Hyperbolic: {
      const R s = Ops::from_double(2.246) * rn;
      const R a0 = Ops::from_double(1.1721);
      const R b0 = Ops::from_double(0.3443);
      C arg = Ops::make(a0, -b0 * theta);
      C z = Ops::make(s, R(0)) * (Ops::make(R(1), R(0)) - Ops::c_sin(arg));
      C zp = Ops::make(R(0), s * b0) * Ops::c_cos(arg);
      return {z, zp};
    }
    case ContourKind::ModifiedTalbot: {
      const R a = Ops::from_double(0.6407);
      const R c0 = Ops::from_double(-0.6122);
      const R c1 = Ops::from_double(0.2645);
      const R c2 = Ops::from_double(0.5017);
      if (theta == R(0)) {
        // theta -> 0 limits: theta*cot(a theta) -> 1/a and
        // cot(a theta) - a theta / sin^2(a theta) -> 0.
        C z = Ops::make(rn * (c0 + c2 / a), R(0));
        C zp = Ops::make(R(0), rn * c1);
        return {z, zp};
      }
      R sa = Ops::r_sin(a * theta);
      R ca = Ops::r_cos(a * theta);
      R cot = ca / sa;
      C z = Ops::make(rn * (c0 + c2 * theta * cot), rn * c1 * theta);
      C zp = Ops::make(rn * c2 * (cot - a * theta / (sa * sa)), rn * c1);
      return {z, zp};
    }
    case ContourKind::StabilizedHyperbolic: {
      const R one = Ops::from_double(1.0);
      const R a = stabilized_half_width<Ops>(theta_p);
      const R lam =
          Ops::from_double(0.6) * Ops::pi() * (one - theta_p) * rn / a;
      // z = lambda (1 - sin(0.8 - i theta)): traversed counter-clockwise so
      // the quadrature weights sum to +1.
      C arg = Ops::make(Ops::from_double(0.8), -theta);
      C z = Ops::make(lam, R(0)) * (Ops::make(one, R(0)) - Ops::c_sin(arg));
      C zp = Ops::make(R(0), lam) * Ops::c_cos(arg);
      return {z, zp};
    }
  }
  throw std::domain_error("unknown contour kind");
}

template <class Ops>
typename Ops::real contour_half_width_t(ContourKind kind, int n,
                                        typename Ops::real theta_p) {
  if (kind == ContourKind::StabilizedHyperbolic)
    return stabilized_half_width<Ops>(theta_p);
  (void)n;
  return Ops::pi();
}

// Midpoint-rule SOE: theta_k = -width + (k + 1/2) h, h = 2 width / n,
// t_k = sqrt(z(theta_k)), w_k = h / (2 sqrt(pi) i) * z'(theta_k) e^{z(theta_k)}
// / sqrt(z(theta_k)).  Nodes emitted in increasing theta_k order.
template <class Ops>
void contour_nodes(ContourKind kind, int n, typename Ops::real theta_p,
                   std::vector<typename Ops::cplx>& t,
                   std::vector<typename Ops::cplx>& w) {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  if (n < 1) throw std::domain_error("contour quadrature requires n >= 1");
  const R width = contour_half_width_t<Ops>(kind, n, theta_p);
  const R h = Ops::from_double(2.0) * width / Ops::from_double(double(n));
  const R half = Ops::from_double(0.5);
  // h / (2 sqrt(pi) i) = -i h / (2 sqrt(pi))
  const R pref = h / (Ops::from_double(2.0) * Ops::r_sqrt(Ops::pi()));
  const C minus_i_pref = Ops::make(R(0), -pref);
  t.clear();
  w.clear();
  t.reserve(n);
  w.reserve(n);
  for (int k = 0; k < n; ++k) {
    R theta = -width + (Ops::from_double(double(k)) + half) * h;
    ZPoint<Ops> p = contour_zz<Ops>(kind, n, theta, theta_p);
    if (Ops::c_imag(p.z) == R(0) && Ops::c_real(p.z) <= R(0))
      throw numerical_error(
          "contour point fell on the negative real axis; no usable square "
          "root");
    C sq = Ops::c_sqrt(p.z);
    t.push_back(sq);
    w.push_back(minus_i_pref * p.zp * Ops::c_exp(p.z) / sq);
  }
}

}  // namespace fgt::internal
