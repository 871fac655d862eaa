#pragma once

#include <complex>
#include <vector>

#include "fgt1d/soe.hpp"

namespace fgt {

// Degree-(n-1)/n rational approximation r(z) = sum_k residues[k]/(z - poles[k])
// of exp(z) on the negative real axis, produced by the Caratheodory-Fejer
// procedure on the unit disk.
struct RationalApprox {
  std::vector<std::complex<double>> poles;     // all in the right half-plane
  std::vector<std::complex<double>> residues;  // matching order
  int order_n = 0;
  // Singular value of the Hankel matrix used by the construction; the sup-norm
  // error of the rational approximant is close to (but not exactly) this.
  double hankel_sigma = 0.0;
};

// Best-rational-type approximation of e^z on (-inf, 0].  Supported orders are
// 2 <= n <= 14 (std::domain_error outside; beyond 14 double precision cannot
// resolve the construction).  Throws fgt::numerical_error if the pole-finding
// step does not produce exactly n usable poles.
RationalApprox cf_approx(int n);

// Converts the rational approximation of e^z into an n-term SOE for the
// Gaussian: node t_k = sqrt(z_k), weight w_k = -c_k * sqrt(pi / z_k) for each
// pole z_k with residue c_k.  Entries sorted by (Re t, Im t).
SoeApprox soe_from_rational(const RationalApprox& rat);

// Convenience: soe_from_rational(cf_approx(n)).
SoeApprox cf_soe(int n);

}  // namespace fgt
