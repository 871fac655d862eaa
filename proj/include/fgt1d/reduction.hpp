#pragma once

#include <utility>
#include <vector>

#include "fgt1d/soe.hpp"

namespace fgt {

struct ReductionReport {
  int original_n = 0;
  int reduced_n = 0;
  // Hankel singular values of the underlying LTI realization, descending.
  std::vector<double> hankel_singular_values;
  double tolerance = 0.0;
};

// Balanced-truncation model reduction of an SOE viewed as the impulse
// response of a diagonal LTI system x' = -T x + b u, y = b^T x with
// b_k = sqrt(w_k).
//
// The retained order is the smallest r with 2 * sum_{k>r} sigma_k <= tol,
// which bounds the time-domain deviation |S - S_reduced| heuristically by
// that tail sum.  If r equals the input size the input is returned unchanged;
// r == 0 yields an empty SOE.
//
// Input must be in Full form (std::invalid_argument for Folded) with
// Re(t_k) > 0 (std::invalid_argument).  tol must be positive and finite
// (std::domain_error).  Throws fgt::numerical_error if the reduced system is
// not stable (an eigenvalue reaches the right half-plane).
//
// All internal linear algebra runs in extended precision; results are
// rounded to double at the end.  Output nodes are conjugate-paired
// (re-pairing tolerance 1e-8 relative, near-real nodes canonicalised to
// real) and sorted by (Re t, Im t).
std::pair<SoeApprox, ReductionReport> reduce(const SoeApprox& soe, double tol);

// Builds the stabilized-hyperbola contour SOE of size n entirely in
// quadruple precision and balanced-truncates it at the given tolerance,
// bypassing the double-precision roundoff floor of the plain constructor.
// The default (n = 64, tol = 1e-15) yields a compact SOE (16 terms) whose
// deviation from the Gaussian is at the level of double-precision rounding.
std::pair<SoeApprox, ReductionReport> stabilized_reduced_soe(int n = 64,
                                                             double tol = 1e-15);

}  // namespace fgt
