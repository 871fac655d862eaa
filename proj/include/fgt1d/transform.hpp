#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fgt1d/soe.hpp"

namespace fgt {

// Discrete Gauss transform
//
//     u_i = sum_j exp(-(x_i - y_j)^2 / (4 delta)) * alpha_j
//
// evaluated either directly (O(N*M)) or via an SOE of the kernel with
// forward/backward recurrences (O((N + M) * n_e)).
struct TransformRequest {
  std::vector<double> targets;    // x_i
  std::vector<double> sources;    // y_j
  std::vector<double> strengths;  // alpha_j, one per source
  double delta = 1.0;             // Gaussian variance parameter, > 0
};

struct TransformResult {
  std::vector<double> potentials;  // u_i, one per target, original order
};

// Reusable evaluation plan: sorted point sets, the permutations that undo the
// sorting, the folded SOE, and (optionally) precomputed per-mode exponentials
// for the gaps between consecutive sorted *targets*.  A plan may be applied
// to any number of strength vectors.
struct TransformPlan {
  std::vector<double> sorted_targets;
  std::vector<double> sorted_sources;
  // sorted_targets[i] == targets[target_perm[i]]; ties keep original order.
  std::vector<std::int64_t> target_perm;
  std::vector<std::int64_t> source_perm;
  SoeApprox soe;  // folded form
  double delta = 1.0;
  bool same_points = false;  // targets and sources identical as given
  bool precomputed = false;
  // Gap table, mode-major: entry k * (N-1) + i holds
  // exp(-t_k * (sorted_targets[i+1] - sorted_targets[i]) / sqrt(delta)).
  // Every entry has modulus <= 1.  Only target gaps are tabulated; exponentials
  // from sources to targets are always computed on the fly.
  std::vector<std::complex<double>> gap_exponentials;
};

// Builds a plan.  The SOE may be in either form (it is folded internally).
// delta must be positive and finite, coordinates finite; throws
// std::domain_error / std::invalid_argument accordingly.  Set precompute to
// tabulate the target-gap exponentials up front.
TransformPlan plan(const TransformRequest& request, const SoeApprox& soe,
                   bool precompute);

// Fills plan.gap_exponentials if not already present (used to time the
// precompute phase separately from planning).
void precompute_gap_table(TransformPlan& plan);

// Fast transform when targets and sources are the same point set
// (plan.same_points must be true).  strengths.size() must match.
// num_threads > 1 distributes SOE modes across threads; the result is
// bit-for-bit identical to the serial one (modes are always combined in
// fixed order).
TransformResult apply_same(const TransformPlan& plan,
                           const std::vector<double>& strengths,
                           int num_threads = 1);

// Fast transform for arbitrary target/source sets via a merge scan of the two
// sorted sequences.  Also valid when the sets coincide.  A target and source
// at exactly equal coordinates interact with exponential factor 1, counted in
// the forward pass only.
TransformResult apply_general(const TransformPlan& plan,
                              const std::vector<double>& strengths,
                              int num_threads = 1);

// Direct O(N*M) evaluation (long double accumulation), for reference and
// error measurement.  If target_subset is non-empty, only those target
// indices are evaluated (result has subset.size() entries, in subset order).
TransformResult direct(const TransformRequest& request,
                       const std::vector<std::int64_t>& target_subset = {});

// Accuracy presets mapping requested precision to the number of folded SOE
// modes n_e; the underlying approximation is the best-rational construction
// of order 2 * n_e.
enum class Precision { Digits4, Digits7, Digits9, Digits11 };

int preset_mode_count(Precision p);   // 3, 4, 5, 6
SoeApprox preset_soe(Precision p);    // folded, preset_mode_count entries

namespace detail {

// Per-mode forward/backward partial sums over the sorted targets, exposed for
// validation: hp[k][i] collects sources at or left of target i (self terms
// included), hm[k][i] those strictly right.  Intended for small problems.
struct ModeSums {
  std::vector<std::vector<std::complex<double>>> hp;
  std::vector<std::vector<std::complex<double>>> hm;
};

ModeSums mode_sums(const TransformPlan& plan,
                   const std::vector<double>& strengths);

}  // namespace detail

}  // namespace fgt
