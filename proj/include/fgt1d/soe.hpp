#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fgt {

// A sum-of-exponentials approximation of the Gaussian kernel
//
//     G(x; delta) = exp(-x^2 / (4 delta))
//     S(x; delta) = sum_k m_k * w_k * exp(-t_k |x| / sqrt(delta))
//
// In Full form every node appears explicitly and m_k = 1.  Complex nodes come
// in conjugate pairs so that S is real-valued.
//
// In Folded form each conjugate pair is stored once by its Im(t) > 0
// representative with multiplier m_k = 2, the real part being taken once at
// the end of the mode sum; nodes that are their own conjugate (real t, real w)
// keep multiplier m_k = 1 and are flagged in self_conjugate.
enum class SoeForm { Full, Folded };

struct SoeApprox {
  std::vector<std::complex<double>> nodes;    // t_k, Re(t_k) > 0
  std::vector<std::complex<double>> weights;  // w_k
  SoeForm form = SoeForm::Full;
  // Folded form only: flags[k] != 0 marks a self-conjugate (real) node.
  std::vector<std::uint8_t> self_conjugate;

  std::size_t size() const { return nodes.size(); }

  double multiplier(std::size_t k) const {
    if (form == SoeForm::Full) return 1.0;
    return self_conjugate[k] ? 1.0 : 2.0;
  }
};

// Checks structural invariants (sizes, Re(t) > 0, form-specific flags).
// Throws std::invalid_argument on violation.
void validate(const SoeApprox& soe);

// Evaluates S(x; delta).  delta must be positive and finite, x finite
// (std::domain_error otherwise).  Works for both forms; an empty SOE
// evaluates to 0.
double evaluate(const SoeApprox& soe, double x, double delta);

// Converts Full -> Folded by pairing conjugate nodes (relative tolerance
// 1e-12 on |t_i - conj(t_j)|).  Throws std::invalid_argument naming the
// offending node if some complex node has no conjugate partner.  Nodes whose
// imaginary part is negligible are canonicalised to exactly real.
SoeApprox fold(const SoeApprox& soe);

// Converts Folded -> Full, expanding each multiplier-2 entry into an explicit
// conjugate pair.  Output is sorted by (Re t, Im t).
SoeApprox unfold(const SoeApprox& soe);

struct ErrorReport {
  int n = 0;                  // number of exponentials (folded pairs count 2)
  double max_abs_error = 0.0; // max |G - S| over the standard grid
  double argmax_x = 0.0;      // grid point attaining the max (smallest on tie)
};

// Number of logarithmically spaced grid points used by max_error.
inline constexpr int kErrorGridLogPoints = 100000;

// i = 0 -> x = 0; i in [1, kErrorGridLogPoints] -> x = 10^(-5 + 7 (i-1)/(kErrorGridLogPoints-1)),
// i.e. the inclusive endpoints are 1e-5 and 1e2.
double error_grid_point(int i);

// Max absolute deviation |G(x;1) - S(x;1)| over {0} plus 100000 log-spaced
// points on [1e-5, 1e2].  Deterministic under any thread count: the grid is
// split into fixed-size chunks reduced independently; ties prefer smaller x.
ErrorReport max_error(const SoeApprox& soe);

// Same grid and semantics, but each term and the mode sum are accumulated in
// long double.  Use when the weights are large enough that double-precision
// evaluation roundoff (~eps * sum|w|) would mask the true deviation.
ErrorReport max_error_extended(const SoeApprox& soe);

// Least-squares fit of log(E) against n over the contiguous prefix where E is
// strictly decreasing and at least `floor` (points past saturation are
// excluded).  Returns rho such that E ~ C * rho^(-n), or NaN when fewer than
// two points qualify.  Inputs must be the same length (std::invalid_argument).
double fit_geometric_rate(const std::vector<int>& ns,
                          const std::vector<double>& es, double floor = 1e-12);

// --- Coefficient tables ------------------------------------------------
//
// Text format, one node per row:
//
//   soe n=<count> form=<full|folded> source=<tag> [key=value ...]
//   <Re t> <Im t> <Re w> <Im w>
//   ...
//
// Values are written with 17 significant digits so the round trip is exact.
// On read, extra key=value pairs in the header are ignored; for folded tables
// the multiplier is inferred from the sign of Im(t) (zero -> self-conjugate).

void write_coefficient_table(std::ostream& os, const SoeApprox& soe,
                             const std::string& source_tag);
SoeApprox read_coefficient_table(std::istream& is);

void save_coefficient_table(const std::string& path, const SoeApprox& soe,
                            const std::string& source_tag);
SoeApprox load_coefficient_table(const std::string& path);

}  // namespace fgt
