#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fgt1d/cf.hpp"
#include "fgt1d/contour.hpp"
#include "fgt1d/reduction.hpp"
#include "fgt1d/soe.hpp"

using fgt::SoeApprox;
using cplx = std::complex<double>;

namespace {

SoeApprox contour(fgt::ContourKind kind, int n) {
  fgt::ContourSpec spec;
  spec.kind = kind;
  spec.n = n;
  return fgt::soe_from_contour(spec);
}

// Independent Hankel singular values: sigma_k = sqrt(eig(P * Q)) where the
// controllability and observability Gramians of the diagonal realization
// (A, b, b^T) = (-diag(t), sqrt(w), sqrt(w)^T) have the closed Cauchy forms
// P_ij = b_i conj(b_j) / (t_i + conj(t_j)) and Q = conj(P).
std::vector<double> brute_sigmas(const SoeApprox& soe) {
  using Cplx = std::complex<long double>;
  using Mat =
      Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(soe.size());
  std::vector<Cplx> t(n), b(n);
  for (int i = 0; i < n; ++i) {
    t[i] = Cplx(soe.nodes[i].real(), soe.nodes[i].imag());
    b[i] = std::sqrt(Cplx(soe.weights[i].real(), soe.weights[i].imag()));
  }
  Mat P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      P(i, j) = b[i] * std::conj(b[j]) / (t[i] + std::conj(t[j]));
  Mat M = P * P.conjugate();
  Eigen::ComplexEigenSolver<Mat> es(M);
  std::vector<double> sig;
  for (int i = 0; i < n; ++i) {
    long double ev = es.eigenvalues()(i).real();
    sig.push_back(ev > 0 ? static_cast<double>(std::sqrt(ev)) : 0.0);
  }
  std::sort(sig.begin(), sig.end(), std::greater<double>());
  return sig;
}

}  // namespace

TEST_CASE("Hankel singular values agree with the brute-force Gramian product") {
  for (auto soe : {fgt::cf_soe(6), contour(fgt::ContourKind::Parabolic, 12)}) {
    auto [red, rep] = fgt::reduce(soe, 1e-30);  // tolerance keeps everything
    auto oracle = brute_sigmas(soe);
    REQUIRE(rep.hankel_singular_values.size() == soe.size());
    REQUIRE(oracle.size() == soe.size());
    for (std::size_t k = 0; k < soe.size(); ++k) {
      double ratio = oracle[0] / oracle[k];
      if (ratio > 1e12) break;  // beyond the brute oracle's resolution
      // the brute eigensolve loses accuracy quadratically in sigma_0/sigma_k
      double tol = 1e-9 + 1e-16 * ratio * ratio;
      CHECK(std::fabs(rep.hankel_singular_values[k] - oracle[k]) <=
            tol * oracle[k]);
    }
    // descending order
    for (std::size_t k = 1; k < rep.hankel_singular_values.size(); ++k)
      CHECK(rep.hankel_singular_values[k] <=
            rep.hankel_singular_values[k - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("tiny tolerance keeps the order, huge tolerance empties the model") {
  SoeApprox soe = fgt::cf_soe(8);
  auto [same, rep1] = fgt::reduce(soe, 1e-30);
  CHECK(rep1.reduced_n == 8);
  CHECK(same.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(same.nodes[k] == soe.nodes[k]);  // order kept -> model untouched
    CHECK(same.weights[k] == soe.weights[k]);
  }

  double twice_total = 0.0;
  for (double s : rep1.hankel_singular_values) twice_total += 2.0 * s;
  auto [empty, rep0] = fgt::reduce(soe, twice_total * 1.01);
  CHECK(rep0.reduced_n == 0);
  CHECK(empty.size() == 0);
  CHECK(fgt::evaluate(empty, 0.5, 1.0) == 0.0);
}

TEST_CASE("truncation point honors the 2 sum sigma tail rule") {
  SoeApprox soe = contour(fgt::ContourKind::Parabolic, 16);
  double e16 = fgt::max_error(soe).max_abs_error;
  double tol = e16 / 3.0;
  auto [red, rep] = fgt::reduce(soe, tol);
  const auto& sig = rep.hankel_singular_values;
  // tail dropped is admissible ...
  double tail = 0.0;
  for (std::size_t k = rep.reduced_n; k < sig.size(); ++k) tail += 2.0 * sig[k];
  CHECK(tail <= tol);
  // ... and one more kept term would have been redundant (minimality)
  if (rep.reduced_n > 0)
    CHECK(tail + 2.0 * sig[rep.reduced_n - 1] > tol);
}

TEST_CASE("reduced model keeps accuracy within the prescribed tolerance") {
  for (auto kind :
       {fgt::ContourKind::Parabolic, fgt::ContourKind::Hyperbolic,
        fgt::ContourKind::ModifiedTalbot}) {
    SoeApprox soe = contour(kind, 16);
    double en = fgt::max_error(soe).max_abs_error;
    auto [red, rep] = fgt::reduce(soe, en / 3.0);
    CHECK(rep.reduced_n < rep.original_n);
    double ered = fgt::max_error(red).max_abs_error;
    CHECK(ered <= en + en / 3.0);
  }
}

TEST_CASE("reduction is idempotent at fixed tolerance") {
  SoeApprox soe = contour(fgt::ContourKind::Hyperbolic, 16);
  double tol = fgt::max_error(soe).max_abs_error / 3.0;
  auto [red1, rep1] = fgt::reduce(soe, tol);
  auto [red2, rep2] = fgt::reduce(red1, tol);
  CHECK(rep2.reduced_n == rep1.reduced_n);
}

TEST_CASE("reduced output folds cleanly (conjugate symmetry preserved)") {
  auto [red, rep] = fgt::reduce(contour(fgt::ContourKind::Parabolic, 20),
                                 1e-9);
  CHECK(rep.reduced_n < 20);
  auto folded = fgt::fold(red);  // throws if pairing was lost
  CHECK(folded.size() >= red.size() / 2);
}

TEST_CASE("argument errors") {
  SoeApprox soe = fgt::cf_soe(4);
  CHECK_THROWS_AS(fgt::reduce(soe, 0.0), std::domain_error);
  CHECK_THROWS_AS(fgt::reduce(soe, -1e-3), std::domain_error);
  auto folded = fgt::fold(soe);
  CHECK_THROWS_AS(fgt::reduce(folded, 1e-6), std::invalid_argument);
}

TEST_CASE("empty input reduces to empty output") {
  SoeApprox empty;
  auto [red, rep] = fgt::reduce(empty, 1e-6);
  CHECK(rep.original_n == 0);
  CHECK(rep.reduced_n == 0);
  CHECK(red.size() == 0);
}

TEST_CASE("high-accuracy recipe: 64-node stabilized contour to 16 terms") {
  auto [red, rep] = fgt::stabilized_reduced_soe(64, 1e-15);
  CHECK(rep.original_n == 64);
  CHECK(rep.reduced_n == 16);
  REQUIRE(red.size() == 16);
  double e = fgt::max_error_extended(red).max_abs_error;
  CHECK(e > 1e-16);
  CHECK(e < 2e-14);
  // weights are large and cancel: the plain estimator only sees roundoff
  double wsum = 0.0;
  for (auto w : red.weights) wsum += std::abs(w);
  CHECK(wsum > 100.0);
  auto folded = fgt::fold(red);
  CHECK(folded.size() == 8);
}

TEST_CASE("intermediate stabilized orders reduce into the low twenties") {
  auto [red, rep] = fgt::stabilized_reduced_soe(32, 1e-15);
  CHECK(rep.reduced_n <= 18);
  double e = fgt::max_error(red).max_abs_error;
  CHECK(e < 1e-8);
}
