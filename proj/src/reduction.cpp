#include "fgt1d/reduction.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fgt1d/contour.hpp"
#include "fgt1d/errors.hpp"
#include "internal/contour_core.hpp"
#include "internal/reduction_core.hpp"

namespace fgt {

namespace {

using cplx = std::complex<double>;
using ldc = std::complex<long double>;
using MatLD = Eigen::Matrix<ldc, Eigen::Dynamic, Eigen::Dynamic>;

// Conjugate re-pairing of a reduced node/weight set computed in finite
// precision: imaginary parts of nominally real nodes are zeroed and conjugate
// partners are averaged so the output is exactly conjugate-symmetric.
SoeApprox assemble_conjugate_pairs(std::vector<cplx> t, std::vector<cplx> w) {
  const std::size_t n = t.size();
  constexpr double kPairTol = 1e-8;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(t[k].real() > 0.0))
      throw numerical_error(
          "reduced system is unstable: an eigenvalue reached the right "
          "half-plane");
  }
  std::vector<char> used(n, 0);
  std::vector<std::pair<cplx, cplx>> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (used[k]) continue;
    double mag = std::abs(t[k]);
    if (std::fabs(t[k].imag()) <= kPairTol * mag) {
      used[k] = 1;
      out.push_back({{t[k].real(), 0.0}, {w[k].real(), 0.0}});
      continue;
    }
    // nearest unused node to conj(t_k)
    cplx want = std::conj(t[k]);
    std::size_t best = n;
    double bestd = kPairTol * mag;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || used[j]) continue;
      if (t[k].imag() * t[j].imag() >= 0.0) continue;
      double d = std::abs(t[j] - want);
      if (d <= bestd) {
        bestd = d;
        best = j;
      }
    }
    if (best == n)
      throw numerical_error(
          "reduced system lost conjugate symmetry; no partner for a complex "
          "node");
    used[k] = used[best] = 1;
    std::size_t up = t[k].imag() > 0.0 ? k : best;
    std::size_t dn = up == k ? best : k;
    cplx tp = 0.5 * (t[up] + std::conj(t[dn]));
    cplx wp = 0.5 * (w[up] + std::conj(w[dn]));
    out.push_back({tp, wp});
    out.push_back({std::conj(tp), std::conj(wp)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  SoeApprox soe;
  soe.form = SoeForm::Full;
  for (auto& e : out) {
    soe.nodes.push_back(e.first);
    soe.weights.push_back(e.second);
  }
  validate(soe);
  return soe;
}

template <class R>
std::vector<double> sigmas_to_double(const std::vector<R>& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = static_cast<double>(s[i]);
  return out;
}

std::vector<double> sigmas_to_double(const std::vector<qd::qreal>& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = qd::to_double(s[i]);
  return out;
}

// Eigen-decomposition of the projected complex-symmetric matrix in long
// double, residues via the transpose-eigenvector formula.
void finish_ld(const internal::BtProjection<internal::ops_ld>& proj,
               std::vector<cplx>& t_out, std::vector<cplx>& w_out) {
  const int r = proj.r;
  MatLD A(r, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      A(i, j) = proj.Ahat[i + static_cast<std::size_t>(j) * r];
  Eigen::ComplexEigenSolver<MatLD> es(A);
  if (es.info() != Eigen::Success)
    throw numerical_error("eigendecomposition of the reduced system failed");
  t_out.resize(r);
  w_out.resize(r);
  for (int k = 0; k < r; ++k) {
    ldc lambda = es.eigenvalues()(k);
    std::vector<ldc> v(r);
    for (int i = 0; i < r; ++i) v[i] = es.eigenvectors()(i, k);
    ldc wk = internal::symmetric_residue<internal::ops_ld>(proj.bhat, v);
    t_out[k] = cplx(static_cast<double>(-lambda.real()),
                    static_cast<double>(-lambda.imag()));
    w_out[k] = cplx(static_cast<double>(wk.real()),
                    static_cast<double>(wk.imag()));
  }
}

// Quad path: long-double eigensolve provides starting guesses, each pair is
// polished by quad inverse iteration + transpose Rayleigh quotients, and the
// residues are evaluated in quad.
void finish_quad(const internal::BtProjection<internal::ops_quad>& proj,
                 std::vector<cplx>& t_out, std::vector<cplx>& w_out) {
  const int r = proj.r;
  MatLD A(r, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      A(i, j) = qd::to_std_ld(proj.Ahat[i + static_cast<std::size_t>(j) * r]);
  Eigen::ComplexEigenSolver<MatLD> es(A);
  if (es.info() != Eigen::Success)
    throw numerical_error("eigendecomposition of the reduced system failed");
  std::vector<qd::qcomplex> lambdas(r);
  t_out.resize(r);
  w_out.resize(r);
  for (int k = 0; k < r; ++k) {
    qd::qcomplex lambda = qd::from_std(es.eigenvalues()(k));
    std::vector<qd::qcomplex> v(r);
    for (int i = 0; i < r; ++i) v[i] = qd::from_std(es.eigenvectors()(i, k));
    internal::rayleigh_refine<internal::ops_quad>(proj.Ahat, r, lambda, v, 4);
    // diverged refinements land far from the long-double estimate
    qd::qcomplex diff = lambda - qd::from_std(es.eigenvalues()(k));
    if (qd::to_double(qd::abs(diff)) >
        0.1 * (1.0 + std::abs(es.eigenvalues()(k))))
      throw numerical_error("eigenvalue refinement diverged");
    lambdas[k] = lambda;
    qd::qcomplex wk = internal::symmetric_residue<internal::ops_quad>(proj.bhat, v);
    t_out[k] = qd::to_std(qd::qcomplex{} - lambda);
    w_out[k] = qd::to_std(wk);
  }
  // refinement must not have collapsed two pairs onto one eigenvalue
  double maxabs = 0.0;
  for (int k = 0; k < r; ++k)
    maxabs = std::max(maxabs, qd::to_double(qd::abs(lambdas[k])));
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      double sep = qd::to_double(qd::abs(lambdas[a] - lambdas[b]));
      if (sep < 1e-8 * maxabs)
        throw numerical_error(
            "eigenvalue refinement collapsed two reduced modes");
    }
}

void check_tol(double tol) {
  if (!std::isfinite(tol) || !(tol > 0.0))
    throw std::domain_error("reduction tolerance must be positive and finite");
}

}  // namespace

std::pair<SoeApprox, ReductionReport> reduce(const SoeApprox& soe, double tol) {
  check_tol(tol);
  if (soe.form == SoeForm::Folded)
    throw std::invalid_argument(
        "reduce expects the full form; unfold the SOE first");
  validate(soe);
  const int n = static_cast<int>(soe.size());
  ReductionReport report;
  report.original_n = n;
  report.tolerance = tol;
  if (n == 0) {
    report.reduced_n = 0;
    return {soe, report};
  }
  std::vector<ldc> t(n), w(n);
  for (int i = 0; i < n; ++i) {
    t[i] = ldc(soe.nodes[i].real(), soe.nodes[i].imag());
    w[i] = ldc(soe.weights[i].real(), soe.weights[i].imag());
  }
  auto proj = internal::bt_project<internal::ops_ld>(t, w, tol);
  report.hankel_singular_values = sigmas_to_double(proj.sigmas);
  if (proj.unchanged) {
    report.reduced_n = n;
    return {soe, report};
  }
  if (proj.r == 0) {
    report.reduced_n = 0;
    SoeApprox empty;
    empty.form = SoeForm::Full;
    return {empty, report};
  }
  std::vector<cplx> tr, wr;
  finish_ld(proj, tr, wr);
  SoeApprox out = assemble_conjugate_pairs(std::move(tr), std::move(wr));
  report.reduced_n = static_cast<int>(out.size());
  return {out, report};
}

std::pair<SoeApprox, ReductionReport> stabilized_reduced_soe(int n, double tol) {
  check_tol(tol);
  if (n < 1) throw std::domain_error("contour quadrature requires n >= 1");
  const qd::qreal theta_p =
      static_cast<qd::qreal>(internal::stabilized_theta_default(n));
  std::vector<qd::qcomplex> t, w;
  internal::contour_nodes<internal::ops_quad>(
      ContourKind::StabilizedHyperbolic, n, theta_p, t, w);
  ReductionReport report;
  report.original_n = n;
  report.tolerance = tol;
  auto proj = internal::bt_project<internal::ops_quad>(t, w, tol);
  report.hankel_singular_values = sigmas_to_double(proj.sigmas);
  if (proj.unchanged) {
    SoeApprox out;
    out.form = SoeForm::Full;
    for (int i = 0; i < n; ++i) {
      out.nodes.push_back(qd::to_std(t[i]));
      out.weights.push_back(qd::to_std(w[i]));
    }
    validate(out);
    report.reduced_n = n;
    return {out, report};
  }
  if (proj.r == 0) {
    report.reduced_n = 0;
    SoeApprox empty;
    empty.form = SoeForm::Full;
    return {empty, report};
  }
  std::vector<cplx> tr, wr;
  finish_quad(proj, tr, wr);
  SoeApprox out = assemble_conjugate_pairs(std::move(tr), std::move(wr));
  report.reduced_n = static_cast<int>(out.size());
  return {out, report};
}

}  // namespace fgt
