#include "fgt1d/cf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fgt1d/errors.hpp"
#include "internal/fft.hpp"

namespace fgt {

namespace {

using cplx = std::complex<double>;

// Horner evaluation of a polynomial with descending coefficients.
template <class Coef>
cplx polyval(const std::vector<Coef>& coef, cplx x) {
  cplx acc{};
  for (const auto& c : coef) acc = acc * x + cplx(c);
  return acc;
}

// Monic polynomial (descending coefficients) with the given roots.
std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{cplx(1.0, 0.0)};
  for (cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * r;
    }
    c = std::move(next);
  }
  return c;
}

// Roots of a real polynomial with descending coefficients, via the
// companion-matrix eigenvalues.
std::vector<cplx> poly_roots(std::vector<double> coef) {
  std::size_t lead = 0;
  while (lead < coef.size() && coef[lead] == 0.0) ++lead;
  coef.erase(coef.begin(), coef.begin() + static_cast<long>(lead));
  while (!coef.empty() && coef.back() == 0.0) coef.pop_back();  // roots at 0
  if (coef.size() < 2) return {};
  const int d = static_cast<int>(coef.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) comp(0, j) = -coef[j + 1] / coef[0];
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  if (es.info() != Eigen::Success)
    throw numerical_error("companion-matrix eigensolve failed");
  std::vector<cplx> roots(d);
  for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

}  // namespace

RationalApprox cf_approx(int n) {
  if (n < 2 || n > 14)
    throw std::domain_error(
        "rational construction supports orders 2..14 (beyond that the "
        "double-precision Hankel SVD cannot resolve the coefficients)");
  constexpr int K = 75;
  constexpr int nf = 1024;
  const double scl = 9.0;
  const double two_pi = 6.283185307179586476925286766559;

  std::vector<cplx> w(nf);
  std::vector<cplx> F(nf);
  for (int m = 0; m < nf; ++m) {
    double ang = two_pi * m / nf;
    w[m] = {std::cos(ang), std::sin(ang)};
    double tm = w[m].real();
    F[m] = cplx(std::exp(scl * (tm - 1.0) / (tm + 1.0 + 1e-16)), 0.0);
  }
  std::vector<cplx> Fhat = F;
  internal::fft_pow2(Fhat);
  std::vector<double> c(K + 1);
  for (int m = 0; m <= K; ++m) c[m] = Fhat[m].real() / nf;

  // Analytic part f(w) = sum_{j=0}^{K} c_j w^j at each grid point.
  std::vector<double> c_desc(c.rbegin(), c.rend());
  std::vector<cplx> f(nf);
  for (int m = 0; m < nf; ++m) f[m] = polyval(c_desc, w[m]);

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      int m = i + j + 1;
      if (m <= K) H(i, j) = c[m];
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(H,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double sigma = svd.singularValues()(n);
  std::vector<cplx> upad(nf, cplx{}), vpad(nf, cplx{});
  for (int i = 0; i < K; ++i) {
    upad[i] = cplx(svd.matrixU()(K - 1 - i, n), 0.0);
    vpad[i] = cplx(svd.matrixV()(i, n), 0.0);
  }
  internal::fft_pow2(upad);
  internal::fft_pow2(vpad);

  // rt = f - sigma * w^K * (fft(u)/fft(v)): the error-curve Blaschke factor
  // is peeled off so rt carries the rational part of the analytic function.
  std::vector<cplx> rt(nf);
  for (int m = 0; m < nf; ++m) {
    long km = static_cast<long>(K) * m % nf;
    cplx wK(std::cos(two_pi * km / nf), std::sin(two_pi * km / nf));
    rt[m] = f[m] - sigma * wK * (upad[m] / vpad[m]);
  }

  std::vector<double> vcoef(K);
  for (int i = 0; i < K; ++i) vcoef[i] = svd.matrixV()(i, n);
  std::vector<cplx> roots = poly_roots(vcoef);
  std::vector<cplx> qk;
  for (cplx q : roots)
    if (std::abs(q) > 1.0) qk.push_back(q);
  if (static_cast<int>(qk.size()) != n)
    throw numerical_error(
        "pole finding produced " + std::to_string(qk.size()) +
        " candidates outside the unit disk, expected " + std::to_string(n));

  std::vector<cplx> qc = poly_from_roots(qk);
  std::vector<cplx> pt(nf);
  for (int m = 0; m < nf; ++m) pt[m] = rt[m] * polyval(qc, w[m]);
  internal::fft_pow2(pt);
  std::vector<double> num_desc(n + 1);
  for (int j = 0; j <= n; ++j) num_desc[n - j] = pt[j].real() / nf;

  RationalApprox rat;
  rat.order_n = n;
  rat.hankel_sigma = sigma;
  std::vector<std::pair<cplx, cplx>> pr(n);
  for (int m = 0; m < n; ++m) {
    cplx q = qk[m];
    cplx den(1.0, 0.0);
    for (int j = 0; j < n; ++j)
      if (j != m) den *= q - qk[j];
    cplx resid = polyval(num_desc, q) / den;
    cplx z = scl * (q - 1.0) * (q - 1.0) / ((q + 1.0) * (q + 1.0));
    cplx cres = 4.0 * resid * z / (q * q - 1.0);
    // The principal sqrt of z has positive real part exactly when z stays
    // off the closed negative real axis; a pole there would give a
    // non-decaying exponential.
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw numerical_error(
          "rational approximation produced a pole on the negative real axis");
    pr[m] = {z, cres};
  }
  std::sort(pr.begin(), pr.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  for (auto& e : pr) {
    rat.poles.push_back(e.first);
    rat.residues.push_back(e.second);
  }
  return rat;
}

SoeApprox soe_from_rational(const RationalApprox& rat) {
  if (rat.poles.size() != rat.residues.size())
    throw std::invalid_argument("rational approximation sizes mismatch");
  const double pi = 3.14159265358979323846;
  std::vector<std::pair<cplx, cplx>> tw(rat.poles.size());
  for (std::size_t k = 0; k < rat.poles.size(); ++k) {
    cplx z = rat.poles[k];
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw std::invalid_argument(
          "SOE conversion needs poles off the closed negative real axis");
    cplx t = std::sqrt(z);
    cplx wgt = -rat.residues[k] * std::sqrt(cplx(pi, 0.0) / z);
    tw[k] = {t, wgt};
  }
  std::sort(tw.begin(), tw.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  SoeApprox out;
  out.form = SoeForm::Full;
  for (auto& e : tw) {
    out.nodes.push_back(e.first);
    out.weights.push_back(e.second);
  }
  validate(out);
  return out;
}

SoeApprox cf_soe(int n) { return soe_from_rational(cf_approx(n)); }

}  // namespace fgt
