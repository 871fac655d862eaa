#pragma once

// Balanced-truncation pipeline templated over working precision.
//
// The SOE S(s) = sum w_k e^{-t_k s} is the impulse response of the diagonal
// system (A, b, b^T) with A = diag(-t), b = sqrt(w) -- a complex-symmetric
// realization, so the controllability and observability Gramians are
// conjugates of each other and balancing reduces to a Takagi factorization of
// a single Cauchy-structured Gramian:
//
//   P_ij = b_i conj(b_j) / (t_i + conj(t_j))
//
// 1. GECP Cholesky of P exploiting the quasi-Cauchy structure (pivoted;
//    each step updates the generator vector instead of the matrix, which
//    preserves high relative accuracy for the tiny trailing singular values).
// 2. One-sided complex Jacobi SVD of M = D (L^T L) D.  M is complex
//    symmetric, so after a per-column phase alignment the SVD is a Takagi
//    factorization (U = conj(V)), making the projection T = X_c V S^{-1/2}
//    satisfy T^T T = I.
// 3. Truncation: keep the smallest r with 2 * sum_{k>r} sigma_k <= tol.
// 4. Project: Ahat = T^T A T (complex symmetric), bhat = T^T b.
//
// The eigen-decomposition of Ahat and the residue extraction are left to the
// caller (they differ between the long-double and quad paths).

#include <cstddef>
#include <vector>

#include "fgt1d/errors.hpp"
#include "internal/precision_ops.hpp"

namespace fgt::internal {

template <class Ops>
struct BtProjection {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  int n = 0;
  int rfull = 0;            // numerical rank found by the Cholesky
  int r = 0;                // retained order
  bool unchanged = false;   // r == n: caller keeps the input
  std::vector<R> sigmas;    // rfull Hankel singular values, descending
  std::vector<C> Ahat;      // r x r, column-major, complex symmetric
  std::vector<C> bhat;      // r
};

template <class Ops>
BtProjection<Ops> bt_project(const std::vector<typename Ops::cplx>& t,
                             const std::vector<typename Ops::cplx>& w,
                             double tol) {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  const int n = static_cast<int>(t.size());
  BtProjection<Ops> out;
  out.n = n;
  if (n == 0) {
    out.unchanged = true;
    return out;
  }

  std::vector<C> b(n);
  for (int i = 0; i < n; ++i) b[i] = Ops::c_sqrt(w[i]);

  // --- GECP quasi-Cauchy Cholesky of P ---------------------------------
  std::vector<C> g = b;
  std::vector<char> alive(n, 1);
  std::vector<std::vector<C>> cols;  // unit-lower columns over original rows
  std::vector<R> dvals;
  cols.reserve(n);
  for (int m = 0; m < n; ++m) {
    R dbest = R(-1);
    int p = -1;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      R di = Ops::c_norm(g[i]) / (R(2) * Ops::c_real(t[i]));
      if (di > dbest) {
        dbest = di;
        p = i;
      }
    }
    if (p < 0 || !(dbest > R(0))) break;
    cols.emplace_back(n, C{});
    auto& col = cols.back();
    C gp_conj = Ops::c_conj(g[p]);
    C tp_conj = Ops::c_conj(t[p]);
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      col[i] = g[i] * gp_conj / (t[i] + tp_conj) / dbest;
    }
    dvals.push_back(dbest);
    alive[p] = 0;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      g[i] = g[i] * (t[i] - t[p]) / (t[i] + tp_conj);
    }
  }
  const int rfull = static_cast<int>(cols.size());
  out.rfull = rfull;

  std::vector<R> dsq(rfull);
  for (int m = 0; m < rfull; ++m) dsq[m] = Ops::r_sqrt(dvals[m]);

  // --- M = D (L^T L) D, complex symmetric ------------------------------
  std::vector<std::vector<C>> M(rfull, std::vector<C>(rfull, C{}));
  for (int a = 0; a < rfull; ++a) {
    for (int i = 0; i < rfull; ++i) {
      C s{};
      for (int k = 0; k < n; ++k) s += cols[a][k] * cols[i][k];
      M[a][i] = (dsq[a] * dsq[i]) * s;
    }
  }

  // --- one-sided Jacobi SVD with Takagi phase alignment ----------------
  std::vector<std::vector<C>> W = M;
  std::vector<std::vector<C>> V(rfull, std::vector<C>(rfull, C{}));
  for (int k = 0; k < rfull; ++k) V[k][k] = C(R(1), R(0));
  for (int sweep = 0; sweep < 60; ++sweep) {
    int changed = 0;
    for (int i = 0; i + 1 < rfull; ++i) {
      for (int j = i + 1; j < rfull; ++j) {
        R p = R(0), q = R(0);
        C gg{};
        for (int k = 0; k < rfull; ++k) {
          p += Ops::c_norm(W[i][k]);
          q += Ops::c_norm(W[j][k]);
          gg += Ops::c_conj(W[i][k]) * W[j][k];
        }
        R ag = Ops::c_abs(gg);
        if (!(ag > R(0)) || !(p > R(0)) || !(q > R(0))) continue;
        if (ag <= Ops::eps() * Ops::r_sqrt(p * q) * R(rfull)) continue;
        R phi = Ops::c_arg(gg);
        R tau = (q - p) / (R(2) * ag);
        R sign = tau >= R(0) ? R(1) : R(-1);
        R tt = sign / (Ops::r_abs(tau) + Ops::r_sqrt(R(1) + tau * tau));
        R c = R(1) / Ops::r_sqrt(R(1) + tt * tt);
        R s = c * tt;
        C eip = Ops::c_exp(Ops::make(R(0), phi));
        C eim = Ops::c_conj(eip);
        for (auto* mat : {&W, &V}) {
          auto& ci = (*mat)[i];
          auto& cj = (*mat)[j];
          for (int k = 0; k < rfull; ++k) {
            C x = ci[k];
            C y = cj[k];
            ci[k] = c * x - s * (eim * y);
            cj[k] = s * (eip * x) + c * y;
          }
        }
        ++changed;
      }
    }
    if (changed == 0) break;
  }
  std::vector<R> sig(rfull);
  for (int k = 0; k < rfull; ++k) {
    R s2 = R(0);
    for (int m = 0; m < rfull; ++m) s2 += Ops::c_norm(W[k][m]);
    sig[k] = Ops::r_sqrt(s2);
  }
  std::vector<int> order(rfull);
  for (int k = 0; k < rfull; ++k) order[k] = k;
  for (int a = 0; a < rfull; ++a) {  // selection sort: rfull is small
    int best = a;
    for (int bidx = a + 1; bidx < rfull; ++bidx)
      if (sig[order[bidx]] > sig[order[best]]) best = bidx;
    std::swap(order[a], order[best]);
  }
  {
    std::vector<R> s2(rfull);
    std::vector<std::vector<C>> W2(rfull), V2(rfull);
    for (int k = 0; k < rfull; ++k) {
      s2[k] = sig[order[k]];
      W2[k] = std::move(W[order[k]]);
      V2[k] = std::move(V[order[k]]);
    }
    sig = std::move(s2);
    W = std::move(W2);
    V = std::move(V2);
  }
  for (int k = 0; k < rfull; ++k) {
    if (!(sig[k] > R(0))) continue;
    C utv{};
    for (int m = 0; m < rfull; ++m) utv += W[k][m] * V[k][m];
    utv = utv / sig[k];
    R half = Ops::c_arg(utv) / R(2);
    C ph = Ops::c_exp(Ops::make(R(0), -half));
    for (int m = 0; m < rfull; ++m) V[k][m] = ph * V[k][m];
  }
  out.sigmas = sig;

  // --- truncation rule --------------------------------------------------
  int r = rfull;
  R tail = R(0);
  const R rtol = Ops::from_double(tol);
  for (int k = rfull - 1; k >= 0; --k) {
    if (R(2) * (tail + sig[k]) <= rtol) {
      tail += sig[k];
      r = k;
    } else {
      break;
    }
  }
  out.r = r;
  if (r >= n) {
    out.unchanged = true;
    return out;
  }
  if (r == 0) return out;

  // --- projection T = X_c V_r S_r^{-1/2}, X_c[:,m] = cols[m] * dsq[m] ---
  std::vector<std::vector<C>> T(n, std::vector<C>(r, C{}));
  for (int kk = 0; kk < r; ++kk) {
    R inv = R(1) / Ops::r_sqrt(sig[kk]);
    for (int m = 0; m < rfull; ++m) {
      C vm = V[kk][m] * (dsq[m] * inv);
      for (int i = 0; i < n; ++i) T[i][kk] += cols[m][i] * vm;
    }
  }

  out.Ahat.assign(static_cast<std::size_t>(r) * r, C{});
  out.bhat.assign(r, C{});
  for (int a = 0; a < r; ++a) {
    for (int c2 = a; c2 < r; ++c2) {
      C s{};
      for (int i = 0; i < n; ++i) s += (-R(1) * t[i]) * T[i][a] * T[i][c2];
      out.Ahat[a + static_cast<std::size_t>(c2) * r] = s;
      out.Ahat[c2 + static_cast<std::size_t>(a) * r] = s;
    }
  }
  for (int a = 0; a < r; ++a) {
    C s{};
    for (int i = 0; i < n; ++i) s += T[i][a] * b[i];
    out.bhat[a] = s;
  }
  return out;
}

// Residue of mode k from an eigenpair (lambda, v) of the complex-symmetric
// Ahat: node = -lambda, weight = (bhat^T v)^2 / (v^T v).  For complex
// symmetric matrices the left eigenvector is the transpose of the right one,
// which this exploits; v^T v collapsing to ~0 would mean a defective pair.
template <class Ops>
typename Ops::cplx symmetric_residue(const std::vector<typename Ops::cplx>& bhat,
                                     const std::vector<typename Ops::cplx>& v) {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  C btv{}, vtv{};
  R vnorm = R(0);
  const std::size_t r = bhat.size();
  for (std::size_t j = 0; j < r; ++j) {
    btv += bhat[j] * v[j];
    vtv += v[j] * v[j];
    vnorm += Ops::c_norm(v[j]);
  }
  if (!(Ops::c_abs(vtv) > Ops::from_double(1e-12) * vnorm))
    throw numerical_error(
        "balanced truncation produced a numerically defective eigenpair");
  return btv * btv / vtv;
}

// Partial-pivot LU solve of (A - lambda I) y = rhs, A column-major r x r.
// Returns false on an exactly singular pivot.
template <class Ops>
bool shifted_lu_solve(const std::vector<typename Ops::cplx>& A, int r,
                      typename Ops::cplx lambda,
                      std::vector<typename Ops::cplx>& y) {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  std::vector<C> m(A);
  for (int i = 0; i < r; ++i) m[i + static_cast<std::size_t>(i) * r] -= lambda;
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  for (int col = 0; col < r; ++col) {
    int p = col;
    R best = Ops::c_abs(m[perm[col] + static_cast<std::size_t>(col) * r]);
    for (int i = col + 1; i < r; ++i) {
      R v = Ops::c_abs(m[perm[i] + static_cast<std::size_t>(col) * r]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > R(0))) return false;
    std::swap(perm[col], perm[p]);
    C piv = m[perm[col] + static_cast<std::size_t>(col) * r];
    for (int i = col + 1; i < r; ++i) {
      C f = m[perm[i] + static_cast<std::size_t>(col) * r] / piv;
      m[perm[i] + static_cast<std::size_t>(col) * r] = f;
      for (int j = col + 1; j < r; ++j)
        m[perm[i] + static_cast<std::size_t>(j) * r] -=
            f * m[perm[col] + static_cast<std::size_t>(j) * r];
    }
  }
  std::vector<C> x(r);
  for (int i = 0; i < r; ++i) {  // forward substitution on permuted rows
    C s = y[perm[i]];
    for (int j = 0; j < i; ++j)
      s -= m[perm[i] + static_cast<std::size_t>(j) * r] * x[j];
    x[i] = s;
  }
  for (int i = r - 1; i >= 0; --i) {  // back substitution
    C s = x[i];
    for (int j = i + 1; j < r; ++j)
      s -= m[perm[i] + static_cast<std::size_t>(j) * r] * x[j];
    x[i] = s / m[perm[i] + static_cast<std::size_t>(i) * r];
  }
  y = std::move(x);
  return true;
}

// One step of inverse iteration plus a two-sided (transpose) Rayleigh
// quotient, used to polish eigenpairs obtained at lower precision.
template <class Ops>
void rayleigh_refine(const std::vector<typename Ops::cplx>& Ahat, int r,
                     typename Ops::cplx& lambda,
                     std::vector<typename Ops::cplx>& v, int iterations) {
  using R = typename Ops::real;
  using C = typename Ops::cplx;
  for (int it = 0; it < iterations; ++it) {
    std::vector<C> y = v;
    C shift = lambda;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      y = v;
      ok = shifted_lu_solve<Ops>(Ahat, r, shift, y);
      if (!ok) {
        // exact singularity: nudge the shift by a few ulps and retry
        R mag = Ops::c_abs(shift) + R(1);
        shift += Ops::make(Ops::from_double(1e-30) * mag,
                           Ops::from_double(1e-30) * mag);
      }
    }
    if (!ok)
      throw numerical_error("inverse iteration hit a singular shifted system");
    R nrm = R(0);
    for (int j = 0; j < r; ++j) nrm += Ops::c_norm(y[j]);
    nrm = Ops::r_sqrt(nrm);
    for (int j = 0; j < r; ++j) v[j] = y[j] / nrm;
    // lambda = (v^T A v) / (v^T v)
    C num{}, den{};
    for (int a = 0; a < r; ++a) {
      C av{};
      for (int j = 0; j < r; ++j)
        av += Ahat[a + static_cast<std::size_t>(j) * r] * v[j];
      num += v[a] * av;
      den += v[a] * v[a];
    }
    if (!(Ops::c_abs(den) > Ops::from_double(1e-12)))
      throw numerical_error("Rayleigh refinement met a degenerate eigenvector");
    lambda = num / den;
  }
}

}  // namespace fgt::internal
