#include "fgt1d/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fgt1d/cf.hpp"

namespace fgt {

namespace {

using cplx = std::complex<double>;

// Exponent threshold past which exp(-x) underflows double precision; gap
// factors beyond it are flushed to exact zero so the recurrence restarts
// cleanly without denormal traps.
constexpr double kUnderflowExponent = 745.0;

void check_points(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw std::domain_error(std::string(what) + " must be finite");
}

void sort_with_perm(const std::vector<double>& v, std::vector<double>& sorted,
                    std::vector<std::int64_t>& perm) {
  const std::size_t n = v.size();
  std::vector<std::pair<double, std::int64_t>> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = {v[i], static_cast<std::int64_t>(i)};
  std::sort(tmp.begin(), tmp.end());  // ties resolved by original index
  sorted.resize(n);
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = tmp[i].first;
    perm[i] = tmp[i].second;
  }
}

struct ModeCoef {
  double tre;  // Re(t_k)/sqrt(delta)
  double tim;  // Im(t_k)/sqrt(delta)
  cplx mw;     // multiplier * w_k
};

std::vector<ModeCoef> mode_coefs(const TransformPlan& plan) {
  std::vector<ModeCoef> mc(plan.soe.size());
  const double isq = 1.0 / std::sqrt(plan.delta);
  for (std::size_t k = 0; k < plan.soe.size(); ++k) {
    mc[k].tre = plan.soe.nodes[k].real() * isq;
    mc[k].tim = plan.soe.nodes[k].imag() * isq;
    mc[k].mw = plan.soe.multiplier(k) * plan.soe.weights[k];
  }
  return mc;
}

// exp(-t_k d / sqrt(delta)) for a nonnegative scaled distance d, flushed to
// exact zero on underflow and clamped to unit modulus.
inline cplx decay_factor(const ModeCoef& m, double d) {
  if (d == 0.0) return {1.0, 0.0};
  double a = m.tre * d;
  if (a > kUnderflowExponent) return {0.0, 0.0};
  cplx e = std::exp(cplx(-a, -m.tim * d));
  double n2 = std::norm(e);
  if (n2 > 1.0) e /= std::sqrt(n2);
  return e;
}

class GapLookup {
 public:
  GapLookup(const TransformPlan& plan, const ModeCoef* mc, std::size_t ngaps)
      : plan_(plan), mc_(mc), ngaps_(ngaps) {}
  // factor between sorted targets i and i+1, for mode k
  cplx operator()(std::size_t k, std::size_t i) const {
    if (plan_.precomputed && !plan_.gap_exponentials.empty())
      return plan_.gap_exponentials[k * ngaps_ + i];
    return decay_factor(mc_[k],
                        plan_.sorted_targets[i + 1] - plan_.sorted_targets[i]);
  }

 private:
  const TransformPlan& plan_;
  const ModeCoef* mc_;
  std::size_t ngaps_;
};

std::vector<double> permuted_strengths(const std::vector<std::int64_t>& perm,
                                       const std::vector<double>& strengths) {
  std::vector<double> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = strengths[perm[i]];
  return out;
}

// One folded mode of the same-point transform: backward sweep fills buf with
// h-minus, the forward sweep turns buf[i] into mw * (h-plus + h-minus).
void run_mode_same(const TransformPlan& plan, const ModeCoef& m,
                   const GapLookup& gap, std::size_t k,
                   const std::vector<double>& bs, std::vector<cplx>& buf) {
  (void)plan;
  const std::size_t N = bs.size();
  cplx run{};
  buf[N - 1] = cplx{};
  for (std::size_t i = N - 1; i >= 1; --i) {
    run = gap(k, i - 1) * (run + bs[i]);
    buf[i - 1] = run;
  }
  run = cplx{};
  for (std::size_t i = 0; i < N; ++i) {
    run = i == 0 ? cplx(bs[0]) : bs[i] + gap(k, i - 1) * run;
    buf[i] = m.mw * (run + buf[i]);
  }
}

// One folded mode of the general transform via a merge scan of the sorted
// targets and sources.  Sources are absorbed with directly evaluated
// exponentials; propagation between consecutive targets uses the gap factors.
// A source exactly equal to a target joins in the forward pass with factor 1.
void run_mode_general(const TransformPlan& plan, const ModeCoef& m,
                      const GapLookup& gap, std::size_t k,
                      const std::vector<double>& bs, std::vector<cplx>& buf) {
  const auto& xs = plan.sorted_targets;
  const auto& ys = plan.sorted_sources;
  const std::size_t N = xs.size();
  const std::size_t M = ys.size();
  cplx run{};
  std::size_t j = M;  // backward source cursor (one past)
  for (std::size_t ii = N; ii-- > 0;) {
    if (ii + 1 < N) run *= gap(k, ii);
    while (j > 0 && ys[j - 1] > xs[ii]) {
      run += bs[j - 1] * decay_factor(m, ys[j - 1] - xs[ii]);
      --j;
    }
    buf[ii] = run;
  }
  run = cplx{};
  j = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) run *= gap(k, i - 1);
    while (j < M && ys[j] <= xs[i]) {
      if (ys[j] == xs[i])
        run += bs[j];
      else
        run += bs[j] * decay_factor(m, xs[i] - ys[j]);
      ++j;
    }
    buf[i] = m.mw * (run + buf[i]);
  }
}

template <class RunMode>
TransformResult apply_common(const TransformPlan& plan,
                             const std::vector<double>& strengths,
                             int num_threads, RunMode run_mode) {
  if (strengths.size() != plan.sorted_sources.size())
    throw std::invalid_argument(
        "strengths length must match the planned source count");
  const std::size_t N = plan.sorted_targets.size();
  TransformResult res;
  res.potentials.assign(plan.target_perm.size(), 0.0);
  if (N == 0) return res;
  const std::size_t ne = plan.soe.size();
  std::vector<double> bs = permuted_strengths(plan.source_perm, strengths);
  std::vector<ModeCoef> mc = mode_coefs(plan);
  GapLookup gap(plan, mc.data(), N >= 2 ? N - 1 : 0);
  std::vector<cplx> acc(N, cplx{});
  int threads = std::max(1, num_threads);
  threads = static_cast<int>(std::min<std::size_t>(threads, ne ? ne : 1));
  if (threads <= 1 || ne <= 1) {
    std::vector<cplx> buf(N);
    for (std::size_t k = 0; k < ne; ++k) {
      run_mode(plan, mc[k], gap, k, bs, buf);
      for (std::size_t i = 0; i < N; ++i) acc[i] += buf[i];
    }
  } else {
    // Per-mode buffers, combined in fixed mode order afterwards: bit-for-bit
    // identical to the serial path regardless of thread count.
    std::vector<std::vector<cplx>> bufs(ne);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (std::size_t k = tid; k < ne; k += threads) {
          bufs[k].assign(N, cplx{});
          run_mode(plan, mc[k], gap, k, bs, bufs[k]);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (std::size_t k = 0; k < ne; ++k)
      for (std::size_t i = 0; i < N; ++i) acc[i] += bufs[k][i];
  }
  for (std::size_t i = 0; i < N; ++i)
    res.potentials[plan.target_perm[i]] = acc[i].real();
  return res;
}

}  // namespace

TransformPlan plan(const TransformRequest& request, const SoeApprox& soe,
                   bool precompute) {
  if (!std::isfinite(request.delta) || !(request.delta > 0.0))
    throw std::domain_error("delta must be positive and finite");
  check_points(request.targets, "target coordinates");
  check_points(request.sources, "source coordinates");
  if (request.strengths.size() != request.sources.size())
    throw std::invalid_argument("one strength per source required");
  validate(soe);
  TransformPlan p;
  p.soe = soe.form == SoeForm::Folded ? soe : fold(soe);
  p.delta = request.delta;
  sort_with_perm(request.targets, p.sorted_targets, p.target_perm);
  sort_with_perm(request.sources, p.sorted_sources, p.source_perm);
  p.same_points = request.targets.size() == request.sources.size() &&
                  std::equal(request.targets.begin(), request.targets.end(),
                             request.sources.begin());
  if (precompute) precompute_gap_table(p);
  return p;
}

void precompute_gap_table(TransformPlan& plan) {
  if (plan.precomputed) return;
  const std::size_t N = plan.sorted_targets.size();
  const std::size_t ne = plan.soe.size();
  plan.gap_exponentials.clear();
  if (N >= 2 && ne > 0) {
    std::vector<ModeCoef> mc = mode_coefs(plan);
    plan.gap_exponentials.resize(ne * (N - 1));
    for (std::size_t k = 0; k < ne; ++k) {
      cplx* row = plan.gap_exponentials.data() + k * (N - 1);
      for (std::size_t i = 0; i + 1 < N; ++i)
        row[i] = decay_factor(mc[k],
                              plan.sorted_targets[i + 1] - plan.sorted_targets[i]);
    }
  }
  plan.precomputed = true;
}

TransformResult apply_same(const TransformPlan& plan,
                           const std::vector<double>& strengths,
                           int num_threads) {
  if (!plan.same_points)
    throw std::invalid_argument(
        "apply_same requires a plan built from identical target and source "
        "sets");
  return apply_common(plan, strengths, num_threads, run_mode_same);
}

TransformResult apply_general(const TransformPlan& plan,
                              const std::vector<double>& strengths,
                              int num_threads) {
  return apply_common(plan, strengths, num_threads, run_mode_general);
}

TransformResult direct(const TransformRequest& request,
                       const std::vector<std::int64_t>& target_subset) {
  if (!std::isfinite(request.delta) || !(request.delta > 0.0))
    throw std::domain_error("delta must be positive and finite");
  check_points(request.targets, "target coordinates");
  check_points(request.sources, "source coordinates");
  if (request.strengths.size() != request.sources.size())
    throw std::invalid_argument("one strength per source required");
  std::vector<std::int64_t> idx = target_subset;
  if (idx.empty()) {
    idx.resize(request.targets.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      idx[i] = static_cast<std::int64_t>(i);
  } else {
    for (std::int64_t i : idx)
      if (i < 0 || i >= static_cast<std::int64_t>(request.targets.size()))
        throw std::invalid_argument("target subset index out of range");
  }
  TransformResult res;
  res.potentials.resize(idx.size());
  const long double inv4d = 0.25L / static_cast<long double>(request.delta);
  for (std::size_t m = 0; m < idx.size(); ++m) {
    const long double x = request.targets[idx[m]];
    long double acc = 0.0L;
    for (std::size_t j = 0; j < request.sources.size(); ++j) {
      long double d = x - static_cast<long double>(request.sources[j]);
      long double e = -d * d * inv4d;
      if (e < -11350.0L) continue;  // below long double underflow
      acc += std::exp(e) * static_cast<long double>(request.strengths[j]);
    }
    res.potentials[m] = static_cast<double>(acc);
  }
  return res;
}

int preset_mode_count(Precision p) {
  switch (p) {
    case Precision::Digits4:
      return 3;
    case Precision::Digits7:
      return 4;
    case Precision::Digits9:
      return 5;
    case Precision::Digits11:
      return 6;
  }
  throw std::domain_error("unknown precision preset");
}

SoeApprox preset_soe(Precision p) {
  return fold(cf_soe(2 * preset_mode_count(p)));
}

namespace detail {

ModeSums mode_sums(const TransformPlan& plan,
                   const std::vector<double>& strengths) {
  if (strengths.size() != plan.sorted_sources.size())
    throw std::invalid_argument(
        "strengths length must match the planned source count");
  const auto& xs = plan.sorted_targets;
  const auto& ys = plan.sorted_sources;
  const std::size_t N = xs.size();
  const std::size_t M = ys.size();
  const std::size_t ne = plan.soe.size();
  std::vector<double> bs = permuted_strengths(plan.source_perm, strengths);
  std::vector<ModeCoef> mc = mode_coefs(plan);
  GapLookup gap(plan, mc.data(), N >= 2 ? N - 1 : 0);
  ModeSums out;
  out.hp.assign(ne, std::vector<cplx>(N, cplx{}));
  out.hm.assign(ne, std::vector<cplx>(N, cplx{}));
  for (std::size_t k = 0; k < ne; ++k) {
    cplx run{};
    std::size_t j = M;
    for (std::size_t ii = N; ii-- > 0;) {
      if (ii + 1 < N) run *= gap(k, ii);
      while (j > 0 && ys[j - 1] > xs[ii]) {
        run += bs[j - 1] * decay_factor(mc[k], ys[j - 1] - xs[ii]);
        --j;
      }
      out.hm[k][ii] = run;
    }
    run = cplx{};
    j = 0;
    for (std::size_t i = 0; i < N; ++i) {
      if (i > 0) run *= gap(k, i - 1);
      while (j < M && ys[j] <= xs[i]) {
        run += ys[j] == xs[i] ? cplx(bs[j])
                              : bs[j] * decay_factor(mc[k], xs[i] - ys[j]);
        ++j;
      }
      out.hp[k][i] = run;
    }
  }
  return out;
}

}  // namespace detail

}  // namespace fgt
