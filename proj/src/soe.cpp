#include "fgt1d/soe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fgt {

namespace {

// Exponent threshold past which exp(-x) underflows double precision.
constexpr double kUnderflowExponent = 745.0;

bool finite_cplx(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <class Cplx, class Real>
Real eval_sum(const SoeApprox& soe, Real s) {
  Cplx acc{};
  for (std::size_t k = 0; k < soe.size(); ++k) {
    Cplx t(soe.nodes[k].real(), soe.nodes[k].imag());
    if (t.real() * s > Real(kUnderflowExponent)) continue;
    Cplx w(soe.weights[k].real(), soe.weights[k].imag());
    Real m(soe.multiplier(k));
    acc += m * w * std::exp(-t * s);
  }
  return acc.real();
}

template <class Real>
ErrorReport max_error_impl(const SoeApprox& soe) {
  validate(soe);
  constexpr int kChunk = 4096;
  const int total = kErrorGridLogPoints + 1;  // {0} plus the log grid
  const int nchunks = (total + kChunk - 1) / kChunk;
  std::vector<double> chunk_err(nchunks, 0.0);
  std::vector<double> chunk_arg(nchunks, 0.0);

  auto run_chunk = [&](int c) {
    const int lo = c * kChunk;
    const int hi = std::min(total, lo + kChunk);
    double best = -1.0, bestx = 0.0;
    for (int i = lo; i < hi; ++i) {
      double x = error_grid_point(i);
      Real s = Real(x);
      Real g = std::exp(-s * s / Real(4));
      Real v = eval_sum<std::complex<Real>>(soe, s);
      double e = static_cast<double>(std::fabs(g - v));
      if (e > best) {  // ties keep the earlier (smaller) x
        best = e;
        bestx = x;
      }
    }
    chunk_err[c] = best;
    chunk_arg[c] = bestx;
  };

  unsigned hw = std::thread::hardware_concurrency();
  int nthreads = std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, nchunks));
  if (nthreads == 1) {
    for (int c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int tid = 0; tid < nthreads; ++tid) {
      pool.emplace_back([&, tid] {
        for (int c = tid; c < nchunks; c += nthreads) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  ErrorReport rep;
  int nfull = 0;
  for (std::size_t k = 0; k < soe.size(); ++k)
    nfull += static_cast<int>(soe.multiplier(k));
  rep.n = nfull;
  double best = -1.0;
  for (int c = 0; c < nchunks; ++c) {
    if (chunk_err[c] > best) {
      best = chunk_err[c];
      rep.argmax_x = chunk_arg[c];
    }
  }
  rep.max_abs_error = best;
  return rep;
}

struct NodeWeightLess {
  bool operator()(const std::pair<std::complex<double>, std::complex<double>>& a,
                  const std::pair<std::complex<double>, std::complex<double>>& b) const {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  }
};

}  // namespace

void validate(const SoeApprox& soe) {
  if (soe.nodes.size() != soe.weights.size())
    throw std::invalid_argument("SOE node/weight count mismatch");
  if (soe.form == SoeForm::Folded) {
    if (soe.self_conjugate.size() != soe.nodes.size())
      throw std::invalid_argument(
          "folded SOE requires one self-conjugate flag per node");
  } else if (!soe.self_conjugate.empty()) {
    throw std::invalid_argument("full-form SOE must not carry fold flags");
  }
  for (std::size_t k = 0; k < soe.size(); ++k) {
    if (!finite_cplx(soe.nodes[k]) || !finite_cplx(soe.weights[k]))
      throw std::invalid_argument("SOE coefficients must be finite");
    if (!(soe.nodes[k].real() > 0.0))
      throw std::invalid_argument(
          "SOE nodes must lie in the open right half-plane");
    if (soe.form == SoeForm::Folded) {
      if (soe.nodes[k].imag() < 0.0)
        throw std::invalid_argument(
            "folded SOE stores the Im(t) >= 0 representative of each pair");
      if (soe.self_conjugate[k] && soe.nodes[k].imag() != 0.0)
        throw std::invalid_argument(
            "self-conjugate folded node must have a real t");
    }
  }
}

double evaluate(const SoeApprox& soe, double x, double delta) {
  validate(soe);
  if (!std::isfinite(x)) throw std::domain_error("evaluate: x must be finite");
  if (!std::isfinite(delta) || !(delta > 0.0))
    throw std::domain_error("evaluate: delta must be positive and finite");
  double s = std::fabs(x) / std::sqrt(delta);
  return eval_sum<std::complex<double>>(soe, s);
}

SoeApprox fold(const SoeApprox& soe) {
  validate(soe);
  if (soe.form == SoeForm::Folded) return soe;
  const std::size_t n = soe.size();
  std::vector<char> used(n, 0);
  std::vector<std::pair<std::complex<double>, std::complex<double>>> entries;
  std::vector<std::uint8_t> flags;
  // First, canonicalise (near-)real nodes.
  std::vector<int> kind(n, 0);  // 0 real, +1 upper, -1 lower
  for (std::size_t k = 0; k < n; ++k) {
    double mag = std::abs(soe.nodes[k]);
    if (std::fabs(soe.nodes[k].imag()) <= 1e-12 * mag) {
      kind[k] = 0;
      if (std::fabs(soe.weights[k].imag()) >
          1e-9 * (1.0 + std::abs(soe.weights[k])))
        throw std::invalid_argument(
            "fold: real node " + std::to_string(k) +
            " carries a non-real weight; the sum cannot be real-valued");
    } else {
      kind[k] = soe.nodes[k].imag() > 0.0 ? 1 : -1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (used[k]) continue;
    if (kind[k] == 0) {
      used[k] = 1;
      entries.push_back({{soe.nodes[k].real(), 0.0},
                         {soe.weights[k].real(), 0.0}});
      flags.push_back(1);
      continue;
    }
    // Find the unused conjugate partner.
    std::complex<double> want = std::conj(soe.nodes[k]);
    double tol = 1e-12 * std::abs(soe.nodes[k]);
    std::size_t match = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || used[j] || kind[j] == 0 || kind[j] == kind[k]) continue;
      if (std::abs(soe.nodes[j] - want) <= tol) {
        match = j;
        break;
      }
    }
    if (match == n) {
      std::ostringstream msg;
      msg << "fold: node " << k << " (t = " << soe.nodes[k].real() << " + "
          << soe.nodes[k].imag() << "i) has no conjugate partner";
      throw std::invalid_argument(msg.str());
    }
    used[k] = used[match] = 1;
    std::size_t up = kind[k] > 0 ? k : match;
    std::size_t dn = kind[k] > 0 ? match : k;
    std::complex<double> t =
        0.5 * (soe.nodes[up] + std::conj(soe.nodes[dn]));
    std::complex<double> w =
        0.5 * (soe.weights[up] + std::conj(soe.weights[dn]));
    entries.push_back({t, w});
    flags.push_back(0);
  }
  // Deterministic order.
  std::vector<std::size_t> idx(entries.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return NodeWeightLess{}(entries[a], entries[b]);
  });
  SoeApprox out;
  out.form = SoeForm::Folded;
  for (std::size_t i : idx) {
    out.nodes.push_back(entries[i].first);
    out.weights.push_back(entries[i].second);
    out.self_conjugate.push_back(flags[i]);
  }
  return out;
}

SoeApprox unfold(const SoeApprox& soe) {
  validate(soe);
  if (soe.form == SoeForm::Full) return soe;
  std::vector<std::pair<std::complex<double>, std::complex<double>>> entries;
  for (std::size_t k = 0; k < soe.size(); ++k) {
    entries.push_back({soe.nodes[k], soe.weights[k]});
    if (!soe.self_conjugate[k])
      entries.push_back({std::conj(soe.nodes[k]), std::conj(soe.weights[k])});
  }
  std::sort(entries.begin(), entries.end(), NodeWeightLess{});
  SoeApprox out;
  out.form = SoeForm::Full;
  for (auto& e : entries) {
    out.nodes.push_back(e.first);
    out.weights.push_back(e.second);
  }
  return out;
}

double error_grid_point(int i) {
  if (i <= 0) return 0.0;
  double frac = static_cast<double>(i - 1) / (kErrorGridLogPoints - 1);
  return std::pow(10.0, -5.0 + 7.0 * frac);
}

ErrorReport max_error(const SoeApprox& soe) {
  return max_error_impl<double>(soe);
}

ErrorReport max_error_extended(const SoeApprox& soe) {
  return max_error_impl<long double>(soe);
}

void write_coefficient_table(std::ostream& os, const SoeApprox& soe,
                             const std::string& source_tag) {
  validate(soe);
  os << "soe n=" << soe.size() << " form="
     << (soe.form == SoeForm::Folded ? "folded" : "full");
  if (!source_tag.empty()) os << " source=" << source_tag;
  os << "\n";
  char buf[160];
  for (std::size_t k = 0; k < soe.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.16e %.16e %.16e %.16e\n",
                  soe.nodes[k].real(), soe.nodes[k].imag(),
                  soe.weights[k].real(), soe.weights[k].imag());
    os << buf;
  }
}

SoeApprox read_coefficient_table(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw std::invalid_argument("coefficient table: empty input");
  std::istringstream hs(header);
  std::string tag;
  hs >> tag;
  if (tag != "soe")
    throw std::invalid_argument(
        "coefficient table: header must start with 'soe'");
  long n = -1;
  std::string form;
  std::string kv;
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("coefficient table: malformed header field '" +
                                  kv + "'");
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    if (key == "n") {
      try {
        n = std::stol(val);
      } catch (const std::exception&) {
        throw std::invalid_argument("coefficient table: bad n value");
      }
    } else if (key == "form") {
      form = val;
    }
    // other keys (source, kind, ...) are informational
  }
  if (n < 0) throw std::invalid_argument("coefficient table: missing n");
  if (form != "full" && form != "folded")
    throw std::invalid_argument("coefficient table: missing or bad form");
  SoeApprox out;
  out.form = form == "folded" ? SoeForm::Folded : SoeForm::Full;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double tr, ti, wr, wi;
    if (!(ls >> tr >> ti >> wr >> wi))
      throw std::invalid_argument("coefficient table: malformed row '" + line +
                                  "'");
    out.nodes.emplace_back(tr, ti);
    out.weights.emplace_back(wr, wi);
    if (out.form == SoeForm::Folded) {
      if (ti < 0.0)
        throw std::invalid_argument(
            "coefficient table: folded rows must have Im(t) >= 0");
      out.self_conjugate.push_back(ti == 0.0 ? 1 : 0);
    }
  }
  if (static_cast<long>(out.size()) != n)
    throw std::invalid_argument(
        "coefficient table: row count does not match header n");
  validate(out);
  return out;
}

void save_coefficient_table(const std::string& path, const SoeApprox& soe,
                            const std::string& source_tag) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open for writing: " + path);
  write_coefficient_table(f, soe, source_tag);
}

SoeApprox load_coefficient_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open for reading: " + path);
  return read_coefficient_table(f);
}

double fit_geometric_rate(const std::vector<int>& ns,
                          const std::vector<double>& es, double floor) {
  if (ns.size() != es.size())
    throw std::invalid_argument("fit_geometric_rate: length mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i > 0 && !(es[i] < es[i - 1])) break;  // saturation / non-monotone
    if (!(es[i] >= floor)) break;              // below the fit floor
    xs.push_back(static_cast<double>(ns[i]));
    ys.push_back(std::log(es[i]));
  }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return std::exp(-slope);
}

}  // namespace fgt
