// Command-line driver: SOE construction, convergence studies, model
// reduction, fast-transform benchmarks, delta sweeps, and file-based
// transforms.  Exit codes: 0 success, 2 usage error, 1 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fgt1d/cf.hpp"
#include "fgt1d/contour.hpp"
#include "fgt1d/errors.hpp"
#include "fgt1d/reduction.hpp"
#include "fgt1d/rng.hpp"
#include "fgt1d/soe.hpp"
#include "fgt1d/transform.hpp"

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fgt::SoeApprox build_soe(const std::string& method, int n,
                         std::optional<double> theta) {
  if (method == "cf") {
    if (theta)
      throw std::domain_error("--theta does not apply to the cf method");
    return fgt::cf_soe(n);
  }
  auto kind = fgt::contour_kind_from_name(method);
  if (!kind)
    throw std::domain_error(
        "unknown method '" + method +
        "' (expected parabolic, hyperbolic, talbot, stabilized-hyperbolic, "
        "or cf)");
  fgt::ContourSpec spec;
  spec.kind = *kind;
  spec.n = n;
  spec.theta_param = theta;
  return fgt::soe_from_contour(spec);
}

std::string soe_source_tag(const std::string& method) {
  if (method == "cf") return "cf";
  return "contour kind=" + method;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open for writing: " + path);
  return file;
}

// ---------------------------------------------------------------- soe ----

int cmd_soe(const std::string& method, int n, std::optional<double> theta,
            const std::string& out) {
  fgt::SoeApprox soe = build_soe(method, n, theta);
  fgt::ErrorReport rep = fgt::max_error(soe);
  if (!out.empty()) fgt::save_coefficient_table(out, soe, soe_source_tag(method));
  std::ostringstream line;
  line.precision(17);
  line << "n=" << rep.n << " max_error=" << rep.max_abs_error
       << " argmax_x=" << rep.argmax_x;
  std::cout << line.str() << "\n";
  return 0;
}

// -------------------------------------------------------- convergence ----

int cmd_convergence(const std::string& method, std::vector<int> ns,
                    bool with_reduce, const std::string& out, bool as_json) {
  if (ns.empty()) throw std::domain_error("--n requires at least one order");
  std::sort(ns.begin(), ns.end());
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  std::vector<int> col_n;
  std::vector<double> col_e;
  json rows = json::array();
  for (int n : ns) {
    int n_r = n;
    double e_val;
    if (method == "stabilized-hyperbolic" && with_reduce) {
      // Extended-precision pipeline; the reduced weights are large enough
      // that the plain estimator would only see evaluation roundoff.
      auto [red, rep] = fgt::stabilized_reduced_soe(n, 1e-15);
      n_r = rep.reduced_n;
      e_val = fgt::max_error_extended(red).max_abs_error;
    } else {
      fgt::SoeApprox soe = build_soe(method, n, std::nullopt);
      double e_n = fgt::max_error(soe).max_abs_error;
      e_val = e_n;
      if (with_reduce) {
        auto [red, rep] = fgt::reduce(soe, e_n / 3.0);
        n_r = rep.reduced_n;
        e_val = fgt::max_error(red).max_abs_error;
      }
    }
    col_n.push_back(n);
    col_e.push_back(e_val);
    rows.push_back({{"n", n}, {"n_r", n_r}, {"E", e_val}});
  }
  double rate = fgt::fit_geometric_rate(col_n, col_e);
  if (as_json) {
    json doc;
    doc["rows"] = rows;
    doc["rate"] = rate;
    os << doc.dump(2) << "\n";
  } else {
    os << "n,n_r,E\n";
    for (const auto& r : rows) {
      std::ostringstream line;
      line.precision(17);
      line << r["n"].get<int>() << "," << r["n_r"].get<int>() << ","
           << r["E"].get<double>();
      os << line.str() << "\n";
    }
    os << "# rate=" << rate << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- reduce ----

int cmd_reduce(const std::string& in, std::optional<double> tol,
               const std::string& out) {
  fgt::SoeApprox soe = fgt::load_coefficient_table(in);
  if (soe.form == fgt::SoeForm::Folded) soe = fgt::unfold(soe);
  double e_before = fgt::max_error(soe).max_abs_error;
  double use_tol = tol ? *tol : e_before / 3.0;
  auto [red, rep] = fgt::reduce(soe, use_tol);
  double e_after = fgt::max_error(red).max_abs_error;
  if (!out.empty()) fgt::save_coefficient_table(out, red, "reduced");
  std::ostringstream line;
  line.precision(17);
  line << "original_n=" << rep.original_n << " reduced_n=" << rep.reduced_n
       << " tol=" << rep.tolerance << " E_before=" << e_before
       << " E_after=" << e_after;
  std::cout << line.str() << "\n";
  return 0;
}

// -------------------------------------------------------------- bench ----

struct BenchSetup {
  std::string scenario;  // "same" | "distinct"
  std::int64_t N = 0, M = 0;
  int ne = 4;
  double delta = 1.0;
  std::uint64_t seed = 0;
  std::string dist = "uniform";
  bool presort = false;
  int threads = 1;
};

std::vector<double> gen_points(const std::string& dist, std::int64_t count,
                               std::uint64_t seed, std::uint64_t stream) {
  if (dist == "uniform")
    return fgt::rng::uniform_points(static_cast<std::size_t>(count), seed,
                                    stream);
  if (dist == "chebyshev")
    return fgt::rng::chebyshev_points(static_cast<std::size_t>(count));
  throw std::domain_error("unknown distribution '" + dist +
                          "' (expected uniform or chebyshev)");
}

fgt::SoeApprox preset_for_ne(int ne) {
  switch (ne) {
    case 3:
      return fgt::preset_soe(fgt::Precision::Digits4);
    case 4:
      return fgt::preset_soe(fgt::Precision::Digits7);
    case 5:
      return fgt::preset_soe(fgt::Precision::Digits9);
    case 6:
      return fgt::preset_soe(fgt::Precision::Digits11);
    default:
      break;
  }
  if (ne >= 1 && ne <= 7) return fgt::fold(fgt::cf_soe(2 * ne));
  throw std::domain_error("--ne must be between 1 and 7");
}

double measure_error(const fgt::TransformRequest& req,
                     const fgt::TransformResult& got, std::uint64_t seed) {
  const std::int64_t N = static_cast<std::int64_t>(req.targets.size());
  std::vector<std::int64_t> idx(100);
  for (int m = 0; m < 100; ++m) {
    double u = fgt::rng::uniform01(seed, fgt::rng::kStreamEvalIndices,
                                   static_cast<std::uint64_t>(m));
    idx[m] = std::min<std::int64_t>(N - 1, static_cast<std::int64_t>(u * N));
  }
  fgt::TransformResult oracle = fgt::direct(req, idx);
  double umax = 0.0;
  for (double u : oracle.potentials) umax = std::max(umax, std::fabs(u));
  double worst = 0.0;
  for (std::size_t m = 0; m < idx.size(); ++m) {
    double ud = oracle.potentials[m];
    if (std::fabs(ud) < 1e-3 * umax) continue;  // near-cancellation guard
    double uf = got.potentials[idx[m]];
    worst = std::max(worst, std::fabs(uf - ud) / std::fabs(ud));
  }
  return worst;
}

json run_bench_once(const BenchSetup& s, const fgt::SoeApprox& soe,
                    double* cached_error) {
  fgt::TransformRequest req;
  req.delta = s.delta;
  req.sources = gen_points(s.dist, s.M, s.seed, fgt::rng::kStreamSources);
  if (s.scenario == "same") {
    req.targets = req.sources;
  } else {
    req.targets = gen_points(s.dist, s.N, s.seed, fgt::rng::kStreamTargets);
  }
  req.strengths = fgt::rng::uniform_points(static_cast<std::size_t>(s.M),
                                           s.seed, fgt::rng::kStreamStrengths);
  if (s.presort) {
    std::sort(req.sources.begin(), req.sources.end());
    if (s.scenario == "same")
      req.targets = req.sources;
    else
      std::sort(req.targets.begin(), req.targets.end());
    // strengths stay index-aligned with the (now sorted) sources
  }
  auto t0 = Clock::now();
  fgt::TransformPlan plan = fgt::plan(req, soe, false);
  double t_sort = seconds_since(t0);
  auto t1 = Clock::now();
  fgt::precompute_gap_table(plan);
  double t_pre = seconds_since(t1);
  auto t2 = Clock::now();
  fgt::TransformResult res = s.scenario == "same"
                                 ? fgt::apply_same(plan, req.strengths, s.threads)
                                 : fgt::apply_general(plan, req.strengths, s.threads);
  double t_rem = seconds_since(t2);
  double t_total = seconds_since(t0);
  if (*cached_error < 0.0) *cached_error = measure_error(req, res, s.seed);
  double pts = static_cast<double>(s.N + s.M);
  json rec;
  rec["scenario"] = s.scenario == "same" ? "SamePoints" : "DistinctPoints";
  rec["N"] = s.N;
  rec["M"] = s.M;
  rec["n_e"] = s.ne;
  rec["delta"] = s.delta;
  rec["seed"] = s.seed;
  rec["dist"] = s.dist;
  rec["threads"] = s.threads;
  rec["t_sort"] = t_sort;
  rec["t_pre"] = t_pre;
  rec["t_rem"] = t_rem;
  rec["t_total"] = t_total;
  rec["max_rel_error"] = *cached_error;
  rec["throughput_full"] = t_total > 0 ? pts / t_total : 0.0;
  rec["throughput_amortized"] = t_rem > 0 ? pts / t_rem : 0.0;
  return rec;
}

const char* kBenchCsvHeader =
    "scenario,N,M,n_e,delta,seed,dist,threads,t_sort,t_pre,t_rem,t_total,"
    "max_rel_error,throughput_full,throughput_amortized";

std::string bench_csv_row(const json& r) {
  std::ostringstream line;
  line.precision(17);
  line << r["scenario"].get<std::string>() << "," << r["N"].get<std::int64_t>()
       << "," << r["M"].get<std::int64_t>() << "," << r["n_e"].get<int>() << ","
       << r["delta"].get<double>() << "," << r["seed"].get<std::uint64_t>()
       << "," << r["dist"].get<std::string>() << "," << r["threads"].get<int>()
       << "," << r["t_sort"].get<double>() << "," << r["t_pre"].get<double>()
       << "," << r["t_rem"].get<double>() << "," << r["t_total"].get<double>()
       << "," << r["max_rel_error"].get<double>() << ","
       << r["throughput_full"].get<double>() << ","
       << r["throughput_amortized"].get<double>();
  return line.str();
}

int cmd_bench(BenchSetup s, int repeat, bool as_json, const std::string& out) {
  if (s.N < 1 || s.M < 1)
    throw std::domain_error("--N and --M must be at least 1");
  if (repeat < 1) throw std::domain_error("--repeat must be at least 1");
  if (s.scenario != "same" && s.scenario != "distinct")
    throw std::domain_error("--scenario must be same or distinct");
  if (s.scenario == "same") s.M = s.N;
  fgt::SoeApprox soe = preset_for_ne(s.ne);
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  double cached_error = -1.0;  // identical across repeats (same seed)
  json all = json::array();
  for (int r = 0; r < repeat; ++r)
    all.push_back(run_bench_once(s, soe, &cached_error));
  if (as_json) {
    os << all.dump(2) << "\n";
  } else {
    os << kBenchCsvHeader << "\n";
    for (const auto& r : all) os << bench_csv_row(r) << "\n";
  }
  return 0;
}

// -------------------------------------------------------- delta sweep ----

int cmd_delta_sweep(std::int64_t N, int ne, std::vector<double> deltas,
                    std::uint64_t seed, const std::string& dist, bool as_json,
                    const std::string& out) {
  if (N < 1) throw std::domain_error("--N must be at least 1");
  for (double d : deltas)
    if (!(d > 0.0) || !std::isfinite(d))
      throw std::domain_error("all --delta values must be positive");
  fgt::SoeApprox soe = preset_for_ne(ne);
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  fgt::TransformRequest req;
  req.sources = gen_points(dist, N, seed, fgt::rng::kStreamSources);
  req.targets = req.sources;
  req.strengths = fgt::rng::uniform_points(static_cast<std::size_t>(N), seed,
                                           fgt::rng::kStreamStrengths);
  json rows = json::array();
  for (double d : deltas) {
    req.delta = d;
    fgt::TransformPlan plan = fgt::plan(req, soe, true);
    fgt::TransformResult res = fgt::apply_same(plan, req.strengths, 1);
    double err = measure_error(req, res, seed);
    rows.push_back({{"delta", d}, {"error", err}});
  }
  if (as_json) {
    os << rows.dump(2) << "\n";
  } else {
    os << "delta,error\n";
    for (const auto& r : rows) {
      std::ostringstream line;
      line.precision(17);
      line << r["delta"].get<double>() << "," << r["error"].get<double>();
      os << line.str() << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------- transform ----

struct PointFile {
  std::vector<double> coords;
  std::vector<double> strengths;  // empty if the file had no second column
};

PointFile read_point_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open for reading: " + path);
  PointFile out;
  std::string line;
  bool first_content = true;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::string body = line;
    auto hash = body.find('#');
    if (hash != std::string::npos) body.erase(hash);
    for (char& ch : body)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ls(body);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    double x, a = 0.0;
    bool has_a = toks.size() >= 2;
    try {
      std::size_t used = 0;
      x = std::stod(toks[0], &used);
      if (used != toks[0].size()) throw std::invalid_argument(toks[0]);
      if (has_a) {
        a = std::stod(toks[1], &used);
        if (used != toks[1].size()) throw std::invalid_argument(toks[1]);
      }
    } catch (const std::exception&) {
      if (first_content) {  // tolerate one header line
        first_content = false;
        continue;
      }
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": cannot parse point row '" + line + "'");
    }
    first_content = false;
    out.coords.push_back(x);
    if (has_a) out.strengths.push_back(a);
  }
  if (!out.strengths.empty() && out.strengths.size() != out.coords.size())
    throw std::invalid_argument(path +
                                ": strength column present only on some rows");
  return out;
}

int cmd_transform(const std::string& sources_path,
                  const std::string& targets_path, double delta, int ne,
                  const std::string& table_path, int threads,
                  const std::string& out) {
  PointFile src = read_point_file(sources_path);
  if (src.coords.empty())
    throw std::invalid_argument(sources_path + ": no source points");
  if (src.strengths.empty()) src.strengths.assign(src.coords.size(), 1.0);
  fgt::TransformRequest req;
  req.sources = src.coords;
  req.strengths = src.strengths;
  req.delta = delta;
  if (targets_path.empty()) {
    req.targets = req.sources;
  } else {
    req.targets = read_point_file(targets_path).coords;
  }
  fgt::SoeApprox soe = table_path.empty() ? preset_for_ne(ne)
                                          : fgt::load_coefficient_table(table_path);
  fgt::TransformPlan plan = fgt::plan(req, soe, true);
  fgt::TransformResult res =
      plan.same_points ? fgt::apply_same(plan, req.strengths, threads)
                       : fgt::apply_general(plan, req.strengths, threads);
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  os << "index,potential\n";
  for (std::size_t i = 0; i < res.potentials.size(); ++i) {
    std::ostringstream lineout;
    lineout.precision(17);
    lineout << i << "," << res.potentials[i];
    os << lineout.str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sum-of-exponentials Gaussian kernel approximations and the fast "
      "Gauss transform"};
  app.require_subcommand(1);

  // soe
  auto* soe_cmd = app.add_subcommand(
      "soe", "Build one SOE, print its grid error, optionally save a table");
  std::string soe_method = "cf";
  int soe_n = 8;
  std::optional<double> soe_theta;
  std::string soe_out;
  soe_cmd->add_option("--method", soe_method,
                      "parabolic|hyperbolic|talbot|stabilized-hyperbolic|cf");
  soe_cmd->add_option("--n", soe_n, "number of exponentials");
  soe_cmd->add_option("--theta", soe_theta,
                      "balance parameter (stabilized hyperbola only)");
  soe_cmd->add_option("--out", soe_out, "write the coefficient table here");

  // convergence
  auto* conv_cmd = app.add_subcommand(
      "convergence", "Error vs n for one method; emits CSV n,n_r,E and a rate");
  std::string conv_method = "cf";
  std::vector<int> conv_ns;
  bool conv_reduce = false;
  std::string conv_out;
  bool conv_json = false;
  conv_cmd->add_option("--method", conv_method,
                       "parabolic|hyperbolic|talbot|stabilized-hyperbolic|cf");
  conv_cmd->add_option("--n", conv_ns, "orders to evaluate (repeatable)");
  conv_cmd->add_flag("--reduce", conv_reduce,
                     "balanced-truncate each SOE at tol = E_n/3");
  conv_cmd->add_option("--out", conv_out, "output file (default stdout)");
  conv_cmd->add_flag("--json", conv_json, "emit JSON instead of CSV");

  // reduce
  auto* red_cmd = app.add_subcommand(
      "reduce", "Balanced-truncate an SOE coefficient table");
  std::string red_in, red_out;
  std::optional<double> red_tol;
  red_cmd->add_option("table", red_in, "input coefficient table")->required();
  red_cmd->add_option("--tol", red_tol,
                      "absolute tolerance (default: max_error/3)");
  red_cmd->add_option("--out", red_out, "write the reduced table here");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Run the fast transform on generated data and time its phases");
  BenchSetup bs;
  bs.scenario = "same";
  bs.N = 100000;
  std::int64_t bench_m = -1;
  int bench_repeat = 1;
  bool bench_json = false;
  std::string bench_out;
  bench_cmd->add_option("--scenario", bs.scenario, "same|distinct");
  bench_cmd->add_option("--N", bs.N, "number of targets");
  bench_cmd->add_option("--M", bench_m, "number of sources (distinct scenario)");
  bench_cmd->add_option("--ne", bs.ne, "folded modes: 3,4,5,6 (presets)");
  bench_cmd->add_option("--delta", bs.delta, "Gaussian variance parameter");
  bench_cmd->add_option("--seed", bs.seed, "RNG seed");
  bench_cmd->add_option("--dist", bs.dist, "uniform|chebyshev");
  bench_cmd->add_flag("--presort", bs.presort,
                      "sort the generated points before planning");
  bench_cmd->add_option("--threads", bs.threads, "mode-parallel threads");
  bench_cmd->add_option("--repeat", bench_repeat, "number of timed runs");
  bench_cmd->add_flag("--json", bench_json, "emit JSON instead of CSV");
  bench_cmd->add_option("--out", bench_out, "output file (default stdout)");

  // delta-sweep
  auto* sweep_cmd = app.add_subcommand(
      "delta-sweep", "Transform error as a function of delta");
  std::int64_t sweep_n = 10000;
  int sweep_ne = 4;
  std::vector<double> sweep_deltas;
  std::uint64_t sweep_seed = 0;
  std::string sweep_dist = "uniform";
  bool sweep_json = false;
  std::string sweep_out;
  sweep_cmd->add_option("--N", sweep_n, "number of points (same-point set)");
  sweep_cmd->add_option("--ne", sweep_ne, "folded modes");
  sweep_cmd->add_option("--delta", sweep_deltas,
                        "delta values (repeatable; empty emits header only)");
  sweep_cmd->add_option("--seed", sweep_seed, "RNG seed");
  sweep_cmd->add_option("--dist", sweep_dist, "uniform|chebyshev");
  sweep_cmd->add_flag("--json", sweep_json, "emit JSON instead of CSV");
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");

  // transform
  auto* tr_cmd = app.add_subcommand(
      "transform", "Apply the fast transform to points from files");
  std::string tr_sources, tr_targets, tr_table, tr_out;
  double tr_delta = 1.0;
  int tr_ne = 4;
  int tr_threads = 1;
  tr_cmd->add_option("sources", tr_sources,
                     "CSV/text file: coordinate[,strength] per line")
      ->required();
  tr_cmd->add_option("targets", tr_targets,
                     "optional targets file (default: the sources)");
  tr_cmd->add_option("--delta", tr_delta, "Gaussian variance parameter");
  tr_cmd->add_option("--ne", tr_ne, "folded modes preset");
  tr_cmd->add_option("--table", tr_table,
                     "use this SOE coefficient table instead of a preset");
  tr_cmd->add_option("--threads", tr_threads, "mode-parallel threads");
  tr_cmd->add_option("--out", tr_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (soe_cmd->parsed()) return cmd_soe(soe_method, soe_n, soe_theta, soe_out);
    if (conv_cmd->parsed())
      return cmd_convergence(conv_method, conv_ns, conv_reduce, conv_out,
                             conv_json);
    if (red_cmd->parsed()) return cmd_reduce(red_in, red_tol, red_out);
    if (bench_cmd->parsed()) {
      if (bench_m > 0) bs.M = bench_m;
      else bs.M = bs.N;
      return cmd_bench(bs, bench_repeat, bench_json, bench_out);
    }
    if (sweep_cmd->parsed())
      return cmd_delta_sweep(sweep_n, sweep_ne, sweep_deltas, sweep_seed,
                             sweep_dist, sweep_json, sweep_out);
    if (tr_cmd->parsed())
      return cmd_transform(tr_sources, tr_targets, tr_delta, tr_ne, tr_table,
                           tr_threads, tr_out);
  } catch (const fgt::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
