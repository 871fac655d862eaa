#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fgt1d/cf.hpp"
#include "fgt1d/rng.hpp"
#include "fgt1d/soe.hpp"
#include "fgt1d/transform.hpp"

using fgt::TransformRequest;
using cplx = std::complex<double>;

namespace {

// Reference case frozen from a 50-digit evaluation of
// u(x) = sum_j exp(-(x - y_j)^2 / (4 * 0.02)) * alpha_j.
const std::vector<double> kYs = {0.0, 0.1, 0.35, 0.5, 0.75, 1.0};
const std::vector<double> kAs = {0.5, -0.25, 1.0, 0.8, -0.6, 0.9};
constexpr double kDelta = 0.02;
const std::vector<double> kXs = {0.0, 0.5, 1.0};
const std::vector<double> kGold = {0.53026354628615822, 1.3078174711896560,
                                   0.66552744606900788};

TransformRequest golden_request() {
  TransformRequest req;
  req.targets = kXs;
  req.sources = kYs;
  req.strengths = kAs;
  req.delta = kDelta;
  return req;
}

TransformRequest random_request(std::uint64_t seed, std::size_t n,
                                std::size_t m, double delta) {
  TransformRequest req;
  req.targets = fgt::rng::uniform_points(n, seed, fgt::rng::kStreamTargets);
  req.sources = fgt::rng::uniform_points(m, seed, fgt::rng::kStreamSources);
  req.strengths.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    req.strengths[j] =
        2.0 * fgt::rng::uniform01(seed, fgt::rng::kStreamStrengths, j) - 1.0;
  req.delta = delta;
  return req;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("direct evaluation matches the high-precision reference") {
  auto req = golden_request();
  auto res = fgt::direct(req);
  REQUIRE(res.potentials.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(res.potentials[i] == doctest::Approx(kGold[i]).epsilon(1e-15));
}

TEST_CASE("fast transform reproduces the reference to the SOE accuracy") {
  auto req = golden_request();
  auto soe = fgt::fold(fgt::cf_soe(12));  // grid error ~3e-10
  auto plan = fgt::plan(req, soe, true);
  CHECK(!plan.same_points);
  auto res = fgt::apply_general(plan, req.strengths);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::fabs(res.potentials[i] - kGold[i]) < 5e-9);
}

TEST_CASE("direct target subset evaluates only the requested rows") {
  auto req = golden_request();
  auto all = fgt::direct(req);
  auto sub = fgt::direct(req, {2, 0});
  REQUIRE(sub.potentials.size() == 2);
  CHECK(sub.potentials[0] == all.potentials[2]);
  CHECK(sub.potentials[1] == all.potentials[0]);
  CHECK_THROWS_AS(fgt::direct(req, {3}), std::invalid_argument);
  CHECK_THROWS_AS(fgt::direct(req, {-1}), std::invalid_argument);
}

TEST_CASE("same-point and general scans agree to accumulation roundoff") {
  auto req = random_request(11, 500, 500, 0.37);
  req.targets = req.sources;  // identical vectors -> same-point recurrences
  auto soe = fgt::fold(fgt::cf_soe(10));
  auto plan = fgt::plan(req, soe, false);
  REQUIRE(plan.same_points);
  auto fast = fgt::apply_same(plan, req.strengths);
  auto general = fgt::apply_general(plan, req.strengths);
  // two different recurrence organizations of the same mode sums
  CHECK(max_abs_diff(fast.potentials, general.potentials) < 1e-13);
  // and both match the quadratic oracle within the kernel error times the
  // total strength mass, the uniform bound for any potential
  auto oracle = fgt::direct(req);
  double mass = 0.0;
  for (double b : req.strengths) mass += std::fabs(b);
  double bound = fgt::max_error(soe).max_abs_error * mass;
  CHECK(max_abs_diff(fast.potentials, oracle.potentials) < bound);
}

TEST_CASE("coincident coordinates (ties) are handled exactly") {
  TransformRequest req;
  req.sources = {0.3, 0.3, 0.7, 0.7, 0.7};
  req.strengths = {1.0, -2.0, 0.5, 0.5, 0.25};
  req.targets = {0.3, 0.5, 0.7, 0.9, 0.3};
  req.delta = 0.05;
  auto soe = fgt::fold(fgt::cf_soe(12));
  auto plan = fgt::plan(req, soe, false);
  auto fast = fgt::apply_general(plan, req.strengths);
  auto oracle = fgt::direct(req);
  CHECK(max_abs_diff(fast.potentials, oracle.potentials) < 1e-8);
}

TEST_CASE("empty inputs produce zeros or empty outputs") {
  auto soe = fgt::fold(fgt::cf_soe(8));
  TransformRequest no_sources;
  no_sources.targets = {0.1, 0.9};
  no_sources.delta = 1.0;
  auto plan1 = fgt::plan(no_sources, soe, false);
  auto res1 = fgt::apply_general(plan1, {});
  REQUIRE(res1.potentials.size() == 2);
  CHECK(res1.potentials[0] == 0.0);
  CHECK(res1.potentials[1] == 0.0);
  CHECK(fgt::direct(no_sources).potentials[0] == 0.0);

  TransformRequest no_targets;
  no_targets.sources = {0.5};
  no_targets.strengths = {2.0};
  no_targets.delta = 1.0;
  auto plan2 = fgt::plan(no_targets, soe, false);
  auto res2 = fgt::apply_general(plan2, no_targets.strengths);
  CHECK(res2.potentials.empty());
}

TEST_CASE("a plan is reusable across strength vectors") {
  auto req = random_request(3, 200, 300, 2.0);
  auto soe = fgt::fold(fgt::cf_soe(12));
  auto plan = fgt::plan(req, soe, true);
  auto r1 = fgt::apply_general(plan, req.strengths);

  std::vector<double> beta2(req.strengths.size());
  for (std::size_t j = 0; j < beta2.size(); ++j)
    beta2[j] = std::sin(0.1 * static_cast<double>(j + 1));
  auto r2 = fgt::apply_general(plan, beta2);
  TransformRequest req2 = req;
  req2.strengths = beta2;
  auto oracle2 = fgt::direct(req2);
  double scale = 0.0;
  for (double b : beta2) scale += std::fabs(b);
  CHECK(max_abs_diff(r2.potentials, oracle2.potentials) < 1e-9 * scale);

  // first result unaffected by the second application
  auto r1again = fgt::apply_general(plan, req.strengths);
  CHECK(max_abs_diff(r1.potentials, r1again.potentials) == 0.0);
}

TEST_CASE("precomputed gap table changes nothing in the result") {
  auto req = random_request(5, 400, 400, 0.8);
  req.targets = req.sources;
  auto soe = fgt::fold(fgt::cf_soe(10));
  auto lazy = fgt::plan(req, soe, false);
  auto eager = fgt::plan(req, soe, true);
  CHECK(!lazy.precomputed);
  CHECK(eager.precomputed);
  CHECK(eager.gap_exponentials.size() == soe.size() * (req.targets.size() - 1));
  for (const auto& g : eager.gap_exponentials) CHECK(std::abs(g) <= 1.0);
  auto a = fgt::apply_same(lazy, req.strengths);
  auto b = fgt::apply_same(eager, req.strengths);
  CHECK(max_abs_diff(a.potentials, b.potentials) == 0.0);  // bit identical

  fgt::precompute_gap_table(lazy);
  CHECK(lazy.precomputed);
  auto c = fgt::apply_same(lazy, req.strengths);
  CHECK(max_abs_diff(a.potentials, c.potentials) == 0.0);
}

TEST_CASE("mode parallelism is bit-for-bit invariant") {
  auto req = random_request(7, 1000, 1000, 1.0);
  req.targets = req.sources;
  auto soe = fgt::fold(fgt::cf_soe(12));  // 6 modes
  auto plan = fgt::plan(req, soe, true);
  auto serial = fgt::apply_same(plan, req.strengths, 1);
  for (int threads : {2, 3, 8}) {
    auto par = fgt::apply_same(plan, req.strengths, threads);
    CHECK(max_abs_diff(serial.potentials, par.potentials) == 0.0);
  }

  auto reqd = random_request(8, 700, 900, 0.25);
  auto pland = fgt::plan(reqd, soe, false);
  auto sd = fgt::apply_general(pland, reqd.strengths, 1);
  auto pd = fgt::apply_general(pland, reqd.strengths, 4);
  CHECK(max_abs_diff(sd.potentials, pd.potentials) == 0.0);
}

TEST_CASE("widely separated clusters underflow cleanly to zero coupling") {
  TransformRequest req;
  req.sources = {0.0, 1e-3, 100.0, 100.001};
  req.strengths = {1.0, 2.0, -3.0, 4.0};
  req.targets = {5e-4, 100.0005};
  req.delta = 1e-8;
  auto soe = fgt::fold(fgt::cf_soe(12));
  auto plan = fgt::plan(req, soe, true);
  auto fast = fgt::apply_general(plan, req.strengths);
  auto oracle = fgt::direct(req);
  for (double u : fast.potentials) CHECK(std::isfinite(u));
  CHECK(max_abs_diff(fast.potentials, oracle.potentials) < 1e-8);
}

TEST_CASE("recurrence mode sums match their quadratic-cost definition") {
  auto req = random_request(21, 120, 120, 0.6);
  req.targets = req.sources;
  auto soe = fgt::fold(fgt::cf_soe(8));
  auto plan = fgt::plan(req, soe, false);
  auto sums = fgt::detail::mode_sums(plan, req.strengths);
  const auto N = plan.sorted_targets.size();
  REQUIRE(sums.hp.size() == soe.size());
  REQUIRE(sums.hm.size() == soe.size());
  const double rs = 1.0 / std::sqrt(req.delta);
  double bscale = 0.0;
  for (double b : req.strengths) bscale += std::fabs(b);
  for (std::size_t k = 0; k < soe.size(); ++k) {
    cplx t = plan.soe.nodes[k];
    for (std::size_t i = 0; i < N; ++i) {
      cplx hp{}, hm{};
      for (std::size_t j = 0; j < plan.sorted_sources.size(); ++j) {
        double beta = req.strengths[static_cast<std::size_t>(plan.source_perm[j])];
        double gap = plan.sorted_targets[i] - plan.sorted_sources[j];
        if (plan.sorted_sources[j] <= plan.sorted_targets[i])
          hp += beta * std::exp(-t * gap * rs);
        else
          hm += beta * std::exp(t * gap * rs);
      }
      CHECK(std::abs(sums.hp[k][i] - hp) <= 1e-12 * bscale);
      CHECK(std::abs(sums.hm[k][i] - hm) <= 1e-12 * bscale);
    }
  }
}

TEST_CASE("accuracy presets map to the documented mode counts") {
  using fgt::Precision;
  CHECK(fgt::preset_mode_count(Precision::Digits4) == 3);
  CHECK(fgt::preset_mode_count(Precision::Digits7) == 4);
  CHECK(fgt::preset_mode_count(Precision::Digits9) == 5);
  CHECK(fgt::preset_mode_count(Precision::Digits11) == 6);
  for (auto p : {Precision::Digits4, Precision::Digits7, Precision::Digits9,
                 Precision::Digits11}) {
    auto soe = fgt::preset_soe(p);
    CHECK(soe.form == fgt::SoeForm::Folded);
    CHECK(static_cast<int>(soe.size()) == fgt::preset_mode_count(p));
  }
}

TEST_CASE("plan validation rejects malformed requests") {
  auto soe = fgt::fold(fgt::cf_soe(8));
  TransformRequest req = golden_request();
  req.delta = 0.0;
  CHECK_THROWS_AS(fgt::plan(req, soe, false), std::domain_error);
  req = golden_request();
  req.delta = -2.0;
  CHECK_THROWS_AS(fgt::plan(req, soe, false), std::domain_error);
  req = golden_request();
  req.targets[1] = std::nan("");
  CHECK_THROWS_AS(fgt::plan(req, soe, false), std::domain_error);
  req = golden_request();
  req.strengths.pop_back();
  CHECK_THROWS_AS(fgt::plan(req, soe, false), std::invalid_argument);

  // strengths length is re-checked at application time
  req = golden_request();
  auto good = fgt::plan(req, soe, false);
  CHECK_THROWS_AS(fgt::apply_general(good, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(fgt::apply_same(good, req.strengths), std::invalid_argument);
}

TEST_CASE("same-point detection requires identical vectors, not equal sets") {
  TransformRequest req;
  req.sources = {0.9, 0.1, 0.5};
  req.strengths = {1.0, 1.0, 1.0};
  req.targets = {0.1, 0.5, 0.9};  // same set, different order
  req.delta = 1.0;
  auto soe = fgt::fold(fgt::cf_soe(8));
  auto plan = fgt::plan(req, soe, false);
  CHECK(!plan.same_points);
  auto fast = fgt::apply_general(plan, req.strengths);
  auto oracle = fgt::direct(req);
  double bound = fgt::max_error(soe).max_abs_error * 3.0;  // unit strengths
  CHECK(max_abs_diff(fast.potentials, oracle.potentials) < bound);
}

TEST_CASE("sorting is stable: tied coordinates keep their original order") {
  TransformRequest req;
  req.targets = {0.5, 0.2, 0.5, 0.2};
  req.sources = {0.4};
  req.strengths = {1.0};
  req.delta = 1.0;
  auto soe = fgt::fold(fgt::cf_soe(8));
  auto plan = fgt::plan(req, soe, false);
  REQUIRE(plan.target_perm.size() == 4);
  CHECK(plan.target_perm[0] == 1);
  CHECK(plan.target_perm[1] == 3);
  CHECK(plan.target_perm[2] == 0);
  CHECK(plan.target_perm[3] == 2);
}
