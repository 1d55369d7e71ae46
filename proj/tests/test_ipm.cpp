#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "subhyp/error.hpp"
#include "subhyp/ipm.hpp"
#include "subhyp/laplacian.hpp"
#include "subhyp/oracle.hpp"
#include "test_util.hpp"

using namespace subhyp;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> centered(const SubmodularHypergraph& g, std::vector<double> x) {
  const double c = z_p_mu(x, g.mu(), 1.0).center;
  for (auto& v : x) v -= c;
  return x;
}

}  // namespace

TEST_CASE("compute_g examples") {
  CHECK(compute_g(std::vector<double>{1, -1}, std::vector<double>{1, 1}) == std::vector<double>{1, -1});
  CHECK(compute_g(std::vector<double>{1, 0, -1}, std::vector<double>{1, 2, 1}) == std::vector<double>{1, 0, -1});
  const auto g = compute_g(std::vector<double>{2, 0}, std::vector<double>{1, 3});
  CHECK(g[0] == 1.0);
  CHECK(g[1] == doctest::Approx(-1.0));
}

TEST_CASE("compute_g sums to zero on median-centered inputs with zeros") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> mu_dist(0.5, 2.0);
  for (int k = 0; k < 50; ++k) {
    auto x = testutil::gaussian(rng, 7);
    for (auto& v : x) v = std::round(v);
    std::vector<double> mu(7);
    for (auto& m : mu) m = mu_dist(rng);
    const double c = z_p_mu(x, mu, 1.0).center;
    for (auto& v : x) v -= c;
    const auto g = compute_g(x, mu);
    bool has_zero = false;
    for (double v : x) has_zero |= v == 0.0;
    if (has_zero) CHECK(std::abs(std::accumulate(g.begin(), g.end(), 0.0)) <= 1e-12);
    CHECK(dot(g, x) == doctest::Approx([&] {
            double s = 0.0;
            for (int v = 0; v < 7; ++v) s += mu[v] * std::abs(x[v]);
            return s;
          }()));
  }
}

TEST_CASE("inner_rcdm single edge example") {
  std::vector<Hyperedge> edges;
  edges.emplace_back(std::vector<int>{0, 1}, 1.0, CutWeightFn::homogeneous(2));
  const SubmodularHypergraph g({1, 1}, std::move(edges));
  const auto r = inner_rcdm(g, InnerProblem{1.0, {2, 0}, InnerNorm::L2});
  REQUIRE_FALSE(r.degenerate);
  CHECK(r.dual[0].coords[0] == doctest::Approx(1.0));
  CHECK(r.dual[0].coords[1] == doctest::Approx(-1.0));
  CHECK(r.z[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(r.z[1] == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("inner_rcdm with zero target is degenerate on symmetric weights") {
  const auto r = inner_rcdm(testutil::p4(), InnerProblem{0.0, {1, 2, -2, -1}, InnerNorm::L2});
  CHECK(r.degenerate);
  for (double v : r.z) CHECK(v == 0.0);
}

TEST_CASE("inner_rcdm P4 duality gap") {
  const auto g = testutil::p4();
  const std::vector<double> x{1, 1, -1, -1};
  const InnerProblem prob{1.0 / 3.0, compute_g(x, g.mu()), InnerNorm::L2};
  const auto r = inner_rcdm(g, prob);
  CHECK(std::abs(r.gap) <= 1e-6);
  std::vector<double> sum(4, 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    CHECK(check_membership(edge.weight, edge.theta, r.dual[e].coords));
    for (int i = 0; i < edge.size(); ++i) sum[edge.members[i]] += r.dual[e].coords[i];
  }
  double res = 0.0;
  for (int v = 0; v < 4; ++v) res += std::pow(prob.lambda_hat * prob.g[v] - sum[v], 2);
  CHECK(std::sqrt(res) == doctest::Approx(r.residual_norm).epsilon(1e-9));
}

TEST_CASE("inner_rcdm primal is feasible and matches the dual") {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto g = random_instance({7, 6, 3, seed % 2 ? "alpha" : "table", seed, true});
    auto x = centered(g, testutil::gaussian(rng, 7));
    const double lam = rayleigh(g, x, 1.0);
    const InnerProblem prob{lam, compute_g(x, g.mu()), InnerNorm::L2};
    const auto r = inner_rcdm(g, prob);
    CHECK(std::abs(r.gap) <= 1e-6);
    if (!r.degenerate) {
      CHECK(std::sqrt(dot(r.z, r.z)) == doctest::Approx(1.0));
      CHECK(q_p(g, r.z, 1.0) - lam * dot(r.z, prob.g) == doctest::Approx(r.primal).epsilon(1e-9));
    }
  }
}

TEST_CASE("inner_sfm examples") {
  const auto p2 = testutil::p2();
  auto r = inner_sfm(p2, InnerProblem{2.0, {1, -1}, InnerNorm::Linf});
  CHECK(r.set == VertexSet{0});
  CHECK(r.z == std::vector<double>{1, -1});
  CHECK(r.objective == doctest::Approx(-1.0));

  r = inner_sfm(testutil::p4(), InnerProblem{0.0, {1, 2, -2, -1}, InnerNorm::Linf});
  CHECK(r.set.empty());
  CHECK(r.objective == 0.0);

  r = inner_sfm(testutil::p4(), InnerProblem{1.0 / 3.0, {1, 2, -2, -1}, InnerNorm::Linf});
  CHECK(r.set == VertexSet{0, 1});
  CHECK(r.objective == doctest::Approx(0.0));
}

TEST_CASE("inner_sfm agrees with exhaustive minimization") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_instance({9, 8, 4, "table", seed, true});
    auto x = centered(g, testutil::gaussian(rng, 9));
    const InnerProblem prob{rayleigh(g, x, 1.0), compute_g(x, g.mu()), InnerNorm::Linf};
    const auto r = inner_sfm(g, prob);
    const auto ref = exact_sfm(
        [&](std::uint64_t m) {
          double gs = 0.0;
          for (int v = 0; v < 9; ++v)
            if ((m >> v) & 1u) gs += prob.g[v];
          return testutil::boundary_of(g, m) - prob.lambda_hat * gs;
        },
        9);
    CHECK(r.objective == doctest::Approx(ref.value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(inner_sfm(random_instance({10, 9, 3, "homogeneous", 1, false}),
                            InnerProblem{1.0, std::vector<double>(10, 0.0), InnerNorm::Linf}, 8),
                  Error);
}

TEST_CASE("ipm examples") {
  const auto p4 = testutil::p4();
  for (auto norm : {InnerNorm::L2, InnerNorm::Linf}) {
    IpmOptions o;
    o.inner = norm;
    const auto r = ipm(p4, std::vector<double>{1, 1, -1, -1}, o);
    CHECK(r.trace.front() == doctest::Approx(1.0 / 3.0));
    for (double l : r.trace) CHECK(l == doctest::Approx(1.0 / 3.0));
    CHECK(r.trace.size() <= 3);
    CHECK(r.sweep.conductance == doctest::Approx(1.0 / 3.0));

    const auto r2 = ipm(testutil::p2(), std::vector<double>{1, -1}, o);
    CHECK(r2.trace.back() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(ipm(p4, std::vector<double>{1, 1, 1, 1}), Error);
}

TEST_CASE("ipm trace is nonincreasing and ends above h2") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto g = random_instance({8, 7, 3, seed % 3 == 0 ? "table" : "alpha", seed, true});
    const double h2 = testutil::brute_h2(g);
    for (auto norm : {InnerNorm::L2, InnerNorm::Linf}) {
      IpmOptions o;
      o.inner = norm;
      const auto r = ipm(g, random_start(g, seed), o);
      for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k] <= r.trace[k - 1] + 1e-10);
      CHECK(r.trace.back() >= h2 - 1e-9);
      CHECK(r.sweep.conductance >= h2 - 1e-9);
      CHECK(is_median_centered(r.x, g.mu(), 1.0, 1e-9));
    }
  }
}

TEST_CASE("sweep_cut examples") {
  const auto p4 = testutil::p4();
  const auto s = sweep_cut(p4, std::vector<double>{0.9, 0.8, -0.7, -1.0});
  CHECK(s.set == VertexSet{0, 1});
  CHECK(s.conductance == doctest::Approx(1.0 / 3.0));

  const auto t = sweep_cut(testutil::p2(), std::vector<double>{1, -1}, 1.0);
  CHECK(t.conductance == doctest::Approx(1.0));
  CHECK(t.bound == doctest::Approx(1.0));
  CHECK(t.median_centered);
  CHECK(t.bound_holds);
  CHECK_THROWS_AS(sweep_cut(p4, std::vector<double>{2, 2, 2, 2}), Error);
}

TEST_CASE("sweep_cut recovers an indicator") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_instance({8, 9, 3, "table", seed, true});
    for (std::uint64_t mask : {0b00000111ull, 0b10100101ull, 0b01111110ull}) {
      std::vector<double> x(8);
      for (int v = 0; v < 8; ++v) x[v] = ((mask >> v) & 1u) ? 0.25 : -0.75;
      CHECK(sweep_cut(g, x).conductance <= testutil::conductance_of(g, mask) + 1e-12);
    }
  }
}

TEST_CASE("sweep_cut bound holds for centered vectors") {
  std::mt19937_64 rng(19);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_instance({9, 8, 4, "alpha", seed, true});
    for (double p : {1.0, 2.0, 3.0}) {
      for (int k = 0; k < 10; ++k) {
        auto x = testutil::gaussian(rng, 9);
        const double c = z_p_mu(x, g.mu(), p).center;
        for (auto& v : x) v -= c;
        const auto s = sweep_cut(g, x, p);
        if (p == 1.0) CHECK(s.median_centered);
        if (s.median_centered) CHECK(s.conductance <= s.bound + 1e-9);
      }
    }
  }
}

TEST_CASE("restarts are reproducible and keep the best run") {
  const auto g = random_instance({9, 10, 3, "table", 6, true});
  std::vector<IpmResult> runs;
  const auto best = ipm_restarts(g, {}, 3, 11, &runs);
  REQUIRE(runs.size() == 3);
  for (const auto& r : runs) CHECK(best.sweep.conductance <= r.sweep.conductance);
  const auto again = ipm_restarts(g, {}, 3, 11);
  CHECK(again.x == best.x);
  CHECK(again.trace == best.trace);
}

TEST_CASE("random_start returns a median-centered two-valued indicator") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_instance({9, 8, 4, "alpha", seed, true});
    for (int steps : {0, 32}) {
      const auto x = random_start(g, seed, steps);
      CHECK(x == random_start(g, seed, steps));
      CHECK(is_median_centered(x, g.mu(), 1.0, 1e-12));
      std::vector<double> values(x);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      CHECK(values.size() == 2);
    }
    // The diffusion trajectory includes the raw vector, so smoothing never hurts.
    CHECK(sweep_cut(g, random_start(g, seed, 32)).conductance <=
          sweep_cut(g, random_start(g, seed, 0)).conductance + 1e-12);
  }
}
