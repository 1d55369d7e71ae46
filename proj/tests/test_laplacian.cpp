#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "subhyp/error.hpp"
#include "subhyp/laplacian.hpp"
#include "subhyp/oracle.hpp"
#include "test_util.hpp"

using namespace subhyp;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

const double kRoot2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("phi_p examples") {
  const std::vector<double> x{2, -3, 0};
  CHECK(phi_p(x, 2.0).values == std::vector<double>{2, -3, 0});
  const auto s = phi_p(x, 1.0);
  CHECK(s.values == std::vector<double>{1, -1, 0});
  CHECK(s.interval == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(phi_p(std::vector<double>{2, -1, 0}, 3.0).values == std::vector<double>{4, -1, 0});
}

TEST_CASE("q_p examples") {
  CHECK(q_p(testutil::h1(), std::vector<double>{1, 0, -1}, 2.0) == doctest::Approx(4.0));
  CHECK(q_p(testutil::p4(), std::vector<double>{3, 3, 3, 3}, 1.5) == 0.0);
  CHECK(q_p(testutil::p4(), std::vector<double>{1, 1, -1, -1}, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("apply_laplacian examples") {
  const auto y = apply_laplacian(testutil::p2(), std::vector<double>{1, -1}, 2.0);
  CHECK(y == std::vector<double>{2, -2});
  const auto z = apply_laplacian(testutil::p4(), std::vector<double>{5, 5, 5, 5}, 2.0);
  CHECK(z == std::vector<double>{0, 0, 0, 0});
  CHECK(apply_laplacian(testutil::h1(), std::vector<double>{3, 1, 0}, 1.0) == std::vector<double>{1, 0, -1});
}

TEST_CASE("laplacian identities on random instances") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = random_instance({8, 8, 4, seed % 3 == 0 ? "homogeneous" : seed % 3 == 1 ? "alpha" : "table", seed, true});
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      auto x = testutil::gaussian(rng, g.num_vertices());
      const auto lx = apply_laplacian(g, x, p);
      CHECK(dot(x, lx) == doctest::Approx(q_p(g, x, p)).epsilon(1e-12));
      CHECK(std::accumulate(lx.begin(), lx.end(), 0.0) == doctest::Approx(0.0).epsilon(1e-12));
      auto tx = x;
      for (auto& v : tx) v *= -2.5;
      CHECK(q_p(g, tx, p) == doctest::Approx(std::pow(2.5, p) * q_p(g, x, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("graph laplacian consistency") {
  const auto g = random_instance({9, 14, 2, "homogeneous", 5, true});
  std::mt19937_64 rng(3);
  const auto x = testutil::gaussian(rng, 9);
  std::vector<double> lx(9, 0.0);
  for (const auto& e : g.edges()) {
    const int u = e.members[0], v = e.members[1];
    lx[u] += e.theta * (x[u] - x[v]);
    lx[v] += e.theta * (x[v] - x[u]);
  }
  const auto y = apply_laplacian(g, x, 2.0);
  for (int v = 0; v < 9; ++v) CHECK(std::abs(y[v] - lx[v]) <= 1e-12);
}

TEST_CASE("verify_eigenpair examples") {
  const auto p2 = testutil::p2();
  const std::vector<double> x{1 / kRoot2, -1 / kRoot2};
  const auto ok = verify_eigenpair(p2, x, 2.0, 2.0);
  CHECK(ok.valid);
  CHECK(ok.residual < 1e-9);
  const auto bad = verify_eigenpair(p2, x, 1.0, 2.0);
  CHECK_FALSE(bad.valid);
  CHECK(bad.residual == doctest::Approx(1.0).epsilon(1e-9));

  for (double p : {1.0, 2.0, 3.0}) {
    const auto c = verify_eigenpair(testutil::h1(), std::vector<double>{1, 1, 1}, 0.0, p);
    CHECK(c.valid);
  }
  CHECK_THROWS_AS(verify_eigenpair(testutil::graph_from_pairs(4, {{0, 1}, {2, 3}}), std::vector<double>{1, 1, 1, 1}, 0.0, 2.0),
                  Error);
  CHECK_THROWS_AS(verify_eigenpair(p2, std::vector<double>{0, 0}, 0.0, 2.0), Error);
}

TEST_CASE("p = 1 eigenpair with zero coordinates") {
  // P4 with x = (1, 0, 0, -1): zeros absorb anything in lambda mu_v [-1, 1].
  const auto g = testutil::p4();
  const std::vector<double> x{1, 0, 0, -1};
  const double lambda = 1.0;  // edge terms at the leaves equal mu_v = 1
  const auto c = verify_eigenpair(g, x, lambda, 1.0);
  CHECK(c.valid);
  const auto split = mu_split(c.x, g.mu(), 1.0);
  CHECK(std::abs(split.plus - split.minus) <= split.zero + 1e-9);
}

TEST_CASE("zero eigenvalue accepts only constants") {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_instance({6, 5, 3, "alpha", seed, true});
    const auto x = testutil::gaussian(rng, 6);
    CHECK_FALSE(verify_eigenpair(g, x, 0.0, 2.0).valid);
    CHECK_FALSE(verify_eigenpair(g, x, 0.0, 1.0).valid);
  }
}

TEST_CASE("certificate residual is scale invariant") {
  const auto g = random_instance({7, 9, 2, "homogeneous", 8, false});
  const auto sp = dense_graph_spectrum(g);
  std::vector<double> x(7);
  for (int v = 0; v < 7; ++v) x[v] = sp.vectors(v, 2);
  const auto a = verify_eigenpair(g, x, sp.values[2], 2.0);
  for (auto& v : x) v *= 4.0;
  const auto b = verify_eigenpair(g, x, sp.values[2], 2.0);
  CHECK(a.valid);
  CHECK(b.valid);
  CHECK(a.residual == doctest::Approx(b.residual).epsilon(1e-8));
  // Witnesses lie in the subgradient face.
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    const auto local = edge.gather(a.x);
    CHECK(check_membership(edge.weight, 1.0, a.witnesses[e].coords));
    CHECK(dot(a.witnesses[e].coords, local) >= lovasz(edge.weight, local) - 1e-9);
  }
}

TEST_CASE("z_p_mu examples") {
  const auto a = z_p_mu(std::vector<double>{3, 1, 0}, std::vector<double>{1, 1, 1}, 1.0);
  CHECK(a.center == 1.0);
  CHECK(a.value == 3.0);
  const auto b = z_p_mu(std::vector<double>{1, -1}, std::vector<double>{1, 1}, 2.0);
  CHECK(b.center == 0.0);
  CHECK(b.value == 2.0);
  for (double p : {1.0, 1.7, 2.0, 3.0}) CHECK(z_p_mu(std::vector<double>{4, 4, 4}, std::vector<double>{1, 2, 3}, p).value == 0.0);
}

TEST_CASE("z_p_mu minimizes over c") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> mu_dist(0.5, 3.0);
  for (int k = 0; k < 30; ++k) {
    const auto x = testutil::gaussian(rng, 7);
    std::vector<double> mu(7);
    for (auto& m : mu) m = mu_dist(rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const auto z = z_p_mu(x, mu, p);
      for (double d : {-1e-3, 1e-3, -0.1, 0.1}) {
        double s = 0.0;
        for (int v = 0; v < 7; ++v) s += mu[v] * std::pow(std::abs(x[v] - z.center - d), p);
        CHECK(s >= z.value - 1e-10);
      }
    }
  }
}

TEST_CASE("rayleigh examples") {
  CHECK(rayleigh(testutil::p4(), std::vector<double>{1, 1, 0, 0}, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(rayleigh(testutil::p2(), std::vector<double>{1, -1}, 2.0) == doctest::Approx(2.0));
  CHECK(rayleigh_sphere(testutil::p2(), std::vector<double>{1, -1}, 2.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(rayleigh(testutil::p2(), std::vector<double>{3, 3}, 2.0), Error);
  CHECK_THROWS_AS(rayleigh_sphere(testutil::p2(), std::vector<double>{0, 0}, 2.0), Error);

  std::mt19937_64 rng(37);
  const auto g = random_instance({8, 7, 4, "table", 2, true});
  for (int k = 0; k < 20; ++k) {
    auto x = testutil::gaussian(rng, 8);
    auto y = x;
    for (auto& v : y) v = 3.0 * v + 7.0;
    for (double p : {1.0, 2.0}) CHECK(std::abs(rayleigh(g, x, p) - rayleigh(g, y, p)) <= 1e-12 * rayleigh(g, x, p) + 1e-12);
  }
}

TEST_CASE("mu_split examples") {
  const std::vector<double> x{2, 0, -1}, mu{1, 2, 3};
  const auto a = mu_split(x, mu, 1.0);
  CHECK(a.plus == 1.0);
  CHECK(a.zero == 2.0);
  CHECK(a.minus == 3.0);
  const auto b = mu_split(x, mu, 2.0);
  CHECK(b.plus == 2.0);
  CHECK(b.zero == 2.0);
  CHECK(b.minus == 3.0);
  const auto c = mu_split(std::vector<double>{2, 2, 2}, mu, 2.0);
  CHECK(c.plus == 12.0);
  CHECK(c.zero == 0.0);
  CHECK(c.minus == 0.0);
}

TEST_CASE("nodal domain examples") {
  const auto g = testutil::p4();
  auto d = nodal_domains(g, std::vector<double>{1, 1, -1, -1});
  CHECK(d.strong_count() == 2);
  CHECK(d.weak_count() == 2);
  CHECK(d.strong_pos[0] == VertexSet{0, 1});
  CHECK(d.strong_neg[0] == VertexSet{2, 3});
  d = nodal_domains(g, std::vector<double>{1, -1, 1, -1});
  CHECK(d.strong_count() == 4);
  d = nodal_domains(g, std::vector<double>{1, 1, 1, 1});
  CHECK(d.strong_pos.size() == 1);
  CHECK(d.strong_neg.empty());
  CHECK(d.weak_pos.size() == 1);
  CHECK(d.weak_pos[0] == VertexSet{0, 1, 2, 3});
}
