#include <doctest.h>

#include "subhyp/error.hpp"
#include "subhyp/oracle.hpp"
#include "subhyp/runner.hpp"
#include "test_util.hpp"

using namespace subhyp;

namespace {

HypergraphFile p4_file() { return read_hypergraph(std::string(SUBHYP_TEST_DATA) + "/p4.json"); }

ErrorKind config_error(const Json& j) {
  try {
    config_from_json(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const auto c = config_from_json(Json::parse(R"({"inner": "sfm", "restarts": 5, "alphas": [0.1, 0.2]})"));
  CHECK(c.inner == "sfm");
  CHECK(c.restarts == 5);
  CHECK(c.alphas == std::vector<double>{0.1, 0.2});
  CHECK(ipm_options(c).inner == InnerNorm::Linf);
  CHECK(config_from_json(config_to_json(c)).alphas == c.alphas);
  CHECK(config_error(Json::parse(R"({"bogus": 1})")) == ErrorKind::Config);
  CHECK(config_error(Json::parse(R"({"inner": "newton"})")) == ErrorKind::Config);
  CHECK(config_error(Json::parse(R"({"eps_outer": 0})")) == ErrorKind::Config);
  CHECK(config_error(Json::parse(R"({"restarts": "three"})")) == ErrorKind::Config);
  CHECK(config_error(Json::parse(R"({"alphas": [0.7]})")) == ErrorKind::Config);
  CHECK(config_error(Json::parse("[1, 2]")) == ErrorKind::Config);
}

TEST_CASE("cluster on P4 recovers the labeled split") {
  RunConfig cfg;
  cfg.sdp = true;
  const auto reports = run_cluster(p4_file(), cfg);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0]["algorithm"] == "IPM-S");
  CHECK(reports[1]["algorithm"] == "IPM-H");
  CHECK(reports[2]["algorithm"] == "SDP");
  for (const auto& r : reports) {
    CHECK(r["conductance"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(r["clustering_error"] == 0);
    CHECK(r.contains("seconds"));
    CHECK(r["seed"] == 1);
  }
  // Either side of the optimal cut is a valid answer.
  const auto side = reports[0]["partition"];
  CHECK((side == Json::array({0, 1}) || side == Json::array({2, 3})));
  CHECK(reports[0]["trace"].size() >= 1);
  CHECK(reports[2]["sdp_opt"].get<double>() == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("cluster without labels reports a null error") {
  HypergraphFile f{testutil::p4(), std::nullopt};
  RunConfig cfg;
  cfg.inner = "sfm";
  const auto reports = run_cluster(f, cfg);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0]["clustering_error"].is_null());
}

TEST_CASE("alpha sweep yields one report per alpha in order") {
  RunConfig cfg;
  cfg.alphas = {0.3, 0.1, 0.2};
  cfg.restarts = 1;
  const auto f = HypergraphFile{random_instance({8, 6, 5, "alpha", 2, false}), std::nullopt};
  const auto reports = run_cluster(f, cfg);
  REQUIRE(reports.size() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(reports[i]["algorithm"] == "IPM-S");
    CHECK(reports[i]["alpha"] == cfg.alphas[i]);
  }
  CHECK(reports[3]["algorithm"] == "IPM-H");
  CHECK_FALSE(reports[3].contains("alpha"));
}

TEST_CASE("homogeneous weights are the small-alpha limit") {
  const auto g = random_instance({9, 6, 6, "table", 3, true});
  const auto h = with_homogeneous_weights(g);
  // ceil(alpha |e| - eps) = 1 once alpha |e| <= 1.
  const auto a = with_alpha_weights(g, 0.01);
  for (std::uint64_t s = 0; s < 512; ++s) CHECK(testutil::boundary_of(h, s) == testutil::boundary_of(a, s));
  for (int e = 0; e < g.num_edges(); ++e) {
    CHECK(h.edge(e).members == g.edge(e).members);
    CHECK(h.edge(e).theta == g.edge(e).theta);
  }
}

TEST_CASE("spectrum methods certify their eigenpairs") {
  const HypergraphFile p2{testutil::p2(), std::nullopt};
  RunConfig cfg;
  for (const char* method : {"sdp", "dense"}) {
    const auto r = run_spectrum(p2, 2.0, method, cfg);
    CHECK(r["lambda"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r["certificate"]["valid"] == true);
  }
  const auto r1 = run_spectrum(p2, 1.0, "ipm", cfg);
  CHECK(r1["lambda"].get<double>() == doctest::Approx(1.0));
  CHECK(r1["certificate"]["valid"] == true);
  CHECK_THROWS_AS(run_spectrum(p2, 1.0, "sdp", cfg), Error);
  CHECK_THROWS_AS(run_spectrum(p2, 2.0, "power", cfg), Error);
  CHECK_THROWS_AS(run_spectrum(HypergraphFile{testutil::h1(), std::nullopt}, 2.0, "dense", cfg), Error);
}

TEST_CASE("verify suites pass on small instances") {
  for (const auto& r : run_verify("all", 5, 3, 7)) {
    INFO(r.dump());
    CHECK(r["passed"] == true);
    CHECK(r["failures"] == 0);
    CHECK(r["checks"].get<int>() > 0);
  }
  CHECK_THROWS_AS(run_verify("nope", 1, 1, 5), Error);
  CHECK_THROWS_AS(run_verify("all", 1, 1, 13), Error);
  CHECK_THROWS_AS(run_verify("all", 1, 0, 5), Error);
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code(ErrorKind::Config) == 1);
  for (auto k : {ErrorKind::ParseError, ErrorKind::InvalidHypergraph, ErrorKind::EmptyHypergraph,
                 ErrorKind::NotSubmodular, ErrorKind::ArityTooLarge, ErrorKind::TooLarge, ErrorKind::NotGraph,
                 ErrorKind::LabelArityMismatch, ErrorKind::EmptySide})
    CHECK(exit_code(k) == 2);
  for (auto k : {ErrorKind::NoConvergence, ErrorKind::ConstantInput, ErrorKind::NotConnected,
                 ErrorKind::DegenerateEmbedding})
    CHECK(exit_code(k) == 3);
}
