#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "subhyp/error.hpp"
#include "subhyp/io.hpp"
#include "subhyp/oracle.hpp"
#include "test_util.hpp"

using namespace subhyp;

namespace {

ErrorKind kind_of(const Json& j) {
  try {
    hypergraph_from_json(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Config;
}

}  // namespace

TEST_CASE("bundled fixture loads") {
  const auto f = read_hypergraph(std::string(SUBHYP_TEST_DATA) + "/p4.json");
  CHECK(f.graph.num_vertices() == 4);
  CHECK(f.graph.num_edges() == 3);
  CHECK(f.graph.mu() == std::vector<double>{1, 2, 2, 1});
  REQUIRE(f.labels);
  CHECK(*f.labels == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("json round trip keeps every weight kind") {
  for (const char* kind : {"homogeneous", "alpha", "table"}) {
    const auto g = random_instance({7, 6, 4, kind, 3, true});
    const std::vector<int> labels{0, 1, 0, 1, 1, 0, 0};
    const auto j = hypergraph_to_json(g, &labels);
    const auto back = hypergraph_from_json(j);
    CHECK(hypergraph_to_json(back.graph, &*back.labels) == j);
    CHECK(back.graph.mu() == g.mu());
    for (std::uint64_t s = 0; s < 128; ++s)
      CHECK(testutil::boundary_of(back.graph, s) == testutil::boundary_of(g, s));
    CHECK(*back.labels == labels);
  }
}

TEST_CASE("files round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "subhyp_io_roundtrip.json").string();
  const auto g = testutil::p4();
  write_hypergraph(path, g);
  const auto back = read_hypergraph(path);
  CHECK(hypergraph_to_json(back.graph) == hypergraph_to_json(g));
  CHECK_FALSE(back.labels);
  std::remove(path.c_str());
}

TEST_CASE("mu defaults to degrees") {
  const Json j = {{"n", 3},
                  {"edges", {{{"members", {0, 1}}, {"theta", 2.0}}, {{"members", {1, 2}}, {"theta", 1.0}}}}};
  const auto f = hypergraph_from_json(j);
  CHECK(f.graph.mu() == std::vector<double>{2, 3, 1});
  CHECK(f.graph.edge(0).weight.kind() == CutWeightFn::Kind::Homogeneous);
}

TEST_CASE("malformed input is rejected") {
  CHECK(kind_of(Json::parse(R"({"edges": []})")) == ErrorKind::ParseError);
  CHECK(kind_of(Json::parse(R"({"n": 2, "edges": 3})")) == ErrorKind::ParseError);
  CHECK(kind_of(Json::parse(R"({"n": 2, "edges": [{"members": [0, 1], "weight": {"kind": "bogus"}}]})")) ==
        ErrorKind::ParseError);
  CHECK(kind_of(Json::parse(R"({"n": 2, "edges": [{"members": [0, 5]}]})")) == ErrorKind::InvalidHypergraph);
  CHECK(kind_of(Json::parse(R"({"n": 2, "edges": [{"members": [0]}]})")) == ErrorKind::InvalidHypergraph);
  CHECK(kind_of(Json::parse(R"({"n": 2, "mu": [1], "edges": []})")) == ErrorKind::InvalidHypergraph);
  CHECK(kind_of(Json::parse(R"({"n": 2, "mu": [1, -1], "edges": []})")) == ErrorKind::InvalidHypergraph);
  CHECK(kind_of(Json::parse(R"({"n": 2, "edges": [], "labels": [0]})")) == ErrorKind::InvalidHypergraph);
  CHECK(kind_of(Json::parse(
            R"({"n": 2, "edges": [{"members": [0, 1], "weight": {"kind": "table", "params": {"values": [0, 1]}}}]})")) ==
        ErrorKind::InvalidHypergraph);
  // Asymmetric table.
  CHECK(kind_of(Json::parse(
            R"({"n": 2, "edges": [{"members": [0, 1], "weight": {"kind": "table", "params": {"values": [0, 1, 0.5, 0]}}}]})")) ==
        ErrorKind::NotSubmodular);
  CHECK_THROWS_AS(read_hypergraph("/nonexistent/file.json"), Error);
}

TEST_CASE("weights serialize by kind") {
  const auto a = weight_to_json(CutWeightFn::alpha_cardinality(5, 0.2));
  CHECK(a["kind"] == "alpha");
  CHECK(a["params"]["alpha"] == 0.2);
  const auto back = weight_from_json(a, 5);
  for (Mask s = 0; s < 32; ++s) CHECK(back.of_mask(s) == CutWeightFn::alpha_cardinality(5, 0.2).of_mask(s));
  CHECK(weight_to_json(CutWeightFn::homogeneous(3))["kind"] == "homogeneous");
  CHECK(weight_to_json(CutWeightFn::table({0, 1, 1, 0}))["params"]["values"].size() == 4);
}

TEST_CASE("certificates round trip") {
  const auto g = testutil::p2();
  const auto c = verify_eigenpair(g, std::vector<double>{1, -1}, 2.0, 2.0);
  const auto j = certificate_to_json(c);
  CHECK(j["valid"] == true);
  CHECK(j["lambda"] == 2.0);
  CHECK(j["witnesses"].size() == 1);
  const auto back = certificate_from_json(j);
  CHECK(back.valid == c.valid);
  CHECK(back.residual == c.residual);
  CHECK(back.x == c.x);
  REQUIRE(back.witnesses.size() == 1);
  CHECK(back.witnesses[0].coords == c.witnesses[0].coords);
}
