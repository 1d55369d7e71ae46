#include "subhyp/io.hpp"

#include <fstream>
#include <sstream>

#include "subhyp/error.hpp"

namespace subhyp {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, where + ": " + ex.what());
  }
}

}  // namespace

Json weight_to_json(const CutWeightFn& w) {
  Json j;
  j["kind"] = kind_name(w.kind());
  switch (w.kind()) {
    case CutWeightFn::Kind::Homogeneous:
      j["params"] = Json::object();
      break;
    case CutWeightFn::Kind::AlphaCardinality:
      j["params"] = {{"alpha", w.alpha()}};
      break;
    case CutWeightFn::Kind::Table:
      j["params"] = {{"values", w.values()}};
      break;
  }
  return j;
}

CutWeightFn weight_from_json(const Json& j, int arity) {
  const std::string where = "weight";
  const auto kind = get_as<std::string>(require(j, "kind", where), where);
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (kind == "homogeneous") return CutWeightFn::homogeneous(arity);
  if (kind == "alpha") return CutWeightFn::alpha_cardinality(arity, get_as<double>(require(params, "alpha", where), where));
  if (kind == "table") {
    auto values = get_as<std::vector<double>>(require(params, "values", where), where);
    if (values.size() != (std::size_t{1} << arity))
      throw Error(ErrorKind::InvalidHypergraph, "table weight needs 2^|e| values");
    return CutWeightFn::table(std::move(values));
  }
  throw Error(ErrorKind::ParseError, "unknown weight kind '" + kind + "'");
}

HypergraphFile hypergraph_from_json(const Json& j) {
  const int n = get_as<int>(require(j, "n", "hypergraph"), "n");
  if (n < 1) throw Error(ErrorKind::InvalidHypergraph, "n must be positive");
  const auto& jedges = require(j, "edges", "hypergraph");
  if (!jedges.is_array()) throw Error(ErrorKind::ParseError, "edges must be an array");
  std::vector<Hyperedge> edges;
  for (std::size_t e = 0; e < jedges.size(); ++e) {
    const std::string where = "edges[" + std::to_string(e) + "]";
    const auto& je = jedges[e];
    auto members = get_as<std::vector<int>>(require(je, "members", where), where);
    const double theta = je.contains("theta") ? get_as<double>(je.at("theta"), where) : 1.0;
    const int arity = static_cast<int>(members.size());
    if (arity < 2) throw Error(ErrorKind::InvalidHypergraph, where + " has fewer than 2 members");
    const Json jw = je.contains("weight") ? je.at("weight") : Json{{"kind", "homogeneous"}};
    edges.emplace_back(std::move(members), theta, weight_from_json(jw, arity));
  }
  HypergraphFile out{j.contains("mu") ? SubmodularHypergraph(get_as<std::vector<double>>(j.at("mu"), "mu"), std::move(edges))
                                      : SubmodularHypergraph::with_degree_measure(n, std::move(edges)),
                     std::nullopt};
  if (out.graph.num_vertices() != n) throw Error(ErrorKind::InvalidHypergraph, "mu length differs from n");
  if (j.contains("labels")) {
    auto labels = get_as<std::vector<int>>(j.at("labels"), "labels");
    if (static_cast<int>(labels.size()) != n) throw Error(ErrorKind::InvalidHypergraph, "labels length differs from n");
    out.labels = std::move(labels);
  }
  return out;
}

Json hypergraph_to_json(const SubmodularHypergraph& g, const std::vector<int>* labels) {
  Json j;
  j["n"] = g.num_vertices();
  j["mu"] = g.mu();
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"members", e.members}, {"theta", e.theta}, {"weight", weight_to_json(e.weight)}});
  j["edges"] = std::move(edges);
  if (labels) j["labels"] = *labels;
  return j;
}

HypergraphFile read_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, path + ": " + ex.what());
  }
  return hypergraph_from_json(j);
}

void write_hypergraph(const std::string& path, const SubmodularHypergraph& g, const std::vector<int>* labels) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
  out << hypergraph_to_json(g, labels).dump() << '\n';
}

Json certificate_to_json(const EigenpairCertificate& cert) {
  Json w = Json::array();
  for (const auto& y : cert.witnesses) w.push_back({{"edge", y.edge}, {"coords", y.coords}});
  return {{"lambda", cert.lambda}, {"p", cert.p},      {"residual", cert.residual},
          {"valid", cert.valid},   {"x", cert.x},      {"witnesses", std::move(w)}};
}

EigenpairCertificate certificate_from_json(const Json& j) {
  const std::string where = "certificate";
  EigenpairCertificate c;
  c.lambda = get_as<double>(require(j, "lambda", where), where);
  c.p = get_as<double>(require(j, "p", where), where);
  c.residual = get_as<double>(require(j, "residual", where), where);
  c.valid = j.contains("valid") ? get_as<bool>(j.at("valid"), where) : false;
  c.x = get_as<std::vector<double>>(require(j, "x", where), where);
  for (const auto& w : require(j, "witnesses", where))
    c.witnesses.push_back(BasePoint{get_as<int>(require(w, "edge", where), where),
                                    get_as<std::vector<double>>(require(w, "coords", where), where)});
  return c;
}

}  // namespace subhyp
