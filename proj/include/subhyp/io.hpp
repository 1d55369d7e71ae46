#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subhyp/hypergraph.hpp"
#include "subhyp/laplacian.hpp"

namespace subhyp {

using Json = nlohmann::json;

/// Hypergraph plus optional per-vertex labels carried in the same file.
struct HypergraphFile {
  SubmodularHypergraph graph;
  std::optional<std::vector<int>> labels;
};

/// {n, mu, edges:[{members, theta, weight:{kind, params}}], labels?}. Table
/// params are {"values": [...]} indexed by local bitmask; alpha params are
/// {"alpha": a}. Throws Error(ParseError) or the validation error.
HypergraphFile hypergraph_from_json(const Json& j);
Json hypergraph_to_json(const SubmodularHypergraph& g, const std::vector<int>* labels = nullptr);

HypergraphFile read_hypergraph(const std::string& path);
void write_hypergraph(const std::string& path, const SubmodularHypergraph& g, const std::vector<int>* labels = nullptr);

Json weight_to_json(const CutWeightFn& w);
CutWeightFn weight_from_json(const Json& j, int arity);

/// {lambda, p, residual, valid, x, witnesses:[{edge, coords}]}.
Json certificate_to_json(const EigenpairCertificate& cert);
EigenpairCertificate certificate_from_json(const Json& j);

}  // namespace subhyp
