#pragma once

// Independent reference computations and shared fixtures for the tests. Nothing
// here calls the library's greedy chain, reductions or solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "subhyp/hypergraph.hpp"

namespace testutil {

using subhyp::CutWeightFn;
using subhyp::Hyperedge;
using subhyp::SubmodularHypergraph;

inline double weight_of(const CutWeightFn& w, std::uint32_t mask) {
  std::vector<std::uint8_t> in(w.arity());
  for (int i = 0; i < w.arity(); ++i) in[i] = (mask >> i) & 1u;
  return w(in);
}

// f(x) = min(x) F(e) + integral over t of F({x > t}), summed over the level sets.
inline double lovasz_levels(const CutWeightFn& w, const std::vector<double>& x) {
  std::vector<double> levels(x);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double total = 0.0;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    std::uint32_t above = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] >= levels[k]) above |= 1u << i;
    total += weight_of(w, above) * (levels[k] - levels[k - 1]);
  }
  return total;
}

inline double boundary_of(const SubmodularHypergraph& g, std::uint64_t mask) {
  double total = 0.0;
  for (const auto& e : g.edges()) {
    std::uint32_t local = 0;
    for (int i = 0; i < e.size(); ++i)
      if ((mask >> e.members[i]) & 1u) local |= 1u << i;
    total += e.theta * weight_of(e.weight, local);
  }
  return total;
}

inline double conductance_of(const SubmodularHypergraph& g, std::uint64_t mask) {
  double in = 0.0, all = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    all += g.mu()[v];
    if ((mask >> v) & 1u) in += g.mu()[v];
  }
  return boundary_of(g, mask) / std::min(in, all - in);
}

inline double brute_h2(const SubmodularHypergraph& g) {
  const int n = g.num_vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << n); ++s) best = std::min(best, conductance_of(g, s));
  return best;
}

inline std::vector<double> gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = normal(rng);
  return x;
}

inline SubmodularHypergraph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs,
                                             std::vector<double> mu = {}) {
  std::vector<Hyperedge> edges;
  for (auto [u, v] : pairs) edges.emplace_back(std::vector<int>{std::min(u, v), std::max(u, v)}, 1.0,
                                               CutWeightFn::homogeneous(2));
  if (mu.empty()) return SubmodularHypergraph::with_degree_measure(n, std::move(edges));
  return SubmodularHypergraph(std::move(mu), std::move(edges));
}

// Path 0-1-2-3 with mu = degrees (1, 2, 2, 1).
inline SubmodularHypergraph p4() { return graph_from_pairs(4, {{0, 1}, {1, 2}, {2, 3}}); }
inline SubmodularHypergraph p2() { return graph_from_pairs(2, {{0, 1}}, {1.0, 1.0}); }
inline SubmodularHypergraph triangle() { return graph_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}}); }

// Single homogeneous 3-edge.
inline SubmodularHypergraph h1(std::vector<double> mu = {1.0, 1.0, 1.0}) {
  std::vector<Hyperedge> edges;
  edges.emplace_back(std::vector<int>{0, 1, 2}, 1.0, CutWeightFn::homogeneous(3));
  return SubmodularHypergraph(std::move(mu), std::move(edges));
}

// theta1 w1(S ∩ A) + theta2 w2(S ∩ B) written as one table on A ∪ B (A, B given
// as local position sets of the merged edge), normalized to max 1.
inline std::pair<CutWeightFn, double> merged_table(const CutWeightFn& w1, double theta1, const std::vector<int>& a,
                                                   const CutWeightFn& w2, double theta2, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size() + b.size());
  std::vector<double> values(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < values.size(); ++s) {
    std::uint32_t ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if ((s >> a[i]) & 1u) ma |= 1u << i;
    for (std::size_t i = 0; i < b.size(); ++i)
      if ((s >> b[i]) & 1u) mb |= 1u << i;
    values[s] = theta1 * weight_of(w1, ma) + theta2 * weight_of(w2, mb);
  }
  const double top = *std::max_element(values.begin(), values.end());
  for (auto& v : values) v /= top;
  return {CutWeightFn::table(std::move(values)), top};
}

}  // namespace testutil
