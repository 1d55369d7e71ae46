#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "subhyp/cut_weight.hpp"

namespace subhyp {

/// Sorted list of vertex ids.
using VertexSet = std::vector<int>;
/// 0/1 flag per vertex.
using Membership = std::vector<std::uint8_t>;

Membership to_membership(int n, const VertexSet& set);
VertexSet to_vertex_set(std::span<const std::uint8_t> membership);

struct Hyperedge {
  std::vector<int> members;  ///< ascending vertex ids; local position i <-> members[i]
  double theta = 1.0;        ///< scale, the max cut weight before normalization
  CutWeightFn weight;

  Hyperedge(std::vector<int> members_, double theta_, CutWeightFn weight_)
      : members(std::move(members_)), theta(theta_), weight(std::move(weight_)) {}

  int size() const noexcept { return static_cast<int>(members.size()); }

  /// x restricted to the members, in local order.
  std::vector<double> gather(std::span<const double> x) const;
  /// theta * w(S ∩ e).
  double cut(std::span<const std::uint8_t> in_set) const;
};

/// Vertices with positive weights mu and hyperedges carrying normalized,
/// symmetric, submodular cut weights. Immutable after construction.
class SubmodularHypergraph {
 public:
  /// Validates every invariant (positive mu, member ranges, |e| >= 2, weight
  /// oracles) unless `validate` is false.
  SubmodularHypergraph(std::vector<double> mu, std::vector<Hyperedge> edges, bool validate = true);

  /// Same as above with mu = degrees (vertices in no hyperedge get mu = 1).
  static SubmodularHypergraph with_degree_measure(int n, std::vector<Hyperedge> edges, bool validate = true);

  int num_vertices() const noexcept { return static_cast<int>(mu_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  const Hyperedge& edge(int e) const { return edges_.at(e); }
  /// Hyperedges containing vertex v.
  const std::vector<int>& incident(int v) const { return incident_.at(v); }

  /// d_v = sum of theta_e over hyperedges containing v.
  std::vector<double> degrees() const;
  /// zeta(E), the largest hyperedge cardinality (0 without hyperedges).
  int max_arity() const noexcept;
  double total_volume() const noexcept;

 private:
  std::vector<double> mu_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<int>> incident_;
};

double volume(const SubmodularHypergraph& g, std::span<const std::uint8_t> in_set);
double volume(const SubmodularHypergraph& g, const VertexSet& set);

/// vol(∂S) = sum_e theta_e w_e(S ∩ e).
double boundary_volume(const SubmodularHypergraph& g, std::span<const std::uint8_t> in_set);
double boundary_volume(const SubmodularHypergraph& g, const VertexSet& set);

/// vol(∂S) / min(vol S, vol S̄). Throws Error(EmptySide) if either side is empty.
double conductance(const SubmodularHypergraph& g, std::span<const std::uint8_t> in_set);
double conductance(const SubmodularHypergraph& g, const VertexSet& set);

/// max_v d_v / mu_v.
double tau(const SubmodularHypergraph& g);

/// Splits hyperedges along zero-weight proper cuts until every proper cut of
/// every hyperedge is positive; boundary volumes are unchanged on all subsets.
/// Throws Error(NotSubmodular) when a zero cut does not decompose the weight.
SubmodularHypergraph reduce(const SubmodularHypergraph& g);

/// Connected components of `active` in the vertex-hyperedge incidence graph of
/// reduce(g) (or of g itself when `already_reduced`). Each component is sorted;
/// components are ordered by smallest vertex.
std::vector<VertexSet> connected_components(const SubmodularHypergraph& g, std::span<const std::uint8_t> active,
                                            bool already_reduced = false);
std::vector<VertexSet> connected_components(const SubmodularHypergraph& g);

bool is_connected(const SubmodularHypergraph& g);

/// Vertex set under single-vertex toggles with per-hyperedge cut terms kept
/// current, for sweeps and subset enumeration. boundary() re-sums the terms in
/// hyperedge order, so equal sets always evaluate to bitwise-equal values.
class IncrementalCut {
 public:
  explicit IncrementalCut(const SubmodularHypergraph& g);

  void flip(int v);
  bool contains(int v) const { return inside_[v] != 0; }
  int size() const noexcept { return count_; }
  double volume() const noexcept { return volume_; }
  double boundary() const;
  /// Conductance of the current set; +inf when a side is empty.
  double conductance() const;
  const Membership& membership() const noexcept { return inside_; }

 private:
  const SubmodularHypergraph* g_;
  Membership inside_;
  std::vector<int> edge_count_;
  std::vector<Mask> edge_mask_;
  std::vector<double> terms_;
  std::vector<std::vector<std::pair<int, int>>> slots_;  // vertex -> (edge, local position)
  double volume_ = 0.0;
  double total_volume_ = 0.0;
  int count_ = 0;
};

}  // namespace subhyp
