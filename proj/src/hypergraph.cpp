#include "subhyp/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "subhyp/error.hpp"
#include "subhyp/submodular.hpp"

namespace subhyp {

Membership to_membership(int n, const VertexSet& set) {
  Membership m(n, 0);
  for (int v : set) {
    if (v < 0 || v >= n) throw Error(ErrorKind::InvalidHypergraph, "vertex " + std::to_string(v) + " out of range");
    m[v] = 1;
  }
  return m;
}

VertexSet to_vertex_set(std::span<const std::uint8_t> membership) {
  VertexSet out;
  for (std::size_t v = 0; v < membership.size(); ++v)
    if (membership[v]) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<double> Hyperedge::gather(std::span<const double> x) const {
  std::vector<double> local(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) local[i] = x[members[i]];
  return local;
}

double Hyperedge::cut(std::span<const std::uint8_t> in_set) const {
  if (weight.kind() == CutWeightFn::Kind::Table) {
    Mask mask = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (in_set[members[i]]) mask |= Mask{1} << i;
    return theta * weight.of_mask(mask);
  }
  int count = 0;
  for (int v : members) count += in_set[v] ? 1 : 0;
  return theta * weight.of_size(count);
}

SubmodularHypergraph::SubmodularHypergraph(std::vector<double> mu, std::vector<Hyperedge> edges, bool validate)
    : mu_(std::move(mu)), edges_(std::move(edges)) {
  const int n = num_vertices();
  incident_.assign(n, {});
  for (int v = 0; v < n; ++v)
    if (!(mu_[v] > 0.0) || !std::isfinite(mu_[v]))
      throw Error(ErrorKind::InvalidHypergraph, "mu[" + std::to_string(v) + "] must be positive");
  for (int e = 0; e < num_edges(); ++e) {
    const auto& edge = edges_[e];
    if (edge.size() < 2) throw Error(ErrorKind::InvalidHypergraph, "hyperedge " + std::to_string(e) + " has fewer than 2 members");
    if (edge.weight.arity() != edge.size())
      throw Error(ErrorKind::InvalidHypergraph, "hyperedge " + std::to_string(e) + " weight arity mismatch");
    if (!(edge.theta > 0.0) || !std::isfinite(edge.theta))
      throw Error(ErrorKind::InvalidHypergraph, "hyperedge " + std::to_string(e) + " needs theta > 0");
    for (std::size_t i = 0; i < edge.members.size(); ++i) {
      const int v = edge.members[i];
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidHypergraph, "hyperedge member out of range");
      if (i > 0 && edge.members[i - 1] >= v)
        throw Error(ErrorKind::InvalidHypergraph, "hyperedge members must be strictly ascending");
      incident_[v].push_back(e);
    }
    if (validate) validate_weight(edge.weight, 0x5eed + static_cast<std::uint64_t>(e));
  }
}

SubmodularHypergraph SubmodularHypergraph::with_degree_measure(int n, std::vector<Hyperedge> edges, bool validate) {
  std::vector<double> mu(n, 0.0);
  for (const auto& e : edges)
    for (int v : e.members)
      if (v >= 0 && v < n) mu[v] += e.theta;
  for (auto& m : mu)
    if (m <= 0.0) m = 1.0;
  return SubmodularHypergraph(std::move(mu), std::move(edges), validate);
}

std::vector<double> SubmodularHypergraph::degrees() const {
  std::vector<double> d(num_vertices(), 0.0);
  for (const auto& e : edges_)
    for (int v : e.members) d[v] += e.theta;
  return d;
}

int SubmodularHypergraph::max_arity() const noexcept {
  int z = 0;
  for (const auto& e : edges_) z = std::max(z, e.size());
  return z;
}

double SubmodularHypergraph::total_volume() const noexcept { return std::accumulate(mu_.begin(), mu_.end(), 0.0); }

double volume(const SubmodularHypergraph& g, std::span<const std::uint8_t> in_set) {
  double vol = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (in_set[v]) vol += g.mu()[v];
  return vol;
}

double volume(const SubmodularHypergraph& g, const VertexSet& set) {
  return volume(g, to_membership(g.num_vertices(), set));
}

double boundary_volume(const SubmodularHypergraph& g, std::span<const std::uint8_t> in_set) {
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.cut(in_set);
  return total;
}

double boundary_volume(const SubmodularHypergraph& g, const VertexSet& set) {
  return boundary_volume(g, to_membership(g.num_vertices(), set));
}

double conductance(const SubmodularHypergraph& g, std::span<const std::uint8_t> in_set) {
  const double inside = volume(g, in_set);
  int count = 0;
  for (int v = 0; v < g.num_vertices(); ++v) count += in_set[v] ? 1 : 0;
  if (count == 0 || count == g.num_vertices())
    throw Error(ErrorKind::EmptySide, "conductance needs both sides of the cut nonempty");
  const double outside = g.total_volume() - inside;
  return boundary_volume(g, in_set) / std::min(inside, outside);
}

double conductance(const SubmodularHypergraph& g, const VertexSet& set) {
  return conductance(g, to_membership(g.num_vertices(), set));
}

double tau(const SubmodularHypergraph& g) {
  const auto d = g.degrees();
  double t = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v) t = std::max(t, d[v] / g.mu()[v]);
  return t;
}

namespace {

constexpr double kZeroCut = 1e-12;

// `scaled` holds theta * w over the local masks of `members`.
void split_edge(std::vector<int> members, std::vector<double> scaled, std::vector<Hyperedge>& out) {
  const int n = static_cast<int>(members.size());
  if (n < 2) return;  // singleton weights vanish identically
  const Mask full = (Mask{1} << n) - 1;
  const double top = *std::max_element(scaled.begin(), scaled.end());
  if (top <= kZeroCut) return;

  Mask zero_cut = 0;
  for (Mask s = 1; s < full; ++s) {
    if (scaled[s] <= kZeroCut) {
      zero_cut = s;
      break;
    }
  }
  if (zero_cut == 0) {
    std::vector<double> normalized(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) normalized[i] = scaled[i] / top;
    // Zero cuts were handled above, so value 0 only appears at the extremes.
    normalized[0] = 0.0;
    normalized[full] = 0.0;
    out.emplace_back(std::move(members), top, CutWeightFn::table(std::move(normalized)));
    return;
  }

  const double tol = kZeroCut * std::max(1.0, top);
  const Mask rest = full & ~zero_cut;
  for (Mask s = 0; s <= full; ++s) {
    if (std::abs(scaled[s] - scaled[s & zero_cut] - scaled[s & rest]) > tol)
      throw Error(ErrorKind::NotSubmodular, "zero-weight cut does not split the hyperedge weight");
  }

  auto restrict_to = [&](Mask part) {
    std::vector<int> sub_members;
    std::vector<int> positions;
    for (int i = 0; i < n; ++i) {
      if (part & (Mask{1} << i)) {
        sub_members.push_back(members[i]);
        positions.push_back(i);
      }
    }
    const int k = static_cast<int>(positions.size());
    std::vector<double> sub(std::size_t{1} << k);
    for (Mask t = 0; t < sub.size(); ++t) {
      Mask local = 0;
      for (int i = 0; i < k; ++i)
        if (t & (Mask{1} << i)) local |= Mask{1} << positions[i];
      sub[t] = scaled[local];
    }
    split_edge(std::move(sub_members), std::move(sub), out);
  };
  restrict_to(zero_cut);
  restrict_to(rest);
}

}  // namespace

SubmodularHypergraph reduce(const SubmodularHypergraph& g) {
  std::vector<Hyperedge> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    if (e.weight.cardinality_based()) {
      // Homogeneous and alpha profiles are >= 1/2 on every proper cut.
      out.push_back(e);
      continue;
    }
    std::vector<double> scaled(e.weight.values());
    for (auto& v : scaled) v *= e.theta;
    split_edge(e.members, std::move(scaled), out);
  }
  return SubmodularHypergraph(g.mu(), std::move(out), false);
}

std::vector<VertexSet> connected_components(const SubmodularHypergraph& g, std::span<const std::uint8_t> active,
                                            bool already_reduced) {
  if (!already_reduced) return connected_components(reduce(g), active, true);
  const int n = g.num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges()) {
    int anchor = -1;
    for (int v : e.members) {
      if (!active[v]) continue;
      if (anchor < 0) {
        anchor = v;
      } else {
        const int a = find(anchor), b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<VertexSet> comps;
  std::vector<int> slot(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!active[v]) continue;
    const int root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].push_back(v);
  }
  return comps;
}

std::vector<VertexSet> connected_components(const SubmodularHypergraph& g) {
  const Membership all(g.num_vertices(), 1);
  return connected_components(g, all);
}

bool is_connected(const SubmodularHypergraph& g) { return connected_components(g).size() <= 1; }

}  // namespace subhyp

namespace subhyp {

IncrementalCut::IncrementalCut(const SubmodularHypergraph& g)
    : g_(&g),
      inside_(g.num_vertices(), 0),
      edge_count_(g.num_edges(), 0),
      edge_mask_(g.num_edges(), 0),
      terms_(g.num_edges(), 0.0),
      slots_(g.num_vertices()),
      total_volume_(g.total_volume()) {
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& members = g.edge(e).members;
    for (int i = 0; i < static_cast<int>(members.size()); ++i) slots_[members[i]].emplace_back(e, i);
  }
}

void IncrementalCut::flip(int v) {
  const bool adding = !inside_[v];
  inside_[v] = adding ? 1 : 0;
  count_ += adding ? 1 : -1;
  volume_ += adding ? g_->mu()[v] : -g_->mu()[v];
  if (count_ == 0) volume_ = 0.0;
  for (auto [e, pos] : slots_[v]) {
    const auto& edge = g_->edge(e);
    edge_count_[e] += adding ? 1 : -1;
    if (edge.weight.kind() == CutWeightFn::Kind::Table) {
      edge_mask_[e] ^= Mask{1} << pos;
      terms_[e] = edge.theta * edge.weight.of_mask(edge_mask_[e]);
    } else {
      terms_[e] = edge.theta * edge.weight.of_size(edge_count_[e]);
    }
  }
}

double IncrementalCut::boundary() const {
  double total = 0.0;
  for (double t : terms_) total += t;
  return total;
}

double IncrementalCut::conductance() const {
  if (count_ == 0 || count_ == g_->num_vertices()) return std::numeric_limits<double>::infinity();
  // Recompute the smaller side's volume from scratch to avoid drift.
  double inside = 0.0;
  for (int v = 0; v < g_->num_vertices(); ++v)
    if (inside_[v]) inside += g_->mu()[v];
  return boundary() / std::min(inside, total_volume_ - inside);
}

}  // namespace subhyp
