#include "subhyp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "subhyp/error.hpp"

namespace subhyp {

namespace {

constexpr double kSlack = 1e-12;

void check_subsets(int n, const OracleBudget& budget) {
  if (n > budget.max_n_subsets || n > 62)
    throw Error(ErrorKind::TooLarge, "subset enumeration limited to n <= " + std::to_string(budget.max_n_subsets));
}

VertexSet mask_to_set(std::uint64_t mask, int n) {
  VertexSet s;
  for (int v = 0; v < n; ++v)
    if (mask & (std::uint64_t{1} << v)) s.push_back(v);
  return s;
}

// conductance of every mask (inf for the empty set and V).
std::vector<double> all_conductances(const SubmodularHypergraph& g) {
  const int n = g.num_vertices();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> out(count, std::numeric_limits<double>::infinity());
  const double total = g.total_volume();
  Membership in(n, 0);
  for (std::uint64_t s = 1; s + 1 < count; ++s) {
    double vol = 0.0;
    for (int v = 0; v < n; ++v) {
      in[v] = (s >> v) & 1u;
      if (in[v]) vol += g.mu()[v];
    }
    out[s] = boundary_volume(g, in) / std::min(vol, total - vol);
  }
  return out;
}

}  // namespace

CutOptimum exact_h2(const SubmodularHypergraph& g, const OracleBudget& budget) {
  const int n = g.num_vertices();
  check_subsets(n, budget);
  if (n < 2) throw Error(ErrorKind::EmptySide, "a bipartition needs at least two vertices");
  const auto cond = all_conductances(g);
  std::uint64_t best = 1;
  for (std::uint64_t s = 2; s + 1 < cond.size(); ++s)
    if (cond[s] < cond[best] - kSlack * std::max(1.0, cond[best])) best = s;
  return CutOptimum{cond[best], mask_to_set(best, n)};
}

double exact_hk(const SubmodularHypergraph& g, int k, const OracleBudget& budget) {
  const int n = g.num_vertices();
  if (k < 2 || k > budget.max_k) throw Error(ErrorKind::Config, "k must lie in [2, max_k]");
  if (n > budget.max_n_partitions)
    throw Error(ErrorKind::TooLarge, "k-tuple enumeration limited to n <= " + std::to_string(budget.max_n_partitions));
  if (n < k) throw Error(ErrorKind::EmptySide, "fewer vertices than parts");
  const auto cond = all_conductances(g);
  // label[v] in {0 (unused), 1..k}; each ordered tuple appears k! times.
  std::vector<int> label(n, 0);
  std::vector<std::uint64_t> part(k + 1);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::fill(part.begin(), part.end(), 0);
    for (int v = 0; v < n; ++v) part[label[v]] |= std::uint64_t{1} << v;
    double worst = 0.0;
    bool ok = true;
    for (int i = 1; i <= k && ok; ++i) {
      if (part[i] == 0) ok = false;
      else worst = std::max(worst, cond[part[i]]);
    }
    if (ok) best = std::min(best, worst);
    int v = 0;
    while (v < n && label[v] == k) label[v++] = 0;
    if (v == n) break;
    ++label[v];
  }
  return best;
}

SfmOptimum exact_sfm(const SetFunction& objective, int n, const OracleBudget& budget) {
  check_subsets(n, budget);
  SfmOptimum best;
  best.value = objective(0);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < count; ++s) {
    const double v = objective(s);
    if (v < best.value - kSlack * std::max(1.0, std::abs(best.value))) {
      best.value = v;
      best.mask = s;
    }
  }
  best.set = mask_to_set(best.mask, n);
  return best;
}

GraphSpectrum dense_graph_spectrum(const SubmodularHypergraph& g) {
  const int n = g.num_vertices();
  if (n > 500) throw Error(ErrorKind::TooLarge, "dense spectrum limited to n <= 500");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    if (e.size() != 2) throw Error(ErrorKind::NotGraph, "hyperedge with more than two members");
    if (std::abs(e.weight.of_mask(1) - 1.0) > 1e-12 || std::abs(e.weight.of_mask(2) - 1.0) > 1e-12)
      throw Error(ErrorKind::NotGraph, "2-edge without unit cut weight");
    const int u = e.members[0], v = e.members[1];
    L(u, u) += e.theta;
    L(v, v) += e.theta;
    L(u, v) -= e.theta;
    L(v, u) -= e.theta;
  }
  Eigen::VectorXd s(n);
  for (int v = 0; v < n; ++v) s[v] = 1.0 / std::sqrt(g.mu()[v]);
  const Eigen::MatrixXd M = s.asDiagonal() * L * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  GraphSpectrum out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  out.vectors = s.asDiagonal() * es.eigenvectors();
  return out;
}

double lovasz_by_enumeration(const CutWeightFn& w, std::span<const double> x) {
  const int n = w.arity();
  if (n > 9) throw Error(ErrorKind::ArityTooLarge, "permutation enumeration limited to 9 members");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> in(n);
  double best = -std::numeric_limits<double>::infinity();
  do {
    std::fill(in.begin(), in.end(), 0);
    double prev = 0.0, value = 0.0;
    for (int j = 0; j < n; ++j) {
      in[perm[j]] = 1;
      const double cur = w(in);
      value += (cur - prev) * x[perm[j]];
      prev = cur;
    }
    best = std::max(best, value);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool connected_by_cuts(const SubmodularHypergraph& g, double tol) {
  const int n = g.num_vertices();
  if (n <= 1) return true;
  if (n > 24) throw Error(ErrorKind::TooLarge, "cut enumeration limited to n <= 24");
  Membership in(n, 0);
  // Every proper cut has a side containing vertex 0.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t rest = 0; rest + 1 < count; ++rest) {
    in[0] = 1;
    for (int v = 1; v < n; ++v) in[v] = (rest >> (v - 1)) & 1u;
    if (boundary_volume(g, in) <= tol) return false;
  }
  return true;
}

CutWeightFn random_table_weight(int arity, std::uint64_t seed) {
  if (arity < 2 || arity > kMaxTableArity) throw Error(ErrorKind::ArityTooLarge, "table arity out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> pair(arity * arity, 0.0);
  for (int i = 0; i < arity; ++i)
    for (int j = i + 1; j < arity; ++j)
      if (unit(rng) < 0.7) pair[i * arity + j] = unit(rng);
  const double homogeneous = 0.05 + 0.5 * unit(rng);
  const Mask full = (Mask{1} << arity) - 1;
  std::vector<double> values(std::size_t{1} << arity, 0.0);
  for (Mask s = 1; s < full; ++s) {
    double v = homogeneous;
    for (int i = 0; i < arity; ++i)
      for (int j = i + 1; j < arity; ++j)
        if (((s >> i) & 1u) != ((s >> j) & 1u)) v += pair[i * arity + j];
    values[s] = v;
  }
  const double top = *std::max_element(values.begin(), values.end());
  for (auto& v : values) v /= top;
  return CutWeightFn::table(std::move(values));
}

SubmodularHypergraph random_instance(const InstanceSpec& spec) {
  if (spec.n < 2 || spec.max_arity < 2 || spec.m < 1)
    throw Error(ErrorKind::Config, "random instance needs n >= 2, m >= 1, max_arity >= 2");
  std::mt19937_64 rng(spec.seed);
  const int max_arity = std::min(spec.max_arity, spec.n);
  std::uniform_int_distribution<int> arity_dist(2, max_arity);

  auto make_weight = [&](int arity) {
    if (spec.weight_kind == "homogeneous") return CutWeightFn::homogeneous(arity);
    if (spec.weight_kind == "alpha") {
      std::uniform_real_distribution<double> a(0.05, 0.5);
      return CutWeightFn::alpha_cardinality(arity, a(rng));
    }
    if (spec.weight_kind == "table") return random_table_weight(arity, rng());
    throw Error(ErrorKind::Config, "unknown weight kind '" + spec.weight_kind + "'");
  };

  std::vector<int> order(spec.n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<int>> member_lists;
  // Spanning chain: each new hyperedge reuses one covered vertex.
  int covered = 0;
  while (covered < spec.n) {
    std::vector<int> members;
    int fresh;
    if (covered == 0) {
      fresh = std::min(arity_dist(rng), spec.n);
    } else {
      std::uniform_int_distribution<int> old(0, covered - 1);
      members.push_back(order[old(rng)]);
      fresh = std::min(arity_dist(rng) - 1, spec.n - covered);
    }
    for (int i = 0; i < fresh; ++i) members.push_back(order[covered + i]);
    covered += fresh;
    member_lists.push_back(std::move(members));
  }
  while (static_cast<int>(member_lists.size()) < spec.m) {
    std::vector<int> pool(spec.n);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(arity_dist(rng));
    member_lists.push_back(std::move(pool));
  }

  std::vector<Hyperedge> edges;
  std::uniform_real_distribution<double> theta_dist(0.5, 2.0);
  for (auto& members : member_lists) {
    std::sort(members.begin(), members.end());
    const double theta = spec.random_theta ? theta_dist(rng) : 1.0;
    const int arity = static_cast<int>(members.size());
    edges.emplace_back(std::move(members), theta, make_weight(arity));
  }
  return SubmodularHypergraph::with_degree_measure(spec.n, std::move(edges));
}

}  // namespace subhyp
