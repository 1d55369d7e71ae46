#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subhyp/hypergraph.hpp"

namespace subhyp {

/// Enumeration limits checked before any exhaustive search starts.
struct OracleBudget {
  int max_n_subsets = 20;
  int max_n_partitions = 10;
  int max_k = 3;
};

struct CutOptimum {
  double value = 0.0;
  VertexSet set;
};

/// min over proper S of conductance(S); ties go to the smallest bitmask
/// (bit v <-> vertex v). Throws Error(TooLarge) past the budget.
CutOptimum exact_h2(const SubmodularHypergraph& g, const OracleBudget& budget = {});

/// min over k-tuples of pairwise disjoint nonempty sets of the largest
/// conductance. The tuple does not have to cover V.
double exact_hk(const SubmodularHypergraph& g, int k, const OracleBudget& budget = {});

using SetFunction = std::function<double(std::uint64_t mask)>;

/// Exhaustive minimum over all 2^n subsets, empty set included; ties go to
/// the smallest bitmask.
struct SfmOptimum {
  double value = 0.0;
  std::uint64_t mask = 0;
  VertexSet set;
};
SfmOptimum exact_sfm(const SetFunction& objective, int n, const OracleBudget& budget = {});

/// Generalized eigenpairs of L x = λ diag(mu) x for a 2-uniform homogeneous
/// hypergraph (L = D - A with edge weights theta). Eigenvalues ascending;
/// column j of `vectors` is the eigenvector of values[j], normalized in S_{2,mu}.
struct GraphSpectrum {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};
GraphSpectrum dense_graph_spectrum(const SubmodularHypergraph& g);

/// f(x) = max over all |e|! greedy vertices of <y, x>, independent of the greedy chain.
double lovasz_by_enumeration(const CutWeightFn& w, std::span<const double> x);

/// Connectivity as "every proper cut has positive boundary".
bool connected_by_cuts(const SubmodularHypergraph& g, double tol = 1e-12);

struct InstanceSpec {
  int n = 6;
  int m = 5;
  int max_arity = 3;
  std::string weight_kind = "homogeneous";  ///< homogeneous | alpha | table
  std::uint64_t seed = 1;
  bool random_theta = false;  ///< theta_e uniform in [0.5, 2] instead of 1
};

/// Connected by construction: a random spanning chain of hyperedges is laid
/// down first, then the remaining ones are placed at random. mu = degrees.
SubmodularHypergraph random_instance(const InstanceSpec& spec);

/// Random normalized symmetric submodular table on `arity` members: a sum of
/// random graph cuts plus a homogeneous term, scaled to max 1.
CutWeightFn random_table_weight(int arity, std::uint64_t seed);

}  // namespace subhyp
