#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subhyp/cut_weight.hpp"

namespace subhyp {

/// A point of theta_e * B_e, one coordinate per member of hyperedge `edge`
/// (coordinates of vertices outside the hyperedge are implicitly zero).
struct BasePoint {
  int edge = -1;
  std::vector<double> coords;
};

/// Local positions sorted by x nonincreasing; ties by ascending position.
std::vector<int> greedy_order(std::span<const double> x);

/// Lovasz extension f(x) = sum_j F(S_j)(x_{i_j} - x_{i_{j+1}}) over the greedy chain.
double lovasz(const CutWeightFn& w, std::span<const double> x);

/// Greedy vertex of scale * B for a given permutation of local positions:
/// y_{order[j]} = scale * (F(S_j) - F(S_{j-1})).
std::vector<double> greedy_point(const CutWeightFn& w, std::span<const int> order, double scale = 1.0);

/// Greedy subgradient at x, a point of the (unscaled) face argmax_{y in B} <y, x>.
BasePoint subgradient(const CutWeightFn& w, std::span<const double> x);

/// All distinct greedy vertices of B (one per permutation, deduplicated).
std::vector<BasePoint> extreme_points(const CutWeightFn& w, int cap = 8);

struct MinNormOptions {
  double eps = 1e-10;     ///< duality-gap threshold on the squared distance
  double stall = 1e-12;   ///< stop when an outer step decreases ||y + a||^2 by less than this
  long max_iter = 0;      ///< 0 means 10 |e|^2 log(1/eps)
  bool closed_form = true;  ///< cardinality weights use the exact sorted projection
};

/// argmin_{y in theta * B} ||y + a||^2, the Euclidean projection of -a onto theta * B.
BasePoint min_norm_shifted(const CutWeightFn& w, double theta, std::span<const double> a,
                           const MinNormOptions& opts = {});

/// Fujishige-Wolfe minimum-norm-point on a + theta * B, regardless of weight kind.
BasePoint min_norm_wolfe(const CutWeightFn& w, double theta, std::span<const double> a,
                         const MinNormOptions& opts = {});

/// y(S) <= theta w(S) for all S and y(e) = 0, within `tol`. Exhaustive for tables;
/// cardinality weights are checked via sorted prefix sums, which is equivalent.
bool check_membership(const CutWeightFn& w, double theta, std::span<const double> y, double tol = 1e-9);

/// Checks normalization, symmetry, submodularity and the incidence condition
/// w({v}) > 0. Exhaustive for |e| <= 12, 1000 sampled (S, T) pairs above.
/// Throws Error(NotSubmodular) or Error(InvalidHypergraph) on violation.
void validate_weight(const CutWeightFn& w, std::uint64_t seed = 0x5eed, double tol = 1e-12);

}  // namespace subhyp
