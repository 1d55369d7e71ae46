#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "subhyp/hypergraph.hpp"
#include "subhyp/submodular.hpp"

namespace subhyp {

inline constexpr int kMaxSdpArity = 8;

/// Relaxation of min R_2 over vertex embeddings x'_v in R^{n_embed}:
/// min sum_e theta_e eta_e^2 subject to ||X y||^2 <= eta_e^2 for every extreme
/// point y of B_e, sum_v mu_v ||x'_v||^2 = 1 and sum_v mu_v x'_v = 0.
struct SdpProblem {
  int n_embed = 0;
  std::vector<double> mu;
  std::vector<double> theta;
  std::vector<std::vector<int>> members;
  std::vector<std::vector<BasePoint>> extreme;  ///< per hyperedge, unscaled B_e vertices
};

/// Throws Error(ArityTooLarge) when some hyperedge has more than 8 members.
/// n_embed = 0 picks n.
SdpProblem build_sdp(const SubmodularHypergraph& g, int n_embed = 0);

struct SdpSolution {
  Eigen::MatrixXd X;         ///< n_embed x n, column v is x'_v
  std::vector<double> eta;   ///< eta_e = max_y ||X y||
  double objective = 0.0;    ///< sum_e theta_e eta_e^2 at X
  double lower_bound = 0.0;  ///< certified bound on the optimum from the multipliers
  int outer_iterations = 0;
  int inner_iterations = 0;
};

struct SdpOptions {
  double tol = 1e-4;  ///< relative gap between objective and lower_bound
  int max_outer = 200;
  int max_inner = 2000;
  std::uint64_t seed = 1;  ///< initial embedding
};

/// Augmented Lagrangian on the factorized variable, with L-BFGS inner solves.
/// Throws Error(NoConvergence) if the gap stays above tol.
SdpSolution solve_sdp(const SdpProblem& prob, const SdpOptions& opts = {});

/// x = X^T g for g ~ N(0, I). Throws Error(DegenerateEmbedding) if X ≈ 0.
std::vector<double> gaussian_round(const SdpSolution& sol, std::uint64_t seed);

/// Seed used for draw `index` of a batch seeded with `seed`.
std::uint64_t draw_seed(std::uint64_t seed, std::uint64_t index);

struct R2Result {
  std::vector<double> x;  ///< mu-mean zero
  double r2 = 0.0;
  double sdp_opt = 0.0;
  SdpSolution solution;
};

/// Best of `restarts` roundings by R_2.
R2Result minimize_r2(const SubmodularHypergraph& g, int n_embed = 0, int restarts = 32, std::uint64_t seed = 1,
                     const SdpOptions& opts = {});

}  // namespace subhyp
