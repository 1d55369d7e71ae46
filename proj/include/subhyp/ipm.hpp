#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subhyp/hypergraph.hpp"
#include "subhyp/submodular.hpp"

namespace subhyp {

enum class InnerNorm { L2, Linf };

/// Best threshold cut Θ(x, θ) = {v : x_v > θ} over θ in the distinct values of x
/// below the maximum, with the bound p τ^{(p-1)/p} R_p(x)^{1/p}.
struct SweepCutResult {
  double threshold = 0.0;
  VertexSet set;
  double conductance = 0.0;
  double bound = 0.0;
  bool median_centered = false;
  bool bound_holds = true;  ///< only meaningful when median_centered
};

/// Throws Error(ConstantInput) for constant x.
SweepCutResult sweep_cut(const SubmodularHypergraph& g, std::span<const double> x, double p = 1.0);

/// Linearization step: g_v = sgn(x_v) mu_v off the zero set, and
/// -(mu1+ - mu1-)/mu0 * mu_v on it.
std::vector<double> compute_g(std::span<const double> x, std::span<const double> mu);

struct InnerProblem {
  double lambda_hat = 0.0;
  std::vector<double> g;
  InnerNorm norm = InnerNorm::L2;
};

struct RcdmOptions {
  double eps = 1e-16;        ///< stop when an epoch lowers ||r||^2 by less than eps * ||r||^2
  double gap_tol = 1e-9;     ///< stop once the primal-dual gap is below this
  int max_epochs = 10000;
  std::uint64_t seed = 1;
  MinNormOptions projection;
};

struct RcdmResult {
  std::vector<double> z;          ///< unit-norm primal point, or zeros when degenerate
  std::vector<BasePoint> dual;    ///< y_e in theta_e B_e, local coordinates
  bool degenerate = false;        ///< no strictly negative primal direction was found
  double primal = 0.0;            ///< Q1(z) - lambda_hat <z, g>
  double residual_norm = 0.0;     ///< ||lambda_hat g - sum_e y_e||_2
  double gap = 0.0;               ///< primal + residual_norm
  int epochs = 0;
};

/// Random coordinate descent on min_{y_e in theta_e B_e} ||sum_e y_e - lambda_hat g||^2;
/// each step projects one uniformly drawn hyperedge block. An epoch is |E| draws.
RcdmResult inner_rcdm(const SubmodularHypergraph& g, const InnerProblem& prob, const RcdmOptions& opts = {});

struct SfmResult {
  std::vector<double> z;  ///< +1 on the optimal set, -1 elsewhere
  VertexSet set;
  double objective = 0.0;  ///< sum_e theta_e w_e(S) - lambda_hat g(S)
};

/// Exhaustive minimization of sum_e theta_e w_e(S) - lambda_hat g(S); ties prefer
/// nonempty proper sets, then the smallest bitmask. Throws Error(TooLarge) when n > max_n.
SfmResult inner_sfm(const SubmodularHypergraph& g, const InnerProblem& prob, int max_n = 24);

struct IpmOptions {
  InnerNorm inner = InnerNorm::L2;
  double eps_outer = 1e-6;
  int max_outer = 100;
  RcdmOptions rcdm;
  int sfm_max_n = 24;
};

struct IpmIteration {
  int k = 0;
  double lambda_hat = 0.0;
  double sweep_conductance = 0.0;
  double seconds = 0.0;
  double inner_gap = 0.0;  ///< RCDM primal-dual gap (0 for the SFM inner solver)
  double inner_residual = 0.0;
};

struct IpmResult {
  std::vector<double> x;
  std::vector<double> trace;  ///< lambda_hat^0, lambda_hat^1, ...
  std::vector<IpmIteration> iterations;
  SweepCutResult sweep;
  std::string stop_reason;
};

/// Inverse power method for min R_1. x0 is re-centered at its weighted median;
/// throws Error(ConstantInput) if it is constant.
IpmResult ipm(const SubmodularHypergraph& g, std::span<const double> x0, const IpmOptions& opts = {});

/// Default start: a seeded Gaussian vector is smoothed by `diffusion_steps` explicit
/// steps of x <- x - U^{-1} L_2 x / (2 tau), mean-centered and normalized each step.
/// Returns the indicator of the best sweep cut seen along the way, re-centered at
/// its weighted median. diffusion_steps = 0 uses the raw Gaussian vector.
std::vector<double> random_start(const SubmodularHypergraph& g, std::uint64_t seed, int diffusion_steps = 32);

/// Best (by final sweep conductance) of `restarts` runs from random_start seeds
/// seed, seed+1, ... ; all runs are returned in `runs` when non-null.
IpmResult ipm_restarts(const SubmodularHypergraph& g, const IpmOptions& opts, int restarts, std::uint64_t seed,
                       std::vector<IpmResult>* runs = nullptr);

}  // namespace subhyp
