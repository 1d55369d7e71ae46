#pragma once

#include <span>
#include <vector>

#include "subhyp/hypergraph.hpp"
#include "subhyp/submodular.hpp"

namespace subhyp {

/// phi_p(x)_v = |x_v|^{p-1} sgn(x_v). At p = 1 a zero entry stands for the
/// whole interval [-1, 1]; `interval[v]` marks those coordinates (value 0).
struct SignedPower {
  std::vector<double> values;
  std::vector<std::uint8_t> interval;
};

SignedPower phi_p(std::span<const double> x, double p);

/// ||x||_{p,mu} = (sum_v mu_v |x_v|^p)^{1/p}.
double norm_p_mu(std::span<const double> x, std::span<const double> mu, double p);

/// Q_p(x) = sum_e theta_e f_e(x)^p.
double q_p(const SubmodularHypergraph& g, std::span<const double> x, double p);

/// One element of the p-Laplacian Δ_p(x), built from the greedy subgradient of
/// every hyperedge (ties by vertex id).
std::vector<double> apply_laplacian(const SubmodularHypergraph& g, std::span<const double> x, double p);

/// Eigenpair certificate for Δ_p(x) ∩ λ U φ_p(x) ≠ ∅. `x` is normalized in
/// S_{p,mu}; witnesses hold one y_e in ∇f_e(x) per hyperedge (unscaled, local coords).
struct EigenpairCertificate {
  double lambda = 0.0;
  double p = 2.0;
  double residual = 0.0;
  bool valid = false;  ///< false means the pair was rejected with this residual
  int iterations = 0;
  std::vector<double> x;
  std::vector<BasePoint> witnesses;
};

struct VerifyOptions {
  double eps = 1e-6;
  int max_iter = 50000;
};

/// Minimizes the distance between Δ_p(x) and λUφ_p(x) by Frank-Wolfe over the
/// product of the argmax faces ∇f_e(x). For p = 1, coordinates with x_v = 0 may
/// take any value in λ mu_v [-1, 1]. Throws Error(NotConnected) for
/// disconnected g and Error(ConstantInput) for x = 0.
EigenpairCertificate verify_eigenpair(const SubmodularHypergraph& g, std::span<const double> x, double lambda,
                                      double p, const VerifyOptions& opts = {});

struct CenterResult {
  double center = 0.0;
  double value = 0.0;
};

/// min_c sum_v mu_v |x_v - c|^p and its minimizer. p = 1 returns the smallest
/// weighted median, p = 2 the weighted mean, otherwise golden-section search.
CenterResult z_p_mu(std::span<const double> x, std::span<const double> mu, double p);

/// Q_p(x) / Z_{p,mu}(x); throws Error(ConstantInput) for constant x.
double rayleigh(const SubmodularHypergraph& g, std::span<const double> x, double p);
/// Q_p(x) / ||x||^p_{p,mu}; throws Error(ConstantInput) for x = 0.
double rayleigh_sphere(const SubmodularHypergraph& g, std::span<const double> x, double p);

struct MuSplit {
  double plus = 0.0;
  double zero = 0.0;
  double minus = 0.0;
};

MuSplit mu_split(std::span<const double> x, std::span<const double> mu, double p);

/// True iff 0 minimizes Z_{p,mu}(x, c) (within `tol` on the optimality condition).
bool is_median_centered(std::span<const double> x, std::span<const double> mu, double p, double tol = 1e-12);

struct NodalDomains {
  std::vector<VertexSet> strong_pos, strong_neg, weak_pos, weak_neg;

  std::size_t strong_count() const { return strong_pos.size() + strong_neg.size(); }
  std::size_t weak_count() const { return weak_pos.size() + weak_neg.size(); }
};

/// Sign-definite connected components of x on reduce(g). Entries with
/// |x_v| <= zero_tol count as zero.
NodalDomains nodal_domains(const SubmodularHypergraph& g, std::span<const double> x, double zero_tol = 0.0);

}  // namespace subhyp
