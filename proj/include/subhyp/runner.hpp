#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subhyp/error.hpp"
#include "subhyp/io.hpp"
#include "subhyp/ipm.hpp"

namespace subhyp {

/// {inner, eps_outer, eps_inner, max_outer, max_epochs, seed, restarts} plus
/// the SDP switch and an optional alpha grid for `cluster`.
struct RunConfig {
  std::string inner = "rcdm";  ///< rcdm | sfm
  double eps_outer = 1e-6;
  double eps_inner = 1e-9;     ///< RCDM gap tolerance
  int max_outer = 100;
  int max_epochs = 10000;
  std::uint64_t seed = 1;
  int restarts = 3;
  bool sdp = false;
  int sdp_restarts = 32;
  std::vector<double> alphas;
};

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);
/// Throws Error(Config) on out-of-range fields.
void validate(const RunConfig& c);
IpmOptions ipm_options(const RunConfig& c);

/// Same member sets and theta with every weight replaced.
SubmodularHypergraph with_homogeneous_weights(const SubmodularHypergraph& g);
SubmodularHypergraph with_alpha_weights(const SubmodularHypergraph& g, double alpha);

/// One JSON report per run: IPM-S on the given weights, IPM-H on homogeneous
/// ones, SDP when enabled. With an alpha grid, IPM-S runs once per alpha in
/// grid order, followed by one IPM-H run.
std::vector<Json> run_cluster(const HypergraphFile& file, const RunConfig& config);

/// method: "ipm" (p = 1), "sdp" (p = 2) or "dense" (2-uniform graphs, p = 2).
Json run_spectrum(const HypergraphFile& file, double p, const std::string& method, const RunConfig& config);

/// Property suites on `count` seeded random instances with n <= max_n.
/// suite: all | lovasz | reduce | rayleigh | ipm | sweep | eigen | sdp.
std::vector<Json> run_verify(const std::string& suite, std::uint64_t seed, int count, int max_n);

/// 1 configuration, 2 data, 3 numerical failure.
int exit_code(ErrorKind kind);

}  // namespace subhyp
