#include "subhyp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "subhyp/dataset.hpp"
#include "subhyp/laplacian.hpp"
#include "subhyp/oracle.hpp"
#include "subhyp/sdp.hpp"

namespace subhyp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <typename T>
void read_field(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Config, std::string("config field '") + key + "': " + ex.what());
  }
}

}  // namespace

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Config, "run config must be a JSON object");
  static const char* known[] = {"inner",    "eps_outer", "eps_inner", "max_outer",     "max_epochs",
                                "seed",     "restarts",  "sdp",       "sdp_restarts", "alphas"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) ==
        std::end(known))
      throw Error(ErrorKind::Config, "unknown config field '" + it.key() + "'");
  RunConfig c;
  read_field(j, "inner", c.inner);
  read_field(j, "eps_outer", c.eps_outer);
  read_field(j, "eps_inner", c.eps_inner);
  read_field(j, "max_outer", c.max_outer);
  read_field(j, "max_epochs", c.max_epochs);
  read_field(j, "seed", c.seed);
  read_field(j, "restarts", c.restarts);
  read_field(j, "sdp", c.sdp);
  read_field(j, "sdp_restarts", c.sdp_restarts);
  read_field(j, "alphas", c.alphas);
  validate(c);
  return c;
}

Json config_to_json(const RunConfig& c) {
  return {{"inner", c.inner},         {"eps_outer", c.eps_outer}, {"eps_inner", c.eps_inner},
          {"max_outer", c.max_outer}, {"max_epochs", c.max_epochs}, {"seed", c.seed},
          {"restarts", c.restarts},   {"sdp", c.sdp},             {"sdp_restarts", c.sdp_restarts},
          {"alphas", c.alphas}};
}

void validate(const RunConfig& c) {
  if (c.inner != "rcdm" && c.inner != "sfm") throw Error(ErrorKind::Config, "inner must be 'rcdm' or 'sfm'");
  if (!(c.eps_outer > 0.0) || !(c.eps_inner > 0.0)) throw Error(ErrorKind::Config, "tolerances must be positive");
  if (c.max_outer < 1 || c.max_epochs < 1) throw Error(ErrorKind::Config, "iteration caps must be >= 1");
  if (c.restarts < 1 || c.sdp_restarts < 1) throw Error(ErrorKind::Config, "restarts must be >= 1");
  for (double a : c.alphas)
    if (!(a > 0.0 && a <= 0.5)) throw Error(ErrorKind::Config, "alpha must lie in (0, 0.5]");
}

IpmOptions ipm_options(const RunConfig& c) {
  IpmOptions o;
  o.inner = c.inner == "sfm" ? InnerNorm::Linf : InnerNorm::L2;
  o.eps_outer = c.eps_outer;
  o.max_outer = c.max_outer;
  o.rcdm.gap_tol = c.eps_inner;
  o.rcdm.max_epochs = c.max_epochs;
  o.rcdm.seed = c.seed;
  return o;
}

SubmodularHypergraph with_homogeneous_weights(const SubmodularHypergraph& g) {
  std::vector<Hyperedge> edges;
  for (const auto& e : g.edges()) edges.emplace_back(e.members, e.theta, CutWeightFn::homogeneous(e.size()));
  return SubmodularHypergraph(g.mu(), std::move(edges), false);
}

SubmodularHypergraph with_alpha_weights(const SubmodularHypergraph& g, double alpha) {
  std::vector<Hyperedge> edges;
  for (const auto& e : g.edges()) edges.emplace_back(e.members, e.theta, CutWeightFn::alpha_cardinality(e.size(), alpha));
  return SubmodularHypergraph(g.mu(), std::move(edges), false);
}

namespace {

Json ipm_report(const std::string& algorithm, const SubmodularHypergraph& g, const HypergraphFile& file,
                const RunConfig& config) {
  const auto t0 = Clock::now();
  const auto res = ipm_restarts(g, ipm_options(config), config.restarts, config.seed);
  Json trace = Json::array();
  for (const auto& it : res.iterations)
    trace.push_back({{"k", it.k},
                     {"lambda", it.lambda_hat},
                     {"conductance", it.sweep_conductance},
                     {"seconds", it.seconds},
                     {"inner_gap", it.inner_gap}});
  Json r{{"algorithm", algorithm},
         {"lambda", res.trace.back()},
         {"conductance", res.sweep.conductance},
         {"partition", res.sweep.set},
         {"stop_reason", res.stop_reason},
         {"trace", std::move(trace)},
         {"seed", config.seed},
         {"config", config_to_json(config)}};
  if (file.labels) {
    const auto side = to_membership(g.num_vertices(), res.sweep.set);
    r["clustering_error"] = clustering_error(side, *file.labels);
  } else {
    r["clustering_error"] = nullptr;
  }
  r["seconds"] = seconds_since(t0);
  return r;
}

Json sdp_report(const SubmodularHypergraph& g, const HypergraphFile& file, const RunConfig& config) {
  const auto t0 = Clock::now();
  const auto res = minimize_r2(g, 0, config.sdp_restarts, config.seed);
  const auto sweep = sweep_cut(g, res.x, 2.0);
  Json r{{"algorithm", "SDP"},
         {"sdp_opt", res.sdp_opt},
         {"sdp_lower_bound", res.solution.lower_bound},
         {"r2", res.r2},
         {"x", res.x},
         {"conductance", sweep.conductance},
         {"partition", sweep.set},
         {"seed", config.seed},
         {"restarts", config.sdp_restarts},
         {"config", config_to_json(config)}};
  if (file.labels) {
    const auto side = to_membership(g.num_vertices(), sweep.set);
    r["clustering_error"] = clustering_error(side, *file.labels);
  } else {
    r["clustering_error"] = nullptr;
  }
  r["seconds"] = seconds_since(t0);
  return r;
}

}  // namespace

std::vector<Json> run_cluster(const HypergraphFile& file, const RunConfig& config) {
  validate(config);
  const auto& g = file.graph;
  std::vector<Json> out;
  if (config.alphas.empty()) {
    out.push_back(ipm_report("IPM-S", g, file, config));
  } else {
    for (double a : config.alphas) {
      auto r = ipm_report("IPM-S", with_alpha_weights(g, a), file, config);
      r["alpha"] = a;
      out.push_back(std::move(r));
    }
  }
  out.push_back(ipm_report("IPM-H", with_homogeneous_weights(g), file, config));
  if (config.sdp) out.push_back(sdp_report(g, file, config));
  return out;
}

Json run_spectrum(const HypergraphFile& file, double p, const std::string& method, const RunConfig& config) {
  validate(config);
  const auto& g = file.graph;
  const auto t0 = Clock::now();
  Json r{{"method", method}, {"p", p}, {"seed", config.seed}};
  std::vector<double> x;
  double lambda = 0.0;
  if (method == "ipm") {
    if (p != 1.0) throw Error(ErrorKind::Config, "method ipm computes the p = 1 spectrum");
    const auto res = ipm_restarts(g, ipm_options(config), config.restarts, config.seed);
    r["trace"] = res.trace;
    r["conductance"] = res.sweep.conductance;
    x = res.x;
    lambda = res.trace.back();
  } else if (method == "sdp") {
    if (p != 2.0) throw Error(ErrorKind::Config, "method sdp computes the p = 2 spectrum");
    const auto res = minimize_r2(g, 0, config.sdp_restarts, config.seed);
    r["sdp_opt"] = res.sdp_opt;
    r["r2"] = res.r2;
    r["restarts"] = config.sdp_restarts;
    r["conductance"] = sweep_cut(g, res.x, 2.0).conductance;
    x = res.x;
    lambda = res.r2;
  } else if (method == "dense") {
    if (p != 2.0) throw Error(ErrorKind::Config, "method dense computes the p = 2 spectrum");
    const auto spec = dense_graph_spectrum(g);
    r["eigenvalues"] = spec.values;
    if (g.num_vertices() < 2) throw Error(ErrorKind::ConstantInput, "need two vertices for lambda_2");
    const Eigen::VectorXd v = spec.vectors.col(1);
    x.assign(v.data(), v.data() + v.size());
    lambda = spec.values[1];
  } else {
    throw Error(ErrorKind::Config, "unknown spectrum method '" + method + "'");
  }
  r["lambda"] = lambda;
  r["certificate"] = certificate_to_json(verify_eigenpair(g, x, lambda, p));
  r["seconds"] = seconds_since(t0);
  return r;
}

namespace {

struct SuiteTally {
  std::string name;
  long checks = 0;
  long failures = 0;
  int instances = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (notes.size() < 5) notes.push_back(what);
    }
  }
  Json to_json(double seconds) const {
    return {{"suite", name},       {"instances", instances}, {"checks", checks}, {"failures", failures},
            {"passed", failures == 0}, {"notes", notes},      {"seconds", seconds}};
  }
};

std::vector<double> random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = normal(rng);
  return x;
}

InstanceSpec instance_spec(std::uint64_t seed, int max_n, const char* kind) {
  std::mt19937_64 rng(seed);
  InstanceSpec s;
  s.n = std::uniform_int_distribution<int>(3, std::max(3, max_n))(rng);
  s.m = std::uniform_int_distribution<int>(2, 2 * s.n)(rng);
  s.max_arity = std::min(4, s.n);
  s.weight_kind = kind;
  s.seed = seed;
  s.random_theta = true;
  return s;
}

void suite_lovasz(SuiteTally& t, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed + i);
    const int arity = std::uniform_int_distribution<int>(2, 5)(rng);
    const auto w = random_table_weight(arity, seed + i);
    ++t.instances;
    for (int k = 0; k < 5; ++k) {
      auto x = random_vector(rng, arity);
      const double f = lovasz(w, x);
      t.expect(std::abs(f - lovasz_by_enumeration(w, x)) <= 1e-9, "lovasz vs enumeration");
      const auto y = subgradient(w, x);
      double sum = 0.0, inner = 0.0;
      for (int j = 0; j < arity; ++j) {
        sum += y.coords[j];
        inner += y.coords[j] * x[j];
      }
      t.expect(std::abs(sum) <= 1e-9 && std::abs(inner - f) <= 1e-9, "subgradient identities");
      t.expect(check_membership(w, 1.0, y.coords), "subgradient membership");
    }
  }
}

void suite_reduce(SuiteTally& t, std::uint64_t seed, int count, int max_n) {
  for (int i = 0; i < count; ++i) {
    const auto g = random_instance(instance_spec(seed + i, max_n, "table"));
    const auto r = reduce(g);
    ++t.instances;
    const int n = g.num_vertices();
    Membership in(n);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      for (int v = 0; v < n; ++v) in[v] = (s >> v) & 1u;
      t.expect(std::abs(boundary_volume(g, in) - boundary_volume(r, in)) <= 1e-12, "boundary after reduce");
    }
  }
}

void suite_rayleigh(SuiteTally& t, std::uint64_t seed, int count, int max_n) {
  static const char* kinds[] = {"homogeneous", "alpha", "table"};
  for (int i = 0; i < count; ++i) {
    const auto g = random_instance(instance_spec(seed + i, max_n, kinds[i % 3]));
    ++t.instances;
    const auto h2 = exact_h2(g);
    const int n = g.num_vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << n); ++s) {
      std::vector<double> x(n);
      Membership in(n);
      for (int v = 0; v < n; ++v) {
        in[v] = (s >> v) & 1u;
        x[v] = in[v];
      }
      const double r1 = rayleigh(g, x, 1.0);
      t.expect(std::abs(r1 - conductance(g, in)) <= 1e-12, "R1 of indicator equals conductance");
      best = std::min(best, r1);
    }
    t.expect(std::abs(best - h2.value) <= 1e-12, "min R1 over indicators equals h2");
  }
}

void suite_ipm(SuiteTally& t, std::uint64_t seed, int count, int max_n) {
  for (int i = 0; i < count; ++i) {
    const auto g = random_instance(instance_spec(seed + i, max_n, i % 2 ? "alpha" : "table"));
    ++t.instances;
    for (auto inner : {InnerNorm::L2, InnerNorm::Linf}) {
      IpmOptions o;
      o.inner = inner;
      const auto res = ipm(g, random_start(g, seed + i), o);
      for (std::size_t k = 1; k < res.trace.size(); ++k)
        t.expect(res.trace[k] <= res.trace[k - 1] + 1e-10, "monotone lambda trace");
    }
  }
}

void suite_sweep(SuiteTally& t, std::uint64_t seed, int count, int max_n) {
  for (int i = 0; i < count; ++i) {
    const auto g = random_instance(instance_spec(seed + i, max_n, i % 2 ? "homogeneous" : "table"));
    ++t.instances;
    std::mt19937_64 rng(seed + 1000 + i);
    for (double p : {1.0, 2.0}) {
      for (int k = 0; k < 10; ++k) {
        auto x = random_vector(rng, g.num_vertices());
        const double c = z_p_mu(x, g.mu(), p).center;
        for (auto& v : x) v -= c;
        const auto s = sweep_cut(g, x, p);
        t.expect(s.conductance <= s.bound + 1e-9, "thresholding bound");
      }
    }
  }
}

void suite_eigen(SuiteTally& t, std::uint64_t seed, int count, int max_n) {
  for (int i = 0; i < count; ++i) {
    auto spec = instance_spec(seed + i, max_n, "homogeneous");
    spec.max_arity = 2;
    const auto g = random_instance(spec);
    ++t.instances;
    const auto sp = dense_graph_spectrum(g);
    const Eigen::VectorXd v = sp.vectors.col(1);
    const std::vector<double> x(v.data(), v.data() + v.size());
    const auto cert = verify_eigenpair(g, x, sp.values[1], 2.0);
    t.expect(cert.valid && cert.residual < 1e-8, "dense lambda_2 certificate");
    const auto split = mu_split(cert.x, g.mu(), 2.0);
    t.expect(std::abs(split.plus - split.minus) <= 1e-6, "median property");
  }
}

void suite_sdp(SuiteTally& t, std::uint64_t seed, int count, int max_n) {
  for (int i = 0; i < count; ++i) {
    auto spec = instance_spec(seed + i, std::min(max_n, 8), i % 2 ? "alpha" : "table");
    const auto g = random_instance(spec);
    ++t.instances;
    const auto sol = solve_sdp(build_sdp(g));
    std::mt19937_64 rng(seed + 2000 + i);
    for (int k = 0; k < 200; ++k) {
      auto x = random_vector(rng, g.num_vertices());
      t.expect(sol.objective <= rayleigh(g, x, 2.0) + 1e-4, "relaxation bound");
    }
  }
}

}  // namespace

std::vector<Json> run_verify(const std::string& suite, std::uint64_t seed, int count, int max_n) {
  static const char* names[] = {"lovasz", "reduce", "rayleigh", "ipm", "sweep", "eigen", "sdp"};
  if (count < 1) throw Error(ErrorKind::Config, "count must be >= 1");
  if (max_n < 3 || max_n > 12) throw Error(ErrorKind::Config, "max_n must lie in [3, 12]");
  std::vector<std::string> selected;
  if (suite == "all") {
    selected.assign(std::begin(names), std::end(names));
  } else if (std::find(std::begin(names), std::end(names), suite) != std::end(names)) {
    selected.push_back(suite);
  } else {
    throw Error(ErrorKind::Config, "unknown suite '" + suite + "'");
  }
  std::vector<Json> out;
  for (const auto& name : selected) {
    SuiteTally t;
    t.name = name;
    const auto t0 = Clock::now();
    if (name == "lovasz") suite_lovasz(t, seed, count);
    else if (name == "reduce") suite_reduce(t, seed, count, max_n);
    else if (name == "rayleigh") suite_rayleigh(t, seed, count, max_n);
    else if (name == "ipm") suite_ipm(t, seed, count, max_n);
    else if (name == "sweep") suite_sweep(t, seed, count, max_n);
    else if (name == "eigen") suite_eigen(t, seed, count, max_n);
    else suite_sdp(t, seed, count, max_n);
    out.push_back(t.to_json(seconds_since(t0)));
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return 1;
    case ErrorKind::ParseError:
    case ErrorKind::InvalidHypergraph:
    case ErrorKind::EmptyHypergraph:
    case ErrorKind::NotSubmodular:
    case ErrorKind::ArityTooLarge:
    case ErrorKind::TooLarge:
    case ErrorKind::NotGraph:
    case ErrorKind::LabelArityMismatch:
    case ErrorKind::EmptySide:
      return 2;
    case ErrorKind::NoConvergence:
    case ErrorKind::ConstantInput:
    case ErrorKind::NotConnected:
    case ErrorKind::DegenerateEmbedding:
      return 3;
  }
  return 3;
}

}  // namespace subhyp
