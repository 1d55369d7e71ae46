#include "subhyp/ipm.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "subhyp/error.hpp"
#include "subhyp/laplacian.hpp"

namespace subhyp {

SweepCutResult sweep_cut(const SubmodularHypergraph& g, std::span<const double> x, double p) {
  const int n = g.num_vertices();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] > x[b]; });
  if (n == 0 || x[order.front()] == x[order.back()])
    throw Error(ErrorKind::ConstantInput, "sweep cut of a constant vector");

  SweepCutResult best;
  best.conductance = std::numeric_limits<double>::infinity();
  IncrementalCut cut(g);
  std::size_t best_prefix = 0;
  for (int j = 0; j < n;) {
    // Add the whole tie group, then evaluate Θ(x, θ) for θ = the next lower value.
    int k = j;
    while (k < n && x[order[k]] == x[order[j]]) cut.flip(order[k++]);
    if (k == n) break;
    const double c = cut.conductance();
    if (c < best.conductance) {
      best.conductance = c;
      best.threshold = x[order[k]];
      best_prefix = static_cast<std::size_t>(k);
    }
    j = k;
  }
  best.set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
  std::sort(best.set.begin(), best.set.end());

  best.median_centered = is_median_centered(x, g.mu(), p, 1e-12);
  const double r = rayleigh(g, x, p);
  best.bound = p * std::pow(tau(g), (p - 1.0) / p) * std::pow(r, 1.0 / p);
  best.bound_holds = best.conductance <= best.bound + 1e-9;
  return best;
}

std::vector<double> compute_g(std::span<const double> x, std::span<const double> mu) {
  const auto split = mu_split(x, mu, 1.0);
  std::vector<double> g(x.size(), 0.0);
  const double zero_share = split.zero > 0.0 ? -(split.plus - split.minus) / split.zero : 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] > 0) g[v] = mu[v];
    else if (x[v] < 0) g[v] = -mu[v];
    else g[v] = zero_share * mu[v];
  }
  return g;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

RcdmResult inner_rcdm(const SubmodularHypergraph& g, const InnerProblem& prob, const RcdmOptions& opts) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  std::vector<double> target(n);
  for (int v = 0; v < n; ++v) target[v] = prob.lambda_hat * prob.g[v];

  RcdmResult out;
  out.dual.resize(m);
  for (int e = 0; e < m; ++e) out.dual[e] = BasePoint{e, std::vector<double>(g.edge(e).size(), 0.0)};
  // residual = lambda_hat g - sum_e y_e
  std::vector<double> residual = target;

  auto evaluate = [&](RcdmResult& res) {
    res.residual_norm = std::sqrt(dot(residual, residual));
    res.primal = 0.0;
    res.degenerate = true;
    res.z.assign(n, 0.0);
    if (res.residual_norm > 1e-12) {
      std::vector<double> z(n);
      for (int v = 0; v < n; ++v) z[v] = residual[v] / res.residual_norm;
      const double value = q_p(g, z, 1.0) - prob.lambda_hat * dot(z, prob.g);
      if (value < 0.0) {
        res.primal = value;
        res.degenerate = false;
        res.z = std::move(z);
      }
    }
    // z = 0 is always feasible with value 0, so the gap uses min(primal, 0).
    res.gap = res.primal + res.residual_norm;
  };

  if (m == 0) {
    evaluate(out);
    return out;
  }

  auto update = [&](int e) {
    const auto& edge = g.edge(e);
    auto& y = out.dual[e].coords;
    // a = sum_{e' != e} y_e' - lambda_hat g restricted to e.
    std::vector<double> shift(edge.size());
    for (int i = 0; i < edge.size(); ++i) shift[i] = -(residual[edge.members[i]] + y[i]);
    auto next = min_norm_shifted(edge.weight, edge.theta, shift, opts.projection);
    for (int i = 0; i < edge.size(); ++i) residual[edge.members[i]] -= next.coords[i] - y[i];
    y = std::move(next.coords);
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> pick(0, m - 1);
  double previous = dot(residual, residual);
  for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
    for (int draw = 0; draw < m; ++draw) update(pick(rng));
    out.epochs = epoch;
    double current = dot(residual, residual);
    if (previous - current < opts.eps * current) {
      // Random draws can miss blocks; confirm the stall with one pass over every block.
      for (int e = 0; e < m; ++e) update(e);
      const double confirmed = dot(residual, residual);
      if (current - confirmed < opts.eps * confirmed) {
        evaluate(out);
        break;
      }
      current = confirmed;
    }
    evaluate(out);
    if (out.gap <= opts.gap_tol) break;
    previous = current;
  }
  return out;
}

SfmResult inner_sfm(const SubmodularHypergraph& g, const InnerProblem& prob, int max_n) {
  const int n = g.num_vertices();
  if (n > max_n || n > 30)
    throw Error(ErrorKind::TooLarge, "exhaustive SFM limited to n <= " + std::to_string(max_n));
  IncrementalCut cut(g);
  std::uint64_t mask = 0;
  std::uint64_t best_mask = 0;
  double best = 0.0;  // S = ∅
  constexpr double kTie = 1e-12;
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t full = count - 1;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int bit = std::countr_zero(i);
    mask ^= std::uint64_t{1} << bit;
    cut.flip(bit);
    double gs = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask & (std::uint64_t{1} << v)) gs += prob.g[v];
    const double value = cut.boundary() - prob.lambda_hat * gs;
    const bool tie = std::abs(value - best) <= kTie;
    const bool proper = mask != full;
    const bool best_proper = best_mask != 0 && best_mask != full;
    if (value < best - kTie || (tie && proper && (!best_proper || mask < best_mask))) {
      best = value;
      best_mask = mask;
    }
  }
  SfmResult out;
  out.objective = best;
  out.z.assign(n, -1.0);
  for (int v = 0; v < n; ++v) {
    if (best_mask & (std::uint64_t{1} << v)) {
      out.z[v] = 1.0;
      out.set.push_back(v);
    }
  }
  return out;
}

namespace {

std::vector<double> recentered(std::span<const double> z, std::span<const double> mu) {
  const auto c = z_p_mu(z, mu, 1.0).center;
  std::vector<double> x(z.begin(), z.end());
  for (auto& v : x) v -= c;
  return x;
}

bool is_constant(std::span<const double> x) {
  return x.empty() || std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
}

}  // namespace

IpmResult ipm(const SubmodularHypergraph& g, std::span<const double> x0, const IpmOptions& opts) {
  if (is_constant(x0)) throw Error(ErrorKind::ConstantInput, "IPM needs a nonconstant start vector");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  IpmResult res;
  res.x = recentered(x0, g.mu());
  double lambda = rayleigh(g, res.x, 1.0);
  res.trace.push_back(lambda);
  res.iterations.push_back(IpmIteration{0, lambda, sweep_cut(g, res.x, 1.0).conductance, elapsed(), 0.0, 0.0});
  res.stop_reason = "max_outer";

  for (int k = 0; k < opts.max_outer; ++k) {
    if (lambda <= 0.0) {
      res.stop_reason = "zero_lambda";
      break;
    }
    InnerProblem prob{lambda, compute_g(res.x, g.mu()), opts.inner};
    std::vector<double> z;
    double gap = 0.0, inner_residual = 0.0;
    if (opts.inner == InnerNorm::L2) {
      RcdmOptions ro = opts.rcdm;
      ro.seed = opts.rcdm.seed + static_cast<std::uint64_t>(k);
      auto inner = inner_rcdm(g, prob, ro);
      gap = inner.gap;
      inner_residual = inner.residual_norm;
      if (inner.degenerate) {
        res.stop_reason = "degenerate_inner";
        break;
      }
      z = std::move(inner.z);
    } else {
      auto inner = inner_sfm(g, prob, opts.sfm_max_n);
      if (inner.objective > 0.0 || inner.set.empty() || static_cast<int>(inner.set.size()) == g.num_vertices()) {
        res.stop_reason = "degenerate_inner";
        break;
      }
      z = std::move(inner.z);
    }
    auto next = recentered(z, g.mu());
    if (is_constant(next)) {
      res.stop_reason = "degenerate_inner";
      break;
    }
    const double next_lambda = rayleigh(g, next, 1.0);
    if (next_lambda > lambda) {
      // Only possible through rounding when the inner objective is ~0.
      res.stop_reason = "no_descent";
      break;
    }
    const double rel = (lambda - next_lambda) / lambda;
    res.x = std::move(next);
    lambda = next_lambda;
    res.trace.push_back(lambda);
    res.iterations.push_back(
        IpmIteration{k + 1, lambda, sweep_cut(g, res.x, 1.0).conductance, elapsed(), gap, inner_residual});
    if (rel < opts.eps_outer) {
      res.stop_reason = "converged";
      break;
    }
  }
  res.sweep = sweep_cut(g, res.x, 1.0);
  return res;
}

std::vector<double> random_start(const SubmodularHypergraph& g, std::uint64_t seed, int diffusion_steps) {
  const int n = g.num_vertices();
  const auto& mu = g.mu();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> r(n);
  for (auto& v : r) v = normal(rng);
  if (n < 2) return r;
  double total = 0.0;
  for (double m : mu) total += m;
  const double step = 1.0 / (2.0 * tau(g));
  SweepCutResult best;
  bool have = false;
  for (int k = 0; k <= diffusion_steps; ++k) {
    double mean = 0.0;
    for (int v = 0; v < n; ++v) mean += mu[v] * r[v];
    mean /= total;
    double norm = 0.0;
    for (int v = 0; v < n; ++v) {
      r[v] -= mean;
      norm += mu[v] * r[v] * r[v];
    }
    if (norm <= 0.0) break;
    norm = std::sqrt(norm);
    for (auto& v : r) v /= norm;
    if (is_constant(r)) break;
    auto cut = sweep_cut(g, r, 1.0);
    if (!have || cut.conductance < best.conductance) {
      best = std::move(cut);
      have = true;
    }
    const auto lr = apply_laplacian(g, r, 2.0);
    for (int v = 0; v < n; ++v) r[v] -= step * lr[v] / mu[v];
  }
  if (!have) return r;
  std::vector<double> x(n, 0.0);
  for (int v : best.set) x[v] = 1.0;
  return recentered(x, mu);
}

IpmResult ipm_restarts(const SubmodularHypergraph& g, const IpmOptions& opts, int restarts, std::uint64_t seed,
                       std::vector<IpmResult>* runs) {
  if (restarts < 1) throw Error(ErrorKind::Config, "restarts must be >= 1");
  IpmResult best;
  bool have = false;
  for (int r = 0; r < restarts; ++r) {
    IpmOptions o = opts;
    o.rcdm.seed = opts.rcdm.seed + 7919ull * static_cast<std::uint64_t>(r);
    auto run = ipm(g, random_start(g, seed + static_cast<std::uint64_t>(r)), o);
    if (!have || run.sweep.conductance < best.sweep.conductance) {
      best = run;
      have = true;
    }
    if (runs) runs->push_back(std::move(run));
  }
  return best;
}

}  // namespace subhyp
