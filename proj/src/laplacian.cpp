#include "subhyp/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subhyp/error.hpp"

namespace subhyp {

SignedPower phi_p(std::span<const double> x, double p) {
  SignedPower out{std::vector<double>(x.size(), 0.0), std::vector<std::uint8_t>(x.size(), 0)};
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] == 0.0) {
      out.interval[v] = (p == 1.0) ? 1 : 0;
      continue;
    }
    const double mag = (p == 1.0) ? 1.0 : std::pow(std::abs(x[v]), p - 1.0);
    out.values[v] = x[v] > 0 ? mag : -mag;
  }
  return out;
}

double norm_p_mu(std::span<const double> x, std::span<const double> mu, double p) {
  double s = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) s += mu[v] * std::pow(std::abs(x[v]), p);
  return std::pow(s, 1.0 / p);
}

namespace {

double power(double base, double p) {
  if (p == 1.0) return base;
  if (p == 2.0) return base * base;
  return std::pow(base, p);
}

}  // namespace

double q_p(const SubmodularHypergraph& g, std::span<const double> x, double p) {
  double total = 0.0;
  for (const auto& e : g.edges()) {
    const auto local = e.gather(x);
    total += e.theta * power(lovasz(e.weight, local), p);
  }
  return total;
}

std::vector<double> apply_laplacian(const SubmodularHypergraph& g, std::span<const double> x, double p) {
  std::vector<double> out(g.num_vertices(), 0.0);
  for (const auto& e : g.edges()) {
    const auto local = e.gather(x);
    const double coef = (p == 1.0) ? e.theta : e.theta * power(lovasz(e.weight, local), p - 1.0);
    if (coef == 0.0) continue;
    const auto y = subgradient(e.weight, local);
    for (int i = 0; i < e.size(); ++i) out[e.members[i]] += coef * y.coords[i];
  }
  return out;
}

namespace {

// Greedy vertex of the face argmax_{y in B} <y, x>: order by x descending and
// resolve x-ties by `dir` ascending, which minimizes <dir, y> over the face.
std::vector<double> face_vertex(const CutWeightFn& w, std::span<const double> x, std::span<const double> dir) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (x[a] != x[b]) return x[a] > x[b];
    return dir[a] < dir[b];
  });
  return greedy_point(w, order);
}

}  // namespace

EigenpairCertificate verify_eigenpair(const SubmodularHypergraph& g, std::span<const double> x_in, double lambda,
                                      double p, const VerifyOptions& opts) {
  const int n = g.num_vertices();
  if (p < 1.0) throw Error(ErrorKind::Config, "p must be >= 1");
  if (!is_connected(g)) throw Error(ErrorKind::NotConnected, "eigenpair verification needs a connected hypergraph");
  const double scale = norm_p_mu(x_in, g.mu(), p);
  if (!(scale > 0.0)) throw Error(ErrorKind::ConstantInput, "eigenvector must be nonzero");

  EigenpairCertificate cert;
  cert.lambda = lambda;
  cert.p = p;
  cert.x.assign(x_in.begin(), x_in.end());
  for (auto& v : cert.x) v /= scale;
  const auto& x = cert.x;

  // Target set lambda * U * phi_p(x) as a box [lo, hi] (degenerate except at p = 1 zeros).
  const auto phi = phi_p(x, p);
  std::vector<double> lo(n), hi(n);
  for (int v = 0; v < n; ++v) {
    const double t = lambda * g.mu()[v] * phi.values[v];
    lo[v] = hi[v] = t;
    if (phi.interval[v]) {
      lo[v] = -std::abs(lambda) * g.mu()[v];
      hi[v] = std::abs(lambda) * g.mu()[v];
    }
  }

  const int m = g.num_edges();
  std::vector<std::vector<double>> local_x(m);
  std::vector<double> coef(m);
  cert.witnesses.resize(m);
  std::vector<double> sum(n, 0.0);
  for (int e = 0; e < m; ++e) {
    const auto& edge = g.edge(e);
    local_x[e] = edge.gather(x);
    coef[e] = (p == 1.0) ? edge.theta : edge.theta * power(lovasz(edge.weight, local_x[e]), p - 1.0);
    cert.witnesses[e] = BasePoint{e, subgradient(edge.weight, local_x[e]).coords};
    for (int i = 0; i < edge.size(); ++i) sum[edge.members[i]] += coef[e] * cert.witnesses[e].coords[i];
  }

  std::vector<double> resid(n), dir(n);
  std::vector<std::vector<double>> vertex(m);
  const double accept_obj = 0.5 * opts.eps * opts.eps;
  for (int it = 0;; ++it) {
    double obj = 0.0;
    for (int v = 0; v < n; ++v) {
      resid[v] = sum[v] - std::clamp(sum[v], lo[v], hi[v]);
      obj += 0.5 * resid[v] * resid[v];
    }
    cert.residual = std::sqrt(2.0 * obj);
    cert.iterations = it;
    if (cert.residual <= opts.eps) {
      cert.valid = true;
      break;
    }
    if (it >= opts.max_iter) break;

    std::fill(dir.begin(), dir.end(), 0.0);
    for (int e = 0; e < m; ++e) {
      if (coef[e] == 0.0) continue;
      const auto& edge = g.edge(e);
      const auto local_r = edge.gather(resid);
      vertex[e] = face_vertex(edge.weight, local_x[e], local_r);
      for (int i = 0; i < edge.size(); ++i)
        dir[edge.members[i]] += coef[e] * (vertex[e][i] - cert.witnesses[e].coords[i]);
    }
    double gap = 0.0, dnorm = 0.0;
    for (int v = 0; v < n; ++v) {
      gap -= resid[v] * dir[v];
      dnorm += dir[v] * dir[v];
    }
    // obj - gap lower-bounds the optimum; stop once acceptance is out of reach.
    if (obj - gap > accept_obj * (1.0 + 1e-9) || gap <= 1e-18 || dnorm == 0.0) break;
    const double step = std::clamp(gap / dnorm, 0.0, 1.0);
    for (int e = 0; e < m; ++e) {
      if (coef[e] == 0.0) continue;
      auto& y = cert.witnesses[e].coords;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += step * (vertex[e][i] - y[i]);
    }
    for (int v = 0; v < n; ++v) sum[v] += step * dir[v];
  }
  return cert;
}

CenterResult z_p_mu(std::span<const double> x, std::span<const double> mu, double p) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  auto value_at = [&](double c) {
    double s = 0.0;
    for (std::size_t v = 0; v < n; ++v) s += mu[v] * power(std::abs(x[v] - c), p);
    return s;
  };
  double c = 0.0;
  if (p == 1.0) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    const double total = std::accumulate(mu.begin(), mu.begin() + n, 0.0);
    double cum = 0.0;
    c = x[order.back()];
    for (std::size_t k = 0; k < n; ++k) {
      cum += mu[order[k]];
      if (2.0 * cum >= total * (1.0 - 1e-14)) {
        c = x[order[k]];
        break;
      }
    }
  } else if (p == 2.0) {
    double num = 0.0, den = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      num += mu[v] * x[v];
      den += mu[v];
    }
    c = num / den;
  } else {
    double a = *std::min_element(x.begin(), x.end());
    double b = *std::max_element(x.begin(), x.end());
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = b - ratio * (b - a), c2 = a + ratio * (b - a);
    double f1 = value_at(c1), f2 = value_at(c2);
    for (int it = 0; it < 400 && b - a > 1e-12; ++it) {
      if (f1 <= f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - ratio * (b - a);
        f1 = value_at(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + ratio * (b - a);
        f2 = value_at(c2);
      }
    }
    c = 0.5 * (a + b);
  }
  return CenterResult{c, value_at(c)};
}

double rayleigh(const SubmodularHypergraph& g, std::span<const double> x, double p) {
  const auto z = z_p_mu(x, g.mu(), p);
  if (!(z.value > 0.0)) throw Error(ErrorKind::ConstantInput, "Rayleigh quotient of a constant vector");
  return q_p(g, x, p) / z.value;
}

double rayleigh_sphere(const SubmodularHypergraph& g, std::span<const double> x, double p) {
  const double norm = norm_p_mu(x, g.mu(), p);
  if (!(norm > 0.0)) throw Error(ErrorKind::ConstantInput, "Rayleigh quotient of the zero vector");
  return q_p(g, x, p) / power(norm, p);
}

MuSplit mu_split(std::span<const double> x, std::span<const double> mu, double p) {
  MuSplit s;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] > 0) {
      s.plus += mu[v] * power(x[v], p - 1.0);
    } else if (x[v] < 0) {
      s.minus += mu[v] * power(-x[v], p - 1.0);
    } else {
      s.zero += mu[v];
    }
  }
  return s;
}

bool is_median_centered(std::span<const double> x, std::span<const double> mu, double p, double tol) {
  const auto s = mu_split(x, mu, p);
  const double scale = std::max({1.0, s.plus, s.minus});
  if (p == 1.0) return std::abs(s.plus - s.minus) <= s.zero + tol * scale;
  return std::abs(s.plus - s.minus) <= tol * scale;
}

NodalDomains nodal_domains(const SubmodularHypergraph& g, std::span<const double> x, double zero_tol) {
  const auto reduced = reduce(g);
  const int n = g.num_vertices();
  auto components = [&](auto pred) {
    Membership active(n, 0);
    for (int v = 0; v < n; ++v) active[v] = pred(x[v]) ? 1 : 0;
    return connected_components(reduced, active, true);
  };
  NodalDomains d;
  d.strong_pos = components([&](double t) { return t > zero_tol; });
  d.strong_neg = components([&](double t) { return t < -zero_tol; });
  d.weak_pos = components([&](double t) { return t >= -zero_tol; });
  d.weak_neg = components([&](double t) { return t <= zero_tol; });
  return d;
}

}  // namespace subhyp
