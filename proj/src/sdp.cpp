#include "subhyp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <random>

#include "subhyp/error.hpp"
#include "subhyp/laplacian.hpp"

namespace subhyp {

SdpProblem build_sdp(const SubmodularHypergraph& g, int n_embed) {
  const int n = g.num_vertices();
  if (g.max_arity() > kMaxSdpArity)
    throw Error(ErrorKind::ArityTooLarge, "SDP enumerates extreme points only for |e| <= 8");
  SdpProblem prob;
  prob.n_embed = n_embed > 0 ? n_embed : n;
  if (prob.n_embed < g.max_arity())
    throw Error(ErrorKind::Config, "embedding dimension must be at least the largest hyperedge size");
  prob.mu = g.mu();
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    prob.theta.push_back(edge.theta);
    prob.members.push_back(edge.members);
    auto points = extreme_points(edge.weight, kMaxSdpArity);
    for (auto& p : points) p.edge = e;
    prob.extreme.push_back(std::move(points));
  }
  return prob;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Coordinates on the orthogonal complement of sqrt(mu): W = X U^{1/2} = Z P^T,
// so the two normalization constraints become ||Z||_F = 1 with Z free.
struct Reduced {
  int n = 0, d = 0, r = 0;
  MatrixXd P;                 // n x d, orthonormal, columns ⟂ sqrt(mu)
  VectorXd inv_sqrt_mu;
  std::vector<MatrixXd> Y;    // per edge: d x k_e, columns P^T U^{-1/2} y
  std::vector<double> theta;
};

Reduced reduce_problem(const SdpProblem& prob) {
  Reduced red;
  red.n = static_cast<int>(prob.mu.size());
  red.d = red.n - 1;
  red.r = prob.n_embed;
  VectorXd s(red.n);
  red.inv_sqrt_mu.resize(red.n);
  for (int v = 0; v < red.n; ++v) {
    s[v] = std::sqrt(prob.mu[v]);
    red.inv_sqrt_mu[v] = 1.0 / s[v];
  }
  Eigen::HouseholderQR<MatrixXd> qr(s);
  const MatrixXd Q = qr.householderQ();
  red.P = Q.rightCols(red.d);
  red.theta = prob.theta;
  for (std::size_t e = 0; e < prob.extreme.size(); ++e) {
    const auto& pts = prob.extreme[e];
    MatrixXd Y(red.d, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k) {
      VectorXd full = VectorXd::Zero(red.n);
      for (std::size_t i = 0; i < prob.members[e].size(); ++i) {
        const int v = prob.members[e][i];
        full[v] = pts[k].coords[i] * red.inv_sqrt_mu[v];
      }
      Y.col(static_cast<Eigen::Index>(k)) = red.P.transpose() * full;
    }
    red.Y.push_back(std::move(Y));
  }
  return red;
}

double primal_value(const Reduced& red, const MatrixXd& Z, std::vector<double>* eta) {
  double total = 0.0;
  if (eta) eta->assign(red.Y.size(), 0.0);
  for (std::size_t e = 0; e < red.Y.size(); ++e) {
    const double q = (Z * red.Y[e]).colwise().squaredNorm().maxCoeff();
    total += red.theta[e] * q;
    if (eta) (*eta)[e] = std::sqrt(q);
  }
  return total;
}

// lambda_min(sum_e theta_e sum_y pi_{e,y} y y^T) with pi the per-edge normalized
// multipliers; falls back to the active extreme point when an edge has none.
std::vector<VectorXd> simplex_multipliers(const Reduced& red, const std::vector<VectorXd>& lambda, const MatrixXd& Z) {
  std::vector<VectorXd> pi(red.Y.size());
  for (std::size_t e = 0; e < red.Y.size(); ++e) {
    pi[e] = lambda[e];
    const double sum = pi[e].sum();
    if (sum > 0.0) {
      pi[e] /= sum;
    } else {
      Eigen::Index k;
      (Z * red.Y[e]).colwise().squaredNorm().maxCoeff(&k);
      pi[e].setZero();
      pi[e][k] = 1.0;
    }
  }
  return pi;
}

MatrixXd dual_matrix(const Reduced& red, const std::vector<VectorXd>& pi) {
  MatrixXd A = MatrixXd::Zero(red.d, red.d);
  for (std::size_t e = 0; e < red.Y.size(); ++e)
    A.noalias() += red.theta[e] * (red.Y[e] * pi[e].asDiagonal() * red.Y[e].transpose());
  return A;
}

// Any pi on the simplices gives the lower bound lambda_min(sum theta_e Y_e diag(pi_e) Y_e^T).
double dual_bound(const Reduced& red, const std::vector<VectorXd>& pi) {
  if (red.d == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(dual_matrix(red, pi), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

// Log-barrier Newton ascent on max lambda s.t. A(pi) - lambda I >= 0, pi_e on simplices.
// Columns are restricted to those active at Z when the full problem is large. Every
// strictly feasible iterate is a valid bound; the best pi found is kept.
double refine_dual(const Reduced& red, const MatrixXd& Z, std::vector<VectorXd>& pi) {
  double best = dual_bound(red, pi);
  const int d = red.d, m = static_cast<int>(red.Y.size());
  if (d == 0) return best;
  constexpr Eigen::Index kFullLimit = 300;
  Eigen::Index total = 0;
  for (const auto& Y : red.Y) total += Y.cols();
  struct Column {
    int edge;
    Eigen::Index k;
  };
  std::vector<Column> cols;
  for (int e = 0; e < m; ++e) {
    const VectorXd q = (Z * red.Y[e]).colwise().squaredNorm().transpose();
    const double top = q.maxCoeff();
    for (Eigen::Index k = 0; k < q.size(); ++k)
      if (total <= kFullLimit || q[k] >= top - 1e-3 * std::max(top, 1e-12) || pi[e][k] > 1e-6) cols.push_back({e, k});
  }
  const int N = static_cast<int>(cols.size());
  std::vector<VectorXd> ycol(N);
  std::vector<int> count(m, 0);
  for (int i = 0; i < N; ++i) {
    ycol[i] = std::sqrt(red.theta[cols[i].edge]) * red.Y[cols[i].edge].col(cols[i].k);
    ++count[cols[i].edge];
  }
  VectorXd x(N);
  for (int i = 0; i < N; ++i) x[i] = 0.5 * pi[cols[i].edge][cols[i].k] + 0.5 / count[cols[i].edge];
  for (int e = 0; e < m; ++e) {
    double sum = 0.0;
    for (int i = 0; i < N; ++i)
      if (cols[i].edge == e) sum += x[i];
    for (int i = 0; i < N; ++i)
      if (cols[i].edge == e) x[i] /= sum;
  }
  auto build = [&](const VectorXd& w) {
    MatrixXd A = MatrixXd::Zero(d, d);
    for (int i = 0; i < N; ++i) A.noalias() += w[i] * ycol[i] * ycol[i].transpose();
    return A;
  };
  auto to_pi = [&](const VectorXd& w) {
    std::vector<VectorXd> out(m);
    for (int e = 0; e < m; ++e) out[e] = VectorXd::Zero(red.Y[e].cols());
    for (int i = 0; i < N; ++i) out[cols[i].edge][cols[i].k] = w[i];
    return out;
  };
  const MatrixXd A0 = build(x);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es0(A0, Eigen::EigenvaluesOnly);
  const double scale = std::max(es0.eigenvalues().cwiseAbs().maxCoeff(), 1e-12);
  double lam = es0.eigenvalues()[0] - 1e-2 * scale;
  const MatrixXd I = MatrixXd::Identity(d, d);

  // Barrier value -(t lam + log det S + sum log x); +inf outside the domain.
  auto barrier = [&](const VectorXd& w, double l, double t) {
    if (w.minCoeff() <= 0.0) return std::numeric_limits<double>::infinity();
    Eigen::LLT<MatrixXd> llt(build(w) - l * I);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const MatrixXd& L = llt.matrixL();
    return -(t * l + 2.0 * L.diagonal().array().log().sum() + w.array().log().sum());
  };

  const int K = N + 1 + m;
  for (double t = 10.0 / scale; t < 1e12 / scale; t *= 8.0) {
    for (int newton = 0; newton < 50; ++newton) {
      const MatrixXd S = build(x) - lam * I;
      Eigen::LLT<MatrixXd> llt(S);
      if (llt.info() != Eigen::Success) break;
      const MatrixXd Sinv = llt.solve(I);
      MatrixXd SY(d, N), Yall(d, N);
      for (int i = 0; i < N; ++i) Yall.col(i) = ycol[i];
      SY = Sinv * Yall;
      const MatrixXd G = Yall.transpose() * SY;  // y_i^T S^-1 y_j
      MatrixXd KKT = MatrixXd::Zero(K, K);
      VectorXd rhs = VectorXd::Zero(K);
      KKT.topLeftCorner(N, N) = G.cwiseProduct(G);
      for (int i = 0; i < N; ++i) {
        KKT(i, i) += 1.0 / (x[i] * x[i]);
        KKT(i, N) = KKT(N, i) = -SY.col(i).squaredNorm();
        rhs[i] = G(i, i) + 1.0 / x[i];
        KKT(i, N + 1 + cols[i].edge) = KKT(N + 1 + cols[i].edge, i) = 1.0;
      }
      KKT(N, N) = Sinv.squaredNorm();
      rhs[N] = t - Sinv.trace();
      // Jacobi scaling on the primal block; the 1/x^2 and tr(S^-2) terms span many decades.
      VectorXd D = VectorXd::Ones(K);
      for (int i = 0; i <= N; ++i) D[i] = 1.0 / std::sqrt(KKT(i, i));
      const MatrixXd scaled = D.asDiagonal() * KKT * D.asDiagonal();
      const VectorXd step = D.cwiseProduct(scaled.fullPivLu().solve(D.cwiseProduct(rhs)));
      VectorXd dx = step.head(N);
      {
        VectorXd drift = VectorXd::Zero(m);
        for (int i = 0; i < N; ++i) drift[cols[i].edge] += dx[i];
        for (int i = 0; i < N; ++i) dx[i] -= drift[cols[i].edge] / count[cols[i].edge];
      }
      const double dl = step[N];
      const double decrement = rhs.head(N).dot(dx) + rhs[N] * dl;
      if (!(decrement == decrement) || decrement < 1e-9) break;
      const double f0 = barrier(x, lam, t);
      double a = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, a *= 0.5) {
        const VectorXd xn = x + a * dx;
        const double ln = lam + a * dl;
        if (barrier(xn, ln, t) <= f0 - 0.25 * a * decrement) {
          x = xn;
          lam = ln;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    auto cand = to_pi(x);
    const double value = dual_bound(red, cand);
    if (value > best) {
      best = value;
      pi = std::move(cand);
    }
    if ((d + N) / t < 1e-7 * scale) break;
  }
  return best;
}

using Objective = std::function<double(const VectorXd&, VectorXd&)>;

// Limited-memory BFGS with Armijo backtracking. Returns the iteration count.
int lbfgs(const Objective& f, VectorXd& x, int max_iter, double grad_tol) {
  constexpr int kMemory = 10;
  std::deque<VectorXd> S, Yd;
  std::deque<double> rho;
  VectorXd grad(x.size()), next_grad(x.size());
  double fx = f(x, grad);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (grad.lpNorm<Eigen::Infinity>() <= grad_tol) break;
    VectorXd q = grad;
    std::vector<double> alpha(S.size());
    for (int i = static_cast<int>(S.size()) - 1; i >= 0; --i) {
      alpha[i] = rho[i] * S[i].dot(q);
      q -= alpha[i] * Yd[i];
    }
    if (!S.empty()) q *= S.back().dot(Yd.back()) / Yd.back().squaredNorm();
    else q /= std::max(1.0, grad.norm());
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double beta = rho[i] * Yd[i].dot(q);
      q += (alpha[i] - beta) * S[i];
    }
    VectorXd dir = -q;
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      S.clear();
      Yd.clear();
      rho.clear();
      dir = -grad / std::max(1.0, grad.norm());
      slope = grad.dot(dir);
    }
    double step = 1.0;
    VectorXd trial;
    double ft = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      trial = x + step * dir;
      ft = f(trial, next_grad);
      if (ft <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    VectorXd s = trial - x;
    VectorXd y = next_grad - grad;
    const double sy = s.dot(y);
    x = std::move(trial);
    grad = next_grad;
    const bool flat = std::abs(fx - ft) <= 1e-16 * std::max(1.0, std::abs(fx));
    fx = ft;
    if (sy > 1e-16 * s.squaredNorm()) {
      S.push_back(std::move(s));
      Yd.push_back(std::move(y));
      rho.push_back(1.0 / sy);
      if (static_cast<int>(S.size()) > kMemory) {
        S.pop_front();
        Yd.pop_front();
        rho.pop_front();
      }
    }
    if (flat) break;
  }
  return it;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& prob, const SdpOptions& opts) {
  const int n = static_cast<int>(prob.mu.size());
  if (n < 2) throw Error(ErrorKind::InvalidHypergraph, "SDP needs at least two vertices");
  const Reduced red = reduce_problem(prob);
  const int m = static_cast<int>(red.Y.size());
  const int r = red.r, d = red.d;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd Z(r, d);
  for (Eigen::Index i = 0; i < Z.size(); ++i) Z.data()[i] = normal(rng);
  Z /= Z.norm();

  SdpSolution sol;
  auto finish = [&](const MatrixXd& Zf) {
    sol.X = Zf * red.P.transpose() * red.inv_sqrt_mu.asDiagonal();
    sol.objective = primal_value(red, Zf, &sol.eta);
  };
  if (m == 0) {
    finish(Z);
    sol.lower_bound = 0.0;
    return sol;
  }

  std::vector<VectorXd> lambda(m);
  for (int e = 0; e < m; ++e) lambda[e] = VectorXd::Constant(red.Y[e].cols(), red.theta[e] / red.Y[e].cols());
  std::vector<double> t(m);
  for (int e = 0; e < m; ++e) t[e] = (Z * red.Y[e]).colwise().squaredNorm().maxCoeff();

  const Eigen::Index nz = static_cast<Eigen::Index>(r) * d;
  VectorXd var(nz + m);
  double rho = 10.0;
  double previous_violation = std::numeric_limits<double>::infinity();

  auto objective = [&](const VectorXd& w, VectorXd& grad) {
    Eigen::Map<const MatrixXd> V(w.data(), r, d);
    const double vnorm = V.norm();
    const MatrixXd Zc = V / vnorm;
    double value = 0.0;
    MatrixXd M = MatrixXd::Zero(d, d);
    grad.setZero(w.size());
    for (int e = 0; e < m; ++e) {
      const double te = w[nz + e];
      value += red.theta[e] * te;
      double mult_sum = 0.0;
      const VectorXd q = (Zc * red.Y[e]).colwise().squaredNorm().transpose();
      VectorXd mult(q.size());
      for (Eigen::Index k = 0; k < q.size(); ++k) {
        const double s = std::max(0.0, lambda[e][k] + rho * (q[k] - te));
        const double lk = lambda[e][k];
        value += (s * s - lk * lk) / (2.0 * rho);
        mult[k] = s;
        mult_sum += s;
      }
      grad[nz + e] = red.theta[e] - mult_sum;
      M.noalias() += red.Y[e] * mult.asDiagonal() * red.Y[e].transpose();
    }
    const MatrixXd G = 2.0 * Zc * M;
    Eigen::Map<MatrixXd> GV(grad.data(), r, d);
    GV = (G - (G.cwiseProduct(Zc).sum()) * Zc) / vnorm;
    return value;
  };

  double best_gap = std::numeric_limits<double>::infinity();
  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    Eigen::Map<MatrixXd>(var.data(), r, d) = Z;
    for (int e = 0; e < m; ++e) var[nz + e] = t[e];
    const double grad_tol = std::max(1e-12, 1e-4 / std::pow(static_cast<double>(outer), 2.0));
    sol.inner_iterations += lbfgs(objective, var, opts.max_inner, grad_tol);
    Z = Eigen::Map<const MatrixXd>(var.data(), r, d);
    Z /= Z.norm();
    double violation = 0.0;
    for (int e = 0; e < m; ++e) {
      t[e] = var[nz + e];
      const VectorXd q = (Z * red.Y[e]).colwise().squaredNorm().transpose();
      for (Eigen::Index k = 0; k < q.size(); ++k) {
        const double c = q[k] - t[e];
        violation = std::max(violation, std::max(c, -lambda[e][k] / rho));
        lambda[e][k] = std::max(0.0, lambda[e][k] + rho * c);
      }
    }
    sol.outer_iterations = outer;
    const double primal = primal_value(red, Z, nullptr);
    auto pi = simplex_multipliers(red, lambda, Z);
    double dual = dual_bound(red, pi);
    if (primal - dual > opts.tol * primal && violation < 1e-4) dual = refine_dual(red, Z, pi);
    const double gap = (primal - dual) / std::max(primal, 1e-12);
    if (gap < best_gap) {
      best_gap = gap;
      sol.lower_bound = std::max(0.0, dual);
      finish(Z);
    }
    if (gap <= opts.tol || primal <= 1e-12) return sol;
    if (violation > 1e-10 && violation > 0.25 * previous_violation) rho = std::min(rho * 4.0, 1e8);
    previous_violation = violation;
  }
  throw Error(ErrorKind::NoConvergence,
              "SDP solver stopped with relative gap " + std::to_string(best_gap) + " above tolerance");
}

std::vector<double> gaussian_round(const SdpSolution& sol, std::uint64_t seed) {
  if (sol.X.size() == 0 || sol.X.norm() <= 1e-12)
    throw Error(ErrorKind::DegenerateEmbedding, "embedding matrix is numerically zero");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd g(sol.X.rows());
  for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = normal(rng);
  const Eigen::VectorXd x = sol.X.transpose() * g;
  return std::vector<double>(x.data(), x.data() + x.size());
}

std::uint64_t draw_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

R2Result minimize_r2(const SubmodularHypergraph& g, int n_embed, int restarts, std::uint64_t seed,
                     const SdpOptions& opts) {
  if (restarts < 1) throw Error(ErrorKind::Config, "restarts must be >= 1");
  R2Result best;
  best.solution = solve_sdp(build_sdp(g, n_embed), opts);
  best.sdp_opt = best.solution.objective;
  best.r2 = std::numeric_limits<double>::infinity();
  const auto& mu = g.mu();
  for (int i = 0; i < restarts; ++i) {
    auto x = gaussian_round(best.solution, draw_seed(seed, static_cast<std::uint64_t>(i)));
    const double mean = z_p_mu(x, mu, 2.0).center;
    for (auto& v : x) v -= mean;
    double r2;
    try {
      r2 = rayleigh(g, x, 2.0);
    } catch (const Error&) {
      continue;
    }
    if (r2 < best.r2) {
      best.r2 = r2;
      best.x = std::move(x);
    }
  }
  if (best.x.empty()) throw Error(ErrorKind::DegenerateEmbedding, "every rounding produced a constant vector");
  return best;
}

}  // namespace subhyp
