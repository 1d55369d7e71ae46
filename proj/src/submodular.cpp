#include "subhyp/submodular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "subhyp/error.hpp"

namespace subhyp {

std::vector<int> greedy_order(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] > x[b]; });
  return order;
}

double lovasz(const CutWeightFn& w, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) return 0.0;
  const auto order = greedy_order(x);
  std::vector<double> prefix(n);
  w.prefix_values(order, prefix);
  double value = 0.0;
  for (int j = 0; j + 1 < n; ++j) value += prefix[j] * (x[order[j]] - x[order[j + 1]]);
  return value;
}

std::vector<double> greedy_point(const CutWeightFn& w, std::span<const int> order, double scale) {
  const int n = static_cast<int>(order.size());
  std::vector<double> prefix(n);
  w.prefix_values(order, prefix);
  std::vector<double> y(n);
  double previous = 0.0;
  for (int j = 0; j < n; ++j) {
    y[order[j]] = scale * (prefix[j] - previous);
    previous = prefix[j];
  }
  return y;
}

BasePoint subgradient(const CutWeightFn& w, std::span<const double> x) {
  const auto order = greedy_order(x);
  return BasePoint{-1, greedy_point(w, order)};
}

std::vector<BasePoint> extreme_points(const CutWeightFn& w, int cap) {
  const int n = w.arity();
  if (n > cap)
    throw Error(ErrorKind::ArityTooLarge,
                "extreme point enumeration needs |e| <= " + std::to_string(cap) + ", got " + std::to_string(n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<double>> points;
  do {
    points.push_back(greedy_point(w, order));
  } while (std::next_permutation(order.begin(), order.end()));

  constexpr double kDedupTol = 1e-12;
  auto less = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (int i = 0; i < n; ++i) {
      if (a[i] < b[i] - kDedupTol) return true;
      if (a[i] > b[i] + kDedupTol) return false;
    }
    return false;
  };
  std::sort(points.begin(), points.end(), less);
  points.erase(std::unique(points.begin(), points.end(),
                           [&](const auto& a, const auto& b) { return !less(a, b) && !less(b, a); }),
               points.end());

  std::vector<BasePoint> out;
  out.reserve(points.size());
  for (auto& p : points) out.push_back(BasePoint{-1, std::move(p)});
  return out;
}

namespace {

// Projection of b onto theta * B(F) for F(S) = h(|S|) with h concave and symmetric.
// Moreau: proj_B(b) = b - prox_{theta f}(b), and the prox of a cardinality-based
// Lovasz extension is an antitone isotonic regression of sort(b) - theta * dh.
std::vector<double> project_cardinality(const CutWeightFn& w, double theta, std::span<const double> b) {
  const int n = static_cast<int>(b.size());
  auto order = greedy_order(b);
  std::vector<double> target(n);
  double previous = 0.0;
  for (int j = 0; j < n; ++j) {
    const double h = w.of_size(j + 1);
    target[j] = b[order[j]] - theta * (h - previous);
    previous = h;
  }
  // Pool adjacent violators for a nonincreasing fit.
  std::vector<double> level;
  std::vector<int> count;
  level.reserve(n);
  count.reserve(n);
  for (int j = 0; j < n; ++j) {
    double value = target[j];
    int size = 1;
    while (!level.empty() && level.back() <= value) {
      value = (level.back() * count.back() + value * size) / (count.back() + size);
      size += count.back();
      level.pop_back();
      count.pop_back();
    }
    level.push_back(value);
    count.push_back(size);
  }
  std::vector<double> y(n);
  int j = 0;
  for (std::size_t block = 0; block < level.size(); ++block)
    for (int k = 0; k < count[block]; ++k, ++j) y[order[j]] = b[order[j]] - level[block];
  return y;
}

}  // namespace

BasePoint min_norm_wolfe(const CutWeightFn& w, double theta, std::span<const double> a,
                         const MinNormOptions& opts) {
  const int n = static_cast<int>(a.size());
  using Vec = Eigen::VectorXd;
  const Eigen::Map<const Vec> shift(a.data(), n);

  // Linear oracle over a + theta*B: argmin <d, a + theta y> picks the greedy point
  // for the order of -d nonincreasing.
  auto oracle = [&](const Vec& d) {
    std::vector<double> neg(n);
    for (int i = 0; i < n; ++i) neg[i] = -d[i];
    const auto order = greedy_order(neg);
    const auto y = greedy_point(w, order, theta);
    return Vec(shift + Eigen::Map<const Vec>(y.data(), n));
  };

  long max_iter = opts.max_iter;
  if (max_iter <= 0) {
    const double logs = std::max(1.0, std::log(1.0 / opts.eps));
    max_iter = static_cast<long>(10.0 * std::max(1, n * n) * logs) + 100;
  }

  std::vector<Vec> corral{oracle(Vec::Zero(n))};
  std::vector<double> coef{1.0};
  Vec x = corral.front();
  double last_norm = x.squaredNorm();
  constexpr double kDrop = 1e-14;

  for (long iter = 0;; ++iter) {
    if (iter >= max_iter)
      throw Error(ErrorKind::NoConvergence, "min-norm-point exceeded " + std::to_string(max_iter) + " iterations");
    const Vec q = oracle(x);
    const double gap = x.squaredNorm() - x.dot(q);
    if (gap <= opts.eps) break;
    bool duplicate = false;
    for (const auto& p : corral)
      if ((p - q).squaredNorm() < 1e-24) duplicate = true;
    if (duplicate) break;
    corral.push_back(q);
    coef.push_back(0.0);

    // Minor cycles: move to the affine minimizer of the corral, dropping points
    // whenever it leaves the convex hull.
    for (;;) {
      const int m = static_cast<int>(corral.size());
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) kkt(i, j) = kkt(j, i) = corral[i].dot(corral[j]);
        kkt(i, m) = kkt(m, i) = 1.0;
      }
      Vec rhs = Vec::Zero(m + 1);
      rhs[m] = 1.0;
      const Vec sol = kkt.colPivHouseholderQr().solve(rhs);
      const Vec alpha = sol.head(m);
      if ((alpha.array() > kDrop).all()) {
        coef.assign(alpha.data(), alpha.data() + m);
        break;
      }
      double step = 1.0;
      for (int i = 0; i < m; ++i)
        if (alpha[i] <= kDrop) step = std::min(step, coef[i] / (coef[i] - alpha[i]));
      for (int i = 0; i < m; ++i) coef[i] = step * alpha[i] + (1.0 - step) * coef[i];
      std::vector<Vec> kept;
      std::vector<double> kept_coef;
      for (int i = 0; i < m; ++i) {
        if (coef[i] > kDrop) {
          kept.push_back(corral[i]);
          kept_coef.push_back(coef[i]);
        }
      }
      if (kept.empty()) {
        kept.push_back(corral.back());
        kept_coef.push_back(1.0);
      }
      const double total = std::accumulate(kept_coef.begin(), kept_coef.end(), 0.0);
      for (auto& c : kept_coef) c /= total;
      corral = std::move(kept);
      coef = std::move(kept_coef);
    }
    x.setZero();
    for (std::size_t i = 0; i < corral.size(); ++i) x += coef[i] * corral[i];
    const double norm = x.squaredNorm();
    if (last_norm - norm < opts.stall && iter > 0) {
      last_norm = std::min(last_norm, norm);
      break;
    }
    last_norm = norm;
  }
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = x[i] - a[i];
  return BasePoint{-1, std::move(y)};
}

BasePoint min_norm_shifted(const CutWeightFn& w, double theta, std::span<const double> a,
                           const MinNormOptions& opts) {
  if (static_cast<int>(a.size()) != w.arity())
    throw Error(ErrorKind::InvalidHypergraph, "shift vector size does not match hyperedge arity");
  if (w.cardinality_based() && opts.closed_form) {
    std::vector<double> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = -a[i];
    return BasePoint{-1, project_cardinality(w, theta, b)};
  }
  return min_norm_wolfe(w, theta, a, opts);
}

bool check_membership(const CutWeightFn& w, double theta, std::span<const double> y, double tol) {
  const int n = w.arity();
  if (static_cast<int>(y.size()) != n) return false;
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  if (std::abs(total) > tol) return false;
  if (w.cardinality_based()) {
    // max_{|S|=k} y(S) is the sum of the k largest coordinates.
    std::vector<double> sorted(y.begin(), y.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prefix = 0.0;
    for (int k = 1; k <= n; ++k) {
      prefix += sorted[k - 1];
      if (prefix > theta * w.of_size(k) + tol) return false;
    }
    return true;
  }
  if (n > kMaxTableArity) return false;
  // Gray-code walk keeps y(S) incremental.
  double partial = 0.0;
  Mask mask = 0;
  for (Mask i = 1; i < (Mask{1} << n); ++i) {
    const int bit = std::countr_zero(i);
    mask ^= Mask{1} << bit;
    partial += (mask & (Mask{1} << bit)) ? y[bit] : -y[bit];
    if (partial > theta * w.of_mask(mask) + tol) return false;
  }
  return true;
}

void validate_weight(const CutWeightFn& w, std::uint64_t seed, double tol) {
  const int n = w.arity();
  if (w.cardinality_based()) {
    // Symmetric concave profiles are submodular; alpha and homogeneous are by construction,
    // so only the incidence condition can fail (|e| = 1).
    if (n >= 2 && w.of_size(1) <= tol)
      throw Error(ErrorKind::InvalidHypergraph, "singleton weight must be positive");
    return;
  }
  const Mask full = (n >= 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
  if (std::abs(w.of_mask(0)) > tol || std::abs(w.of_mask(full)) > tol)
    throw Error(ErrorKind::InvalidHypergraph, "weight must vanish on the empty set and the full hyperedge");
  const auto& vals = w.values();
  const double top = *std::max_element(vals.begin(), vals.end());
  if (std::abs(top - 1.0) > 1e-9)
    throw Error(ErrorKind::InvalidHypergraph, "weight must be normalized to max 1, got " + std::to_string(top));
  for (int i = 0; i < n; ++i)
    if (w.of_mask(Mask{1} << i) <= tol)
      throw Error(ErrorKind::InvalidHypergraph, "member " + std::to_string(i) + " has zero singleton weight");

  auto fail = [](const std::string& what) { throw Error(ErrorKind::NotSubmodular, what); };
  if (n <= 12) {
    for (Mask s = 0; s <= full; ++s) {
      if (std::abs(w.of_mask(s) - w.of_mask(full & ~s)) > tol) fail("weight is not symmetric");
      if (w.of_mask(s) < -tol) fail("weight is negative");
      // Local exchange inequalities are equivalent to pairwise submodularity.
      for (int i = 0; i < n; ++i) {
        if (s & (Mask{1} << i)) continue;
        for (int j = i + 1; j < n; ++j) {
          if (s & (Mask{1} << j)) continue;
          const Mask si = s | (Mask{1} << i);
          const Mask sj = s | (Mask{1} << j);
          if (w.of_mask(si) + w.of_mask(sj) < w.of_mask(si | sj) + w.of_mask(s) - tol)
            fail("weight violates submodularity");
        }
      }
    }
    return;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Mask> draw(0, full);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mask s = draw(rng);
    const Mask t = draw(rng);
    if (std::abs(w.of_mask(s) - w.of_mask(full & ~s)) > tol) fail("weight is not symmetric");
    if (w.of_mask(s) + w.of_mask(t) < w.of_mask(s | t) + w.of_mask(s & t) - tol)
      fail("weight violates submodularity");
  }
}

}  // namespace subhyp
