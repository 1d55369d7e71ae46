#include "subhyp/cut_weight.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "subhyp/error.hpp"

namespace subhyp {

double alpha_weight(int size_s, int size_e, double alpha) {
  if (size_s <= 0 || size_s >= size_e) return 0.0;
  // Guard against alpha*|e| landing a hair above an integer (0.04 * 100 etc.).
  const double block = std::max(1.0, std::ceil(alpha * size_e - 1e-9));
  const double inside = size_s / block;
  const double outside = (size_e - size_s) / block;
  return 0.5 + 0.5 * std::min({1.0, inside, outside});
}

CutWeightFn CutWeightFn::homogeneous(int arity) {
  if (arity < 1) throw Error(ErrorKind::InvalidHypergraph, "hyperedge arity must be positive");
  return CutWeightFn(Kind::Homogeneous, arity, 0.0, {});
}

CutWeightFn CutWeightFn::alpha_cardinality(int arity, double alpha) {
  if (arity < 1) throw Error(ErrorKind::InvalidHypergraph, "hyperedge arity must be positive");
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw Error(ErrorKind::InvalidHypergraph, "alpha must lie in (0, 0.5], got " + std::to_string(alpha));
  return CutWeightFn(Kind::AlphaCardinality, arity, alpha, {});
}

CutWeightFn CutWeightFn::table(std::vector<double> values) {
  const auto size = values.size();
  if (size < 2 || !std::has_single_bit(size))
    throw Error(ErrorKind::InvalidHypergraph, "table weight needs 2^|e| values with |e| >= 1");
  const int arity = std::countr_zero(size);
  if (arity > kMaxTableArity)
    throw Error(ErrorKind::ArityTooLarge, "table weights are limited to |e| <= 20");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidHypergraph, "table weight has a non-finite entry");
  return CutWeightFn(Kind::Table, arity, 0.0, std::move(values));
}

double CutWeightFn::of_size(int size) const {
  switch (kind_) {
    case Kind::Homogeneous: return (size <= 0 || size >= arity_) ? 0.0 : 1.0;
    case Kind::AlphaCardinality: return alpha_weight(size, arity_, alpha_);
    case Kind::Table: break;
  }
  throw Error(ErrorKind::InvalidHypergraph, "of_size called on a table weight");
}

double CutWeightFn::of_mask(Mask mask) const {
  if (kind_ == Kind::Table) return values_[mask];
  return of_size(std::popcount(mask));
}

double CutWeightFn::operator()(std::span<const std::uint8_t> indicator) const {
  if (kind_ == Kind::Table) {
    Mask mask = 0;
    for (int i = 0; i < arity_; ++i)
      if (indicator[i]) mask |= Mask{1} << i;
    return values_[mask];
  }
  int count = 0;
  for (int i = 0; i < arity_; ++i) count += indicator[i] ? 1 : 0;
  return of_size(count);
}

void CutWeightFn::prefix_values(std::span<const int> order, std::span<double> out) const {
  const int n = static_cast<int>(order.size());
  if (kind_ == Kind::Table) {
    Mask mask = 0;
    for (int j = 0; j < n; ++j) {
      mask |= Mask{1} << order[j];
      out[j] = values_[mask];
    }
    return;
  }
  for (int j = 0; j < n; ++j) out[j] = of_size(j + 1);
}

CutWeightFn CutWeightFn::restricted(std::span<const int> positions, double scale) const {
  const int k = static_cast<int>(positions.size());
  if (k > kMaxTableArity) throw Error(ErrorKind::ArityTooLarge, "restricted weight exceeds table cap");
  std::vector<double> vals(std::size_t{1} << k);
  for (Mask sub = 0; sub < vals.size(); ++sub) {
    if (kind_ == Kind::Table) {
      Mask full = 0;
      for (int i = 0; i < k; ++i)
        if (sub & (Mask{1} << i)) full |= Mask{1} << positions[i];
      vals[sub] = values_[full] * scale;
    } else {
      vals[sub] = of_size(std::popcount(sub)) * scale;
    }
  }
  return table(std::move(vals));
}

const char* kind_name(CutWeightFn::Kind kind) {
  switch (kind) {
    case CutWeightFn::Kind::Homogeneous: return "homogeneous";
    case CutWeightFn::Kind::AlphaCardinality: return "alpha";
    case CutWeightFn::Kind::Table: return "table";
  }
  return "unknown";
}

}  // namespace subhyp
