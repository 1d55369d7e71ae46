#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace subhyp {

/// Subset of a hyperedge's members encoded by local position (bit i <-> members[i]).
using Mask = std::uint32_t;

inline constexpr int kMaxTableArity = 20;

/// Cardinality-profile weight used for the dataset experiments:
/// 1/2 + 1/2 min{1, |S|/ceil(alpha|e|), |e\S|/ceil(alpha|e|)}, and 0 at the extremes.
double alpha_weight(int size_s, int size_e, double alpha);

/// Per-hyperedge cut weight oracle w_e over subsets of the hyperedge's members.
///
/// Homogeneous and AlphaCardinality are cardinality-based and evaluated from
/// closed forms, so arity is unbounded. Table stores all 2^|e| values indexed by
/// local bitmask and is limited to kMaxTableArity members.
class CutWeightFn {
 public:
  enum class Kind { Homogeneous, AlphaCardinality, Table };

  static CutWeightFn homogeneous(int arity);
  static CutWeightFn alpha_cardinality(int arity, double alpha);
  static CutWeightFn table(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  int arity() const noexcept { return arity_; }
  double alpha() const noexcept { return alpha_; }
  const std::vector<double>& values() const noexcept { return values_; }
  bool cardinality_based() const noexcept { return kind_ != Kind::Table; }

  /// Value on any subset of the given size. Cardinality-based kinds only.
  double of_size(int size) const;

  /// Value on the subset encoded by `mask`. Requires arity <= 32.
  double of_mask(Mask mask) const;

  /// Value on the subset given by a 0/1 indicator over local positions.
  double operator()(std::span<const std::uint8_t> indicator) const;

  /// out[j] = w({order[0], ..., order[j]}) for a permutation `order` of local positions.
  void prefix_values(std::span<const int> order, std::span<double> out) const;

  /// Table over the members at `positions` (ascending local indices) with
  /// values w(T) * scale for every T drawn from those positions.
  CutWeightFn restricted(std::span<const int> positions, double scale) const;

 private:
  CutWeightFn(Kind kind, int arity, double alpha, std::vector<double> values)
      : kind_(kind), arity_(arity), alpha_(alpha), values_(std::move(values)) {}

  Kind kind_;
  int arity_;
  double alpha_;
  std::vector<double> values_;
};

/// Readable name used in JSON descriptors ("homogeneous", "alpha", "table").
const char* kind_name(CutWeightFn::Kind kind);

}  // namespace subhyp
