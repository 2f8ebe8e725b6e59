#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace qsixj {

/// Split of the six edges into deep (I) and regular (J) edges.
class DeepPartition {
 public:
  DeepPartition() = default;
  /// Edges are 1-based, as in the usual a_1..a_6 labelling. Duplicates or
  /// values outside 1..6 throw InputError.
  static DeepPartition from_edges(std::span<const int> deep_edges_1based);

  bool is_deep(int edge0) const { return deep_[edge0]; }
  int deep_count() const;
  /// 0-based, ascending.
  std::vector<int> deep_edges() const;
  std::vector<int> regular_edges() const;
  DeepPartition complement() const;
  /// e.g. "((1),(23456))"
  std::string label() const;

  friend bool operator==(const DeepPartition&, const DeepPartition&) = default;

 private:
  std::array<bool, 6> deep_{};
};

}  // namespace qsixj
