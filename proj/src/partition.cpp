#include "qsixj/partition.hpp"

#include <algorithm>

#include "qsixj/errors.hpp"

namespace qsixj {

DeepPartition DeepPartition::from_edges(std::span<const int> deep_edges_1based) {
  DeepPartition p;
  for (int e : deep_edges_1based) {
    if (e < 1 || e > 6) throw InputError("deep edge index " + std::to_string(e) + " outside 1..6");
    if (p.deep_[e - 1]) throw InputError("deep edge " + std::to_string(e) + " listed twice");
    p.deep_[e - 1] = true;
  }
  return p;
}

int DeepPartition::deep_count() const { return static_cast<int>(std::count(deep_.begin(), deep_.end(), true)); }

std::vector<int> DeepPartition::deep_edges() const {
  std::vector<int> out;
  for (int e = 0; e < 6; ++e)
    if (deep_[e]) out.push_back(e);
  return out;
}

std::vector<int> DeepPartition::regular_edges() const {
  std::vector<int> out;
  for (int e = 0; e < 6; ++e)
    if (!deep_[e]) out.push_back(e);
  return out;
}

DeepPartition DeepPartition::complement() const {
  DeepPartition p;
  for (int e = 0; e < 6; ++e) p.deep_[e] = !deep_[e];
  return p;
}

std::string DeepPartition::label() const {
  std::string s = "((";
  for (int e : deep_edges()) s += std::to_string(e + 1);
  s += "),(";
  for (int e : regular_edges()) s += std::to_string(e + 1);
  return s + "))";
}

}  // namespace qsixj
