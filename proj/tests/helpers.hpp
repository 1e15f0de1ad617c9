#pragma once

#include <string>
#include <vector>

#include "posetflow/builders.hpp"
#include "posetflow/numeric.hpp"
#include "posetflow/poset.hpp"

namespace posetflow::testing {

// Five-element normalized-matching violation fixture: three minimal
// elements a, b, c under x, with only a under y. S = {b, c} has
// |nbhd(S)|/2 = 1/2 < 2/3 = |S|/3, and {b, c, y} has LYM sum 7/6.
inline Poset violation_poset() {
  return Poset({{"a"}, {"b"}, {"c"}, {"x"}, {"y"}},
               {{"a", "x"}, {"b", "x"}, {"c", "x"}, {"a", "y"}});
}

inline LayerProfile profile_of(const std::vector<long>& sizes) {
  LayerProfile p;
  for (long s : sizes) p.sizes.emplace_back(s);
  return p;
}

inline std::vector<BigInt> bigints(const std::vector<long>& values) {
  std::vector<BigInt> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

// Random graded poset: layered nodes where every non-bottom node has at
// least one cover from the previous layer, so ranks match the layering and
// every cover raises rank by exactly one.
inline Poset random_graded_poset(SplitMix64& rng, int max_elements = 24,
                                 bool random_weights = false) {
  int layer_count = 2 + static_cast<int>(rng.below(4));
  std::vector<int> sizes(layer_count);
  int total = 0;
  for (int& s : sizes) {
    s = 1 + static_cast<int>(rng.below(5));
    total += s;
  }
  while (total > max_elements) {
    for (int& s : sizes) {
      if (total > max_elements && s > 1) {
        --s;
        --total;
      }
    }
  }
  std::vector<Poset::Element> elements;
  std::vector<std::vector<int>> layer_members(layer_count);
  for (int k = 0; k < layer_count; ++k) {
    for (int m = 0; m < sizes[k]; ++m) {
      layer_members[k].push_back(static_cast<int>(elements.size()));
      std::string id = "g" + std::to_string(k) + "." + std::to_string(m);
      BigInt weight = random_weights ? BigInt(1 + rng.below(5)) : BigInt(1);
      elements.push_back({id, weight});
    }
  }
  std::vector<std::pair<int, int>> covers;
  for (int k = 1; k < layer_count; ++k) {
    for (int node : layer_members[k]) {
      bool attached = false;
      for (int parent : layer_members[k - 1]) {
        if (rng.below(2) == 0) {
          covers.emplace_back(parent, node);
          attached = true;
        }
      }
      if (!attached) {
        int parent = layer_members[k - 1][rng.below(layer_members[k - 1].size())];
        covers.emplace_back(parent, node);
      }
    }
  }
  return Poset::from_indexed(std::move(elements), std::move(covers));
}

}  // namespace posetflow::testing
