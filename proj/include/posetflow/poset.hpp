#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posetflow/numeric.hpp"

namespace posetflow {

// A finite poset stored by its cover relation: a pair (x, y) means "y covers
// x". The cover set is expected to be an explicit transitive reduction;
// validate() checks that together with acyclicity, duplicate/self pairs and
// weight positivity. Element weights >= 1 act as multiplicities (block
// posets use them for block sizes); every layer quantity below is weighted.
class Poset {
 public:
  struct Element {
    std::string id;
    BigInt weight = 1;
  };

  Poset() = default;

  // Covers given by element id; unknown ids throw std::invalid_argument.
  Poset(std::vector<Element> elements,
        const std::vector<std::pair<std::string, std::string>>& covers_by_id);

  static Poset from_indexed(std::vector<Element> elements,
                            std::vector<std::pair<int, int>> covers);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& id(int i) const { return elements_[i].id; }
  const BigInt& weight(int i) const { return elements_[i].weight; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  int index_of(std::string_view id) const;  // -1 when unknown
  int require(std::string_view id) const;   // throws on unknown id

  // Element indices ordered by id; the canonical order used by flow
  // networks, reports and serialization.
  std::vector<int> sorted_order() const;

 private:
  void rebuild_index();

  std::vector<Element> elements_;
  std::vector<std::pair<int, int>> covers_;
  std::unordered_map<std::string, int> index_;
};

struct ValidationReport {
  bool ok = false;
  bool ids_unique = true;
  bool weights_positive = true;
  bool covers_in_range = true;
  bool no_self_pairs = true;
  bool no_duplicate_pairs = true;
  bool acyclic = true;
  bool transitively_reduced = true;
  std::vector<std::string> problems;
};

ValidationReport validate(const Poset& poset);

// Weighted layer sizes. Valid profiles have contiguous positive support:
// no internal zeros between the first and last positive entry.
struct LayerProfile {
  std::vector<BigInt> sizes;

  bool is_valid() const;
  // Positive support as a half-open index interval [begin, end);
  // begin == end when the profile is all zero.
  int support_begin() const;
  int support_end() const;

  bool operator==(const LayerProfile&) const = default;
};

struct RankAssignment {
  std::vector<int> rank;               // per element index
  std::vector<std::vector<int>> layers;  // layer k -> element indices
  LayerProfile profile;                // weighted layer sizes

  int height() const { return static_cast<int>(layers.size()) - 1; }
};

// rank(x) = 0 for minimal x, else 1 + max rank over covered elements.
// Throws std::invalid_argument when the cover digraph has a cycle.
RankAssignment rank_function(const Poset& poset);

// Largest weighted layer size; 0 for the empty poset.
BigInt largest_layer(const RankAssignment& ranks);

// Reachability in the order generated by the covers, as bitset rows.
class TransitiveClosure {
 public:
  TransitiveClosure(int n, std::vector<uint64_t> bits, int words);

  int size() const { return n_; }
  bool less(int a, int b) const {  // a < b in the generated order
    return (bits_[static_cast<size_t>(a) * words_ + b / 64] >> (b % 64)) & 1;
  }
  bool comparable(int a, int b) const { return less(a, b) || less(b, a); }
  // All strict pairs (a, b) with a < b, sorted by (a, b) index.
  std::vector<std::pair<int, int>> pairs() const;
  long long pair_count() const;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

TransitiveClosure transitive_closure(const Poset& poset);

// Membership tests take element ids and throw on unknown ids. Sets of size
// <= 1 are both chains and antichains.
bool is_chain(const Poset& poset, std::span<const std::string> members);
bool is_antichain(const Poset& poset, std::span<const std::string> members);
bool is_chain(const TransitiveClosure& closure, std::span<const int> members);
bool is_antichain(const TransitiveClosure& closure, std::span<const int> members);

// True iff every cover raises rank by exactly one.
bool is_graded(const Poset& poset);
bool is_graded(const Poset& poset, const RankAssignment& ranks);

// Non-increasing consecutive ratios over the positive support, decided by
// the exact cross-multiplied form p_k^2 >= p_{k+1} * p_{k-1}.
bool is_log_concave(const LayerProfile& profile);

// (p_start, p_{start+stride}, ...) truncated at the end of the support.
LayerProfile ap_subprofile(const LayerProfile& profile, int start, int stride);

}  // namespace posetflow
