#include "posetflow/poset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "posetflow/errors.hpp"

namespace posetflow {

Poset::Poset(std::vector<Element> elements,
             const std::vector<std::pair<std::string, std::string>>& covers_by_id)
    : elements_(std::move(elements)) {
  rebuild_index();
  covers_.reserve(covers_by_id.size());
  for (const auto& [lo, hi] : covers_by_id) {
    covers_.emplace_back(require(lo), require(hi));
  }
}

Poset Poset::from_indexed(std::vector<Element> elements,
                          std::vector<std::pair<int, int>> covers) {
  Poset p;
  p.elements_ = std::move(elements);
  p.covers_ = std::move(covers);
  int n = p.size();
  for (const auto& [lo, hi] : p.covers_) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n) {
      throw std::invalid_argument("cover index out of range");
    }
  }
  p.rebuild_index();
  return p;
}

void Poset::rebuild_index() {
  index_.clear();
  index_.reserve(elements_.size());
  for (int i = 0; i < size(); ++i) {
    index_.emplace(elements_[i].id, i);  // first occurrence wins; validate flags duplicates
  }
}

int Poset::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? -1 : it->second;
}

int Poset::require(std::string_view id) const {
  int i = index_of(id);
  if (i < 0) throw std::invalid_argument("unknown element id: " + std::string(id));
  return i;
}

std::vector<int> Poset::sorted_order() const {
  std::vector<int> order(elements_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return elements_[a].id < elements_[b].id; });
  return order;
}

namespace {

// Kahn longest-path ranks; empty result when a cycle exists.
std::optional<std::vector<int>> try_ranks(const Poset& poset) {
  int n = poset.size();
  std::vector<std::vector<int>> up(n);
  std::vector<int> indeg(n, 0);
  for (const auto& [lo, hi] : poset.covers()) {
    up[lo].push_back(hi);
    ++indeg[hi];
  }
  std::vector<int> rank(n, 0);
  std::vector<int> queue;
  queue.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) queue.push_back(i);
  }
  size_t head = 0;
  int seen = 0;
  while (head < queue.size()) {
    int v = queue[head++];
    ++seen;
    for (int w : up[v]) {
      rank[w] = std::max(rank[w], rank[v] + 1);
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  if (seen != n) return std::nullopt;
  return rank;
}

}  // namespace

ValidationReport validate(const Poset& poset) {
  ValidationReport report;
  int n = poset.size();

  {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& e : poset.elements()) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      report.ids_unique = false;
      report.problems.push_back("duplicate element ids");
    }
  }

  for (const auto& e : poset.elements()) {
    if (e.weight < 1) {
      report.weights_positive = false;
      report.problems.push_back("element '" + e.id + "' has weight < 1");
      break;
    }
  }

  for (const auto& [lo, hi] : poset.covers()) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n) {
      report.covers_in_range = false;
      report.problems.push_back("cover index out of range");
      break;
    }
  }

  if (report.covers_in_range) {
    auto sorted = poset.covers();
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.no_duplicate_pairs = false;
      report.problems.push_back("duplicate cover pairs");
    }
    for (const auto& [lo, hi] : sorted) {
      if (lo == hi) {
        report.no_self_pairs = false;
        report.problems.push_back("self cover pair on '" + poset.id(lo) + "'");
        break;
      }
    }

    auto ranks = try_ranks(poset);
    if (!ranks) {
      report.acyclic = false;
      report.problems.push_back("cover digraph has a cycle");
    } else {
      // A cover whose rank jump is exactly 1 can never be implied by a
      // longer cover path. Only jumping covers need a reachability test:
      // (x, y) is redundant iff some other cover (x, z) has z <= y.
      const auto& rank = *ranks;
      std::vector<std::vector<int>> up(n);
      for (const auto& [lo, hi] : poset.covers()) up[lo].push_back(hi);
      auto reaches = [&](int from, int target) {
        std::vector<int> stack{from};
        std::vector<char> seen(n, 0);
        seen[from] = 1;
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          if (v == target) return true;
          for (int w : up[v]) {
            if (rank[w] <= rank[target] && !seen[w]) {
              seen[w] = 1;
              stack.push_back(w);
            }
          }
        }
        return false;
      };
      for (const auto& [lo, hi] : poset.covers()) {
        if (rank[hi] - rank[lo] == 1) continue;
        bool redundant = false;
        for (int mid : up[lo]) {
          if (mid != hi && reaches(mid, hi)) {
            redundant = true;
            break;
          }
        }
        if (redundant) {
          report.transitively_reduced = false;
          report.problems.push_back("cover (" + poset.id(lo) + ", " + poset.id(hi) +
                                    ") is transitively implied");
          break;
        }
      }
    }
  }

  report.ok = report.ids_unique && report.weights_positive && report.covers_in_range &&
              report.no_self_pairs && report.no_duplicate_pairs && report.acyclic &&
              report.transitively_reduced;
  return report;
}

bool LayerProfile::is_valid() const {
  int begin = support_begin();
  int end = support_end();
  if (begin == end) return false;  // empty support
  for (int k = begin; k < end; ++k) {
    if (sizes[k] <= 0) return false;
  }
  for (const auto& s : sizes) {
    if (s < 0) return false;
  }
  return true;
}

int LayerProfile::support_begin() const {
  for (int k = 0; k < static_cast<int>(sizes.size()); ++k) {
    if (sizes[k] > 0) return k;
  }
  return static_cast<int>(sizes.size());
}

int LayerProfile::support_end() const {
  for (int k = static_cast<int>(sizes.size()); k-- > 0;) {
    if (sizes[k] > 0) return k + 1;
  }
  return support_begin();
}

RankAssignment rank_function(const Poset& poset) {
  auto ranks = try_ranks(poset);
  if (!ranks) throw std::invalid_argument("rank_function: cover digraph has a cycle");
  RankAssignment out;
  out.rank = std::move(*ranks);
  int height = -1;
  for (int r : out.rank) height = std::max(height, r);
  out.layers.assign(height + 1, {});
  for (int i = 0; i < poset.size(); ++i) out.layers[out.rank[i]].push_back(i);
  out.profile.sizes.assign(height + 1, 0);
  for (int i = 0; i < poset.size(); ++i) out.profile.sizes[out.rank[i]] += poset.weight(i);
  return out;
}

BigInt largest_layer(const RankAssignment& ranks) {
  BigInt best = 0;
  for (const auto& s : ranks.profile.sizes) best = std::max(best, s);
  return best;
}

TransitiveClosure::TransitiveClosure(int n, std::vector<uint64_t> bits, int words)
    : n_(n), words_(words), bits_(std::move(bits)) {}

std::vector<std::pair<int, int>> TransitiveClosure::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      if (less(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

long long TransitiveClosure::pair_count() const {
  long long total = 0;
  for (uint64_t w : bits_) total += __builtin_popcountll(w);
  return total;
}

TransitiveClosure transitive_closure(const Poset& poset) {
  int n = poset.size();
  if (n > 20000) {
    throw CapExceeded("transitive_closure: poset too large for bitset closure (" +
                      std::to_string(n) + " elements)");
  }
  auto ranks = try_ranks(poset);
  if (!ranks) throw std::invalid_argument("transitive_closure: cover digraph has a cycle");

  // Process elements by decreasing rank so successors are finished first.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return (*ranks)[a] > (*ranks)[b]; });

  int words = (n + 63) / 64;
  std::vector<uint64_t> bits(static_cast<size_t>(n) * words, 0);
  std::vector<std::vector<int>> up(n);
  for (const auto& [lo, hi] : poset.covers()) up[lo].push_back(hi);
  for (int v : order) {
    uint64_t* row = bits.data() + static_cast<size_t>(v) * words;
    for (int w : up[v]) {
      row[w / 64] |= uint64_t{1} << (w % 64);
      const uint64_t* succ = bits.data() + static_cast<size_t>(w) * words;
      for (int k = 0; k < words; ++k) row[k] |= succ[k];
    }
  }
  return TransitiveClosure(n, std::move(bits), words);
}

namespace {

std::vector<int> resolve(const Poset& poset, std::span<const std::string> members) {
  std::vector<int> idx;
  idx.reserve(members.size());
  for (const auto& id : members) idx.push_back(poset.require(id));
  return idx;
}

}  // namespace

bool is_chain(const TransitiveClosure& closure, std::span<const int> members) {
  for (size_t a = 0; a < members.size(); ++a) {
    for (size_t b = a + 1; b < members.size(); ++b) {
      if (!closure.comparable(members[a], members[b])) return false;
    }
  }
  return true;
}

bool is_antichain(const TransitiveClosure& closure, std::span<const int> members) {
  for (size_t a = 0; a < members.size(); ++a) {
    for (size_t b = a + 1; b < members.size(); ++b) {
      if (closure.comparable(members[a], members[b])) return false;
    }
  }
  return true;
}

bool is_chain(const Poset& poset, std::span<const std::string> members) {
  auto idx = resolve(poset, members);
  return is_chain(transitive_closure(poset), idx);
}

bool is_antichain(const Poset& poset, std::span<const std::string> members) {
  auto idx = resolve(poset, members);
  return is_antichain(transitive_closure(poset), idx);
}

bool is_graded(const Poset& poset, const RankAssignment& ranks) {
  for (const auto& [lo, hi] : poset.covers()) {
    if (ranks.rank[hi] != ranks.rank[lo] + 1) return false;
  }
  return true;
}

bool is_graded(const Poset& poset) { return is_graded(poset, rank_function(poset)); }

bool is_log_concave(const LayerProfile& profile) {
  if (!profile.is_valid()) {
    throw std::invalid_argument("is_log_concave: invalid layer profile");
  }
  int begin = profile.support_begin();
  int end = profile.support_end();
  for (int k = begin + 1; k + 1 < end; ++k) {
    if (profile.sizes[k] * profile.sizes[k] <
        profile.sizes[k + 1] * profile.sizes[k - 1]) {
      return false;
    }
  }
  return true;
}

LayerProfile ap_subprofile(const LayerProfile& profile, int start, int stride) {
  if (stride < 1) throw std::invalid_argument("ap_subprofile: stride must be >= 1");
  if (!profile.is_valid()) {
    throw std::invalid_argument("ap_subprofile: invalid layer profile");
  }
  int begin = profile.support_begin();
  int end = profile.support_end();
  if (start < begin || start >= end) {
    throw std::invalid_argument("ap_subprofile: start outside the support");
  }
  LayerProfile out;
  for (int k = start; k < end; k += stride) out.sizes.push_back(profile.sizes[k]);
  return out;
}

}  // namespace posetflow
