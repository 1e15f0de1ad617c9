#include "posetflow/builders.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "posetflow/errors.hpp"

namespace posetflow {

namespace {

// Collects elements and covers by key, then emits a Poset with ids sorted
// lexicographically and covers sorted by index pair.
class PosetAssembler {
 public:
  int add(std::string id, BigInt weight = 1) {
    elements_.push_back({std::move(id), std::move(weight)});
    return static_cast<int>(elements_.size()) - 1;
  }

  void cover(int lo, int hi) { covers_.emplace_back(lo, hi); }

  Poset build() {
    std::vector<int> order(elements_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return elements_[a].id < elements_[b].id;
    });
    std::vector<int> pos(order.size());
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

    std::vector<Poset::Element> sorted;
    sorted.reserve(elements_.size());
    for (int i : order) sorted.push_back(std::move(elements_[i]));
    std::vector<std::pair<int, int>> covers;
    covers.reserve(covers_.size());
    for (const auto& [lo, hi] : covers_) covers.emplace_back(pos[lo], pos[hi]);
    std::sort(covers.begin(), covers.end());
    return Poset::from_indexed(std::move(sorted), std::move(covers));
  }

 private:
  std::vector<Poset::Element> elements_;
  std::vector<std::pair<int, int>> covers_;
};

std::string padded_index(int i, int width) {
  std::string s = std::to_string(i);
  if (static_cast<int>(s.size()) < width) {
    s.insert(s.begin(), width - s.size(), '0');
  }
  return s;
}

void check_cap(long long count, const SizeCaps& caps, const char* what) {
  if (count > caps.max_elements) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(count) +
                      " elements exceeds cap " + std::to_string(caps.max_elements));
  }
}

std::string subset_id_from_sorted(const std::vector<int>& members) {
  std::string id = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) id += ",";
    id += std::to_string(members[i]);
  }
  id += "}";
  return id;
}

}  // namespace

std::string hamming_subset_id(int p, int q, unsigned removed_mask, unsigned extras_mask) {
  std::vector<int> members;
  for (int a = 0; a < p; ++a) {
    if (!(removed_mask >> a & 1u)) members.push_back(a + 1);
  }
  for (int b = 0; b < q; ++b) {
    if (extras_mask >> b & 1u) members.push_back(p + b + 1);
  }
  return subset_id_from_sorted(members);
}

std::string block_id(int i, int j) {
  return "B(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Poset boolean_lattice(int n, const SizeCaps& caps) {
  if (n < 0) throw std::invalid_argument("boolean_lattice: n must be >= 0");
  if (n > caps.max_boolean_n) {
    throw CapExceeded("boolean_lattice: n=" + std::to_string(n) + " exceeds cap " +
                      std::to_string(caps.max_boolean_n));
  }
  check_cap(1LL << n, caps, "boolean_lattice");

  PosetAssembler out;
  std::vector<int> handle(size_t{1} << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int a = 0; a < n; ++a) {
      if (mask >> a & 1u) members.push_back(a + 1);
    }
    handle[mask] = out.add(subset_id_from_sorted(members));
  }
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    for (int a = 0; a < n; ++a) {
      if (!(mask >> a & 1u)) out.cover(handle[mask], handle[mask | (1u << a)]);
    }
  }
  return out.build();
}

Poset chain_poset(int n) {
  if (n < 1) throw std::invalid_argument("chain_poset: n must be >= 1");
  int width = static_cast<int>(std::to_string(n - 1).size());
  PosetAssembler out;
  std::vector<int> handle(n);
  for (int i = 0; i < n; ++i) handle[i] = out.add("e" + padded_index(i, width));
  for (int i = 0; i + 1 < n; ++i) out.cover(handle[i], handle[i + 1]);
  return out.build();
}

Poset antichain_poset(int n) {
  if (n < 1) throw std::invalid_argument("antichain_poset: n must be >= 1");
  int width = static_cast<int>(std::to_string(n - 1).size());
  PosetAssembler out;
  for (int i = 0; i < n; ++i) out.add("e" + padded_index(i, width));
  return out.build();
}

Poset product(const Poset& p, const Poset& q, const SizeCaps& caps) {
  check_cap(static_cast<long long>(p.size()) * q.size(), caps, "product");
  PosetAssembler out;
  std::vector<int> handle(static_cast<size_t>(p.size()) * q.size());
  auto at = [&](int a, int b) -> int& { return handle[static_cast<size_t>(a) * q.size() + b]; };
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < q.size(); ++b) {
      at(a, b) = out.add("(" + p.id(a) + "|" + q.id(b) + ")", p.weight(a) * q.weight(b));
    }
  }
  for (const auto& [lo, hi] : p.covers()) {
    for (int b = 0; b < q.size(); ++b) out.cover(at(lo, b), at(hi, b));
  }
  for (const auto& [lo, hi] : q.covers()) {
    for (int a = 0; a < p.size(); ++a) out.cover(at(a, lo), at(a, hi));
  }
  return out.build();
}

namespace {

void check_params(const HammingBallParams& params) {
  if (params.p < 0 || params.q < 0 || params.rho < 0) {
    throw std::invalid_argument("Hamming ball parameters must be non-negative");
  }
  if (params.p > 30 || params.q > 30) {
    throw CapExceeded("Hamming ball base sets larger than 30 are unsupported");
  }
}

// Visits every n-bit mask of popcount k in increasing numeric order.
template <typename Fn>
void for_each_mask(int n, int k, Fn fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(0u);
    return;
  }
  unsigned mask = (1u << k) - 1;
  unsigned limit = (n == 32) ? ~0u : (1u << n);
  while (n == 32 || mask < limit) {
    fn(mask);
    // Gosper's hack: next mask with the same popcount.
    unsigned c = mask & -mask;
    unsigned r = mask + c;
    unsigned next = (((r ^ mask) >> 2) / c) | r;
    if (next <= mask || (n < 32 && next >= limit)) break;
    mask = next;
  }
}

// Shared element-level grid builder: emits the subsets of all blocks
// accepted by `admit(i, j)`, with single-insertion covers kept inside the
// admitted region.
Poset subset_grid(const HammingBallParams& params, const SizeCaps& caps,
                  bool (*admit)(const HammingBallParams&, int, int)) {
  check_params(params);
  const int p = params.p, q = params.q;

  BigInt total = 0;
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      if (admit(params, i, j)) total += binomial(p, i) * binomial(q, j);
    }
  }
  if (total > BigInt(static_cast<long>(caps.max_elements))) {
    throw CapExceeded("subset grid: " + total.get_str() + " elements exceeds cap " +
                      std::to_string(caps.max_elements));
  }

  PosetAssembler out;
  std::map<std::pair<unsigned, unsigned>, int> handle;  // (removed, extras) -> handle
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      if (!admit(params, i, j)) continue;
      for_each_mask(p, i, [&](unsigned removed) {
        for_each_mask(q, j, [&](unsigned extras) {
          handle[{removed, extras}] = out.add(hamming_subset_id(p, q, removed, extras));
        });
      });
    }
  }
  for (const auto& [key, h] : handle) {
    auto [removed, extras] = key;
    int i = __builtin_popcount(removed);
    int j = __builtin_popcount(extras);
    // Restore one removed base element: block (i-1, j).
    if (admit(params, i - 1, j)) {
      for (int a = 0; a < p; ++a) {
        if (removed >> a & 1u) {
          out.cover(h, handle.at({removed & ~(1u << a), extras}));
        }
      }
    }
    // Add one unused extra element: block (i, j+1).
    if (admit(params, i, j + 1)) {
      for (int b = 0; b < q; ++b) {
        if (!(extras >> b & 1u)) {
          out.cover(h, handle.at({removed, extras | (1u << b)}));
        }
      }
    }
  }
  return out.build();
}

bool admit_ball(const HammingBallParams& params, int i, int j) {
  return params.block_nonempty(i, j);
}

bool admit_convex(const HammingBallParams& params, int i, int j) {
  return i >= 0 && j >= 0 && i <= params.p && j <= params.q && i <= params.rho &&
         j <= params.rho;
}

}  // namespace

Poset hamming_ball(const HammingBallParams& params, const SizeCaps& caps) {
  return subset_grid(params, caps, admit_ball);
}

Poset convex_closure_grid(const HammingBallParams& params, const SizeCaps& caps) {
  return subset_grid(params, caps, admit_convex);
}

const BlockGrid::Entry* BlockGrid::find(int i, int j) const {
  for (const auto& e : blocks) {
    if (e.i == i && e.j == j) return &e;
  }
  return nullptr;
}

BigInt BlockGrid::size_or_zero(int i, int j) const {
  const Entry* e = find(i, j);
  return e ? e->size : BigInt(0);
}

int BlockGrid::max_rank() const {
  int best = 0;
  for (const auto& e : blocks) best = std::max(best, e.rank);
  return best;
}

BigInt BlockGrid::diagonal_sum(int i, int j) const {
  BigInt total = 0;
  for (const auto& e : blocks) {
    if (e.j - e.i == j - i) total += e.size;
  }
  return total;
}

BlockGrid block_grid(const HammingBallParams& params) {
  check_params(params);
  BlockGrid grid;
  grid.params = params;
  for (int i = 0; i <= std::min(params.p, params.rho); ++i) {
    for (int j = 0; j <= std::min(params.q, params.rho); ++j) {
      if (!params.block_nonempty(i, j)) continue;
      grid.blocks.push_back(
          {i, j, binomial(params.p, i) * binomial(params.q, j), params.block_rank(i, j)});
    }
  }
  return grid;
}

Poset block_poset(const BlockGrid& grid) {
  PosetAssembler out;
  std::map<std::pair<int, int>, int> handle;
  for (const auto& e : grid.blocks) {
    handle[{e.i, e.j}] = out.add(block_id(e.i, e.j), e.size);
  }
  for (const auto& e : grid.blocks) {
    if (auto it = handle.find({e.i - 1, e.j}); it != handle.end()) {
      out.cover(handle.at({e.i, e.j}), it->second);
    }
    if (auto it = handle.find({e.i, e.j + 1}); it != handle.end()) {
      out.cover(handle.at({e.i, e.j}), it->second);
    }
  }
  return out.build();
}

Poset product_block_poset(const LayerProfile& pprof, const LayerProfile& qprof) {
  if (!pprof.is_valid() || !qprof.is_valid()) {
    throw std::invalid_argument("product_block_poset: invalid layer profile");
  }
  PosetAssembler out;
  std::map<std::pair<int, int>, int> handle;
  for (int k = pprof.support_begin(); k < pprof.support_end(); ++k) {
    for (int l = qprof.support_begin(); l < qprof.support_end(); ++l) {
      handle[{k, l}] = out.add(block_id(k, l), pprof.sizes[k] * qprof.sizes[l]);
    }
  }
  for (const auto& [key, h] : handle) {
    auto [k, l] = key;
    if (auto it = handle.find({k + 1, l}); it != handle.end()) out.cover(h, it->second);
    if (auto it = handle.find({k, l + 1}); it != handle.end()) out.cover(h, it->second);
  }
  return out.build();
}

}  // namespace posetflow
