#include "posetflow/oracle.hpp"

#include <bit>
#include <string>

#include "posetflow/errors.hpp"
#include "posetflow/flow.hpp"

namespace posetflow {

namespace {

struct BronKerbosch {
  const std::vector<uint64_t>& adj;  // incomparability adjacency
  const std::function<void(std::span<const int>)>& yield;
  long long limit;
  long long emitted = 0;

  void run(uint64_t r, uint64_t p, uint64_t x) {
    if (p == 0 && x == 0) {
      if (++emitted > limit) {
        throw BudgetExceeded("antichain enumeration exceeded the budget of " +
                             std::to_string(limit));
      }
      std::vector<int> members;
      for (uint64_t rest = r; rest;) {
        int v = std::countr_zero(rest);
        members.push_back(v);
        rest &= rest - 1;
      }
      yield(members);
      return;
    }
    // Pivot on the candidate covering the most of P.
    int pivot = -1, best = -1;
    for (uint64_t rest = p | x; rest;) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      int d = std::popcount(p & adj[u]);
      if (d > best) {
        best = d;
        pivot = u;
      }
    }
    uint64_t candidates = p & ~adj[pivot];
    while (candidates) {
      int v = std::countr_zero(candidates);
      uint64_t bit = uint64_t{1} << v;
      candidates &= candidates - 1;
      run(r | bit, p & adj[v], x & adj[v]);
      p &= ~bit;
      x |= bit;
    }
  }
};

std::vector<uint64_t> incomparability(const Poset& poset, const EnumerationBudget& budget) {
  int n = poset.size();
  if (n > budget.max_elements || n > 64) {
    throw BudgetExceeded("oracle budget allows " + std::to_string(budget.max_elements) +
                         " elements, poset has " + std::to_string(n));
  }
  auto closure = transitive_closure(poset);
  std::vector<uint64_t> adj(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && !closure.comparable(a, b)) adj[a] |= uint64_t{1} << b;
    }
  }
  return adj;
}

}  // namespace

void enumerate_maximal_antichains(const Poset& poset, const EnumerationBudget& budget,
                                  const std::function<void(std::span<const int>)>& yield) {
  int n = poset.size();
  if (n == 0) return;
  auto adj = incomparability(poset, budget);
  uint64_t all = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
  BronKerbosch bk{adj, yield, budget.max_antichains};
  bk.run(0, all, 0);
}

std::vector<std::vector<int>> all_maximal_antichains(const Poset& poset,
                                                     const EnumerationBudget& budget) {
  std::vector<std::vector<int>> out;
  enumerate_maximal_antichains(poset, budget, [&](std::span<const int> members) {
    out.emplace_back(members.begin(), members.end());
  });
  return out;
}

BruteForceResult brute_max_weight_antichain(const Poset& poset,
                                            const std::vector<Rational>& weights,
                                            const EnumerationBudget& budget) {
  if (static_cast<int>(weights.size()) != poset.size()) {
    throw std::invalid_argument("brute_max_weight_antichain: one weight per element");
  }
  BruteForceResult best;
  best.value = 0;
  enumerate_maximal_antichains(poset, budget, [&](std::span<const int> members) {
    Rational total = 0;
    for (int i : members) total += weights[i];
    if (total > best.value) {
      best.value = total;
      best.antichain.assign(members.begin(), members.end());
    }
  });
  return best;
}

BigInt brute_width(const Poset& poset, const EnumerationBudget& budget) {
  std::vector<Rational> weights;
  weights.reserve(poset.size());
  for (const auto& e : poset.elements()) weights.emplace_back(e.weight);
  auto best = brute_max_weight_antichain(poset, weights, budget);
  return BigInt(best.value.get_num());
}

Rational brute_max_lym_sum(const Poset& poset, const EnumerationBudget& budget) {
  if (poset.size() == 0) return Rational(0);
  return brute_max_weight_antichain(poset, lym_weights(poset), budget).value;
}

}  // namespace posetflow
