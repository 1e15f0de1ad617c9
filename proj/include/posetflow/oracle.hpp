#pragma once

#include <functional>
#include <span>
#include <vector>

#include "posetflow/poset.hpp"

namespace posetflow {

// The oracle is ground truth for small instances: budgets fail loudly
// (BudgetExceeded), never by silent truncation.
struct EnumerationBudget {
  int max_elements = 24;
  long long max_antichains = 10'000'000;
};

// Yields every maximal antichain exactly once (indices ascending), via
// maximal-independent-set enumeration on the comparability graph.
// Maximality means no element can be added.
void enumerate_maximal_antichains(const Poset& poset, const EnumerationBudget& budget,
                                  const std::function<void(std::span<const int>)>& yield);

std::vector<std::vector<int>> all_maximal_antichains(const Poset& poset,
                                                     const EnumerationBudget& budget = {});

struct BruteForceResult {
  Rational value;
  std::vector<int> antichain;
};

// Exhaustive maximum over maximal antichains; for positive weights this
// equals the maximum over all antichains.
BruteForceResult brute_max_weight_antichain(const Poset& poset,
                                            const std::vector<Rational>& weights,
                                            const EnumerationBudget& budget = {});

BigInt brute_width(const Poset& poset, const EnumerationBudget& budget = {});
Rational brute_max_lym_sum(const Poset& poset, const EnumerationBudget& budget = {});

}  // namespace posetflow
