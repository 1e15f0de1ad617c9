#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "posetflow/builders.hpp"
#include "posetflow/errors.hpp"
#include "posetflow/oracle.hpp"

using namespace posetflow;

TEST_CASE("maximal antichains of a chain are the singletons") {
  auto chain = chain_poset(3);
  auto antichains = all_maximal_antichains(chain);
  REQUIRE(antichains.size() == 3);
  for (const auto& a : antichains) CHECK(a.size() == 1);
}

TEST_CASE("an antichain poset has one maximal antichain") {
  auto anti = antichain_poset(3);
  auto antichains = all_maximal_antichains(anti);
  REQUIRE(antichains.size() == 1);
  CHECK(antichains[0].size() == 3);
}

TEST_CASE("cube maximal antichains include both middle layers") {
  auto b3 = boolean_lattice(3);
  auto ranks = rank_function(b3);
  std::set<std::set<int>> found;
  for (const auto& a : all_maximal_antichains(b3)) {
    found.insert(std::set<int>(a.begin(), a.end()));
  }
  CHECK(found.count(std::set<int>(ranks.layers[1].begin(), ranks.layers[1].end())));
  CHECK(found.count(std::set<int>(ranks.layers[2].begin(), ranks.layers[2].end())));
}

TEST_CASE("every yielded set is an antichain and maximal") {
  auto ball = hamming_ball({2, 2, 2});
  auto closure = transitive_closure(ball);
  int seen = 0;
  enumerate_maximal_antichains(ball, {}, [&](std::span<const int> members) {
    ++seen;
    CHECK(is_antichain(closure, members));
    // Maximality: every element outside is comparable to some member.
    for (int other = 0; other < ball.size(); ++other) {
      if (std::find(members.begin(), members.end(), other) != members.end()) continue;
      bool comparable = false;
      for (int m : members) comparable = comparable || closure.comparable(other, m);
      CHECK(comparable);
    }
  });
  CHECK(seen > 0);
}

TEST_CASE("budgets fail loudly") {
  EnumerationBudget tight;
  tight.max_antichains = 2;
  CHECK_THROWS_AS(all_maximal_antichains(chain_poset(3), tight), BudgetExceeded);

  EnumerationBudget small;
  small.max_elements = 4;
  CHECK_THROWS_AS(all_maximal_antichains(boolean_lattice(3), small), BudgetExceeded);
}

TEST_CASE("brute width and LYM sums") {
  CHECK(brute_width(boolean_lattice(4)) == 6);

  auto ball = hamming_ball({2, 2, 1});
  CHECK(brute_width(ball) == 2);
  CHECK(brute_max_lym_sum(ball) == 1);

  CHECK(brute_max_lym_sum(posetflow::testing::violation_poset()) == Rational(7, 6));
}

TEST_CASE("weighted brute width counts multiplicities") {
  auto blocks = block_poset(block_grid({2, 2, 1}));
  CHECK(brute_width(blocks) == 2);
  Poset heavy({{"a", 5}, {"b", 2}}, {{"a", "b"}});
  CHECK(brute_width(heavy) == 5);
}
