#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "posetflow/builders.hpp"
#include "posetflow/errors.hpp"
#include "posetflow/poset.hpp"
#include "posetflow/theorems.hpp"

using namespace posetflow;
using posetflow::testing::profile_of;

TEST_CASE("boolean lattice shapes") {
  auto b0 = boolean_lattice(0);
  CHECK(b0.size() == 1);
  CHECK(b0.covers().empty());

  auto b3 = boolean_lattice(3);
  CHECK(b3.size() == 8);
  CHECK(b3.covers().size() == 12);

  CHECK(rank_function(boolean_lattice(4)).profile == profile_of({1, 4, 6, 4, 1}));
  CHECK(validate(boolean_lattice(4)).ok);
  CHECK_THROWS_AS(boolean_lattice(21), CapExceeded);
}

TEST_CASE("chain and antichain fixtures") {
  auto chain = chain_poset(3);
  CHECK(chain.size() == 3);
  CHECK(chain.covers().size() == 2);
  auto anti = antichain_poset(5);
  CHECK(anti.size() == 5);
  CHECK(anti.covers().empty());

  auto c1 = chain_poset(1);
  auto a1 = antichain_poset(1);
  CHECK(c1.id(0) == a1.id(0));
  CHECK(c1.covers() == a1.covers());
}

TEST_CASE("product posets convolve profiles") {
  auto c2 = chain_poset(2);
  CHECK(rank_function(product(c2, c2)).profile == profile_of({1, 2, 1}));

  auto b2 = boolean_lattice(2);
  auto prod = product(b2, b2);
  CHECK(prod.size() == 16);
  CHECK(rank_function(prod).profile == profile_of({1, 4, 6, 4, 1}));
  CHECK(validate(prod).ok);

  auto single = chain_poset(1);
  auto same = product(b2, single);
  CHECK(same.size() == b2.size());
  CHECK(same.covers().size() == b2.covers().size());
  CHECK(rank_function(same).profile == rank_function(b2).profile);
}

TEST_CASE("product profile is the convolution of graded factor profiles") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = posetflow::testing::random_graded_poset(rng, 12);
    auto q = posetflow::testing::random_graded_poset(rng, 12);
    auto expected = convolution(rank_function(p).profile, rank_function(q).profile);
    CHECK(rank_function(product(p, q)).profile == expected);
  }
}

TEST_CASE("Hamming ball B_1[2,2]") {
  auto ball = hamming_ball({2, 2, 1});
  REQUIRE(ball.size() == 5);
  std::set<std::string> ids;
  for (const auto& e : ball.elements()) ids.insert(e.id);
  CHECK(ids == std::set<std::string>{"{1}", "{2}", "{1,2}", "{1,2,3}", "{1,2,4}"});
  CHECK(rank_function(ball).profile == profile_of({2, 1, 2}));
  CHECK(validate(ball).ok);
}

TEST_CASE("degenerate and larger Hamming balls") {
  CHECK(hamming_ball({4, 7, 0}).size() == 1);
  auto ball = hamming_ball({3, 3, 2});
  CHECK(ball.size() == 22);
  CHECK(rank_function(ball).profile == profile_of({3, 3, 10, 3, 3}));
  CHECK(validate(ball).ok);
}

TEST_CASE("boolean lattice is the ball with q = 0 and full radius") {
  for (int n = 0; n <= 5; ++n) {
    auto ball = hamming_ball({n, 0, n});
    auto lattice = boolean_lattice(n);
    CHECK(ball.size() == lattice.size());
    CHECK(rank_function(ball).profile == rank_function(lattice).profile);
  }
}

TEST_CASE("block grid of B_1[2,2]") {
  auto grid = block_grid({2, 2, 1});
  REQUIRE(grid.blocks.size() == 3);
  CHECK(grid.size_or_zero(0, 0) == 1);
  CHECK(grid.size_or_zero(1, 0) == 2);
  CHECK(grid.size_or_zero(0, 1) == 2);
  CHECK(grid.size_or_zero(1, 1) == 0);  // outside the radius
  CHECK(grid.find(1, 0)->rank == 0);    // minimal block (min(p, rho), 0)
}

TEST_CASE("block grid of B_2[3,3]") {
  auto grid = block_grid({3, 3, 2});
  CHECK(grid.find(1, 1)->rank == 2);
  CHECK(grid.find(1, 1)->size == 9);
  CHECK(grid.find(2, 0)->rank == 0);
}

TEST_CASE("block poset profile equals the ball profile") {
  for (int p = 0; p <= 5; ++p) {
    for (int q = 0; q <= 5; ++q) {
      for (int rho = 0; rho <= 6; ++rho) {
        HammingBallParams params{p, q, rho};
        if (binomial(p + q, (p + q) / 2) * (rho + 1) > 4000) continue;
        auto ball = hamming_ball(params, {1 << 14, 20});
        auto blocks = block_poset(block_grid(params));
        CHECK(rank_function(blocks).profile == rank_function(ball).profile);
        CHECK(validate(blocks).ok);
      }
    }
  }
}

TEST_CASE("product block poset convolves profiles") {
  auto grid = product_block_poset(profile_of({1, 2, 1}), profile_of({1, 1}));
  CHECK(rank_function(grid).profile == profile_of({1, 3, 3, 1}));

  auto single = product_block_poset(profile_of({1}), profile_of({3, 5, 2}));
  CHECK(rank_function(single).profile == profile_of({3, 5, 2}));

  auto square = product_block_poset(profile_of({1, 2, 1}), profile_of({1, 2, 1}));
  CHECK(rank_function(square).profile == profile_of({1, 4, 6, 4, 1}));
  CHECK(validate(square).ok);
}

TEST_CASE("convex closure grids") {
  CHECK(convex_closure_grid({2, 2, 0}).size() == 1);

  auto grid = convex_closure_grid({2, 2, 1});
  CHECK(grid.size() == 9);  // blocks (0,0), (1,0), (0,1), (1,1)

  // With p = q = rho = 2 every block is allowed: the full 16-element grid.
  auto full = convex_closure_grid({2, 2, 2});
  CHECK(full.size() == 16);
  CHECK(validate(full).ok);
}

TEST_CASE("convex closure contains the ball as an induced subposet") {
  HammingBallParams params{3, 2, 2};
  auto ball = hamming_ball(params);
  auto closure = convex_closure_grid(params);
  for (const auto& e : ball.elements()) {
    CHECK(closure.index_of(e.id) >= 0);
  }
  // Covers of the closure restricted to ball elements are exactly the
  // ball's covers.
  std::set<std::pair<std::string, std::string>> ball_covers, restricted;
  for (const auto& [lo, hi] : ball.covers()) ball_covers.insert({ball.id(lo), ball.id(hi)});
  for (const auto& [lo, hi] : closure.covers()) {
    if (ball.index_of(closure.id(lo)) >= 0 && ball.index_of(closure.id(hi)) >= 0) {
      restricted.insert({closure.id(lo), closure.id(hi)});
    }
  }
  CHECK(ball_covers == restricted);
}

TEST_CASE("builders fail fast on caps") {
  SizeCaps tiny;
  tiny.max_elements = 10;
  CHECK_THROWS_AS(hamming_ball({4, 4, 8}, tiny), CapExceeded);
  CHECK_THROWS_AS(product(boolean_lattice(3), boolean_lattice(3), tiny), CapExceeded);
}
