#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "posetflow/builders.hpp"
#include "posetflow/errors.hpp"
#include "posetflow/flow.hpp"
#include "posetflow/oracle.hpp"
#include "posetflow/theorems.hpp"

using namespace posetflow;
using posetflow::testing::profile_of;

TEST_CASE("convolution of layer profiles") {
  CHECK(convolution(profile_of({1, 2, 1}), profile_of({1, 1})) == profile_of({1, 3, 3, 1}));
  CHECK(convolution(profile_of({3, 5, 2}), profile_of({1})) == profile_of({3, 5, 2}));
  CHECK(convolution(profile_of({1, 2, 1}), profile_of({1, 2, 1})) ==
        profile_of({1, 4, 6, 4, 1}));
}

TEST_CASE("harper block inequality on the worked example") {
  auto p = profile_of({1, 2, 1});
  auto q = profile_of({1, 1});
  auto report = harper_block_inequality(p, q);
  CHECK(report.holds);
  CHECK(report.checked > 0);

  // (k, l, t) = (1, 0, 1): the displayed bound reads 2/3 <= 3/3.
  BigInt lhs_num = 2, r1 = 3, rhs_num = 3, r2 = 3;
  CHECK(lhs_num * r2 <= rhs_num * r1);

  // t spanning the whole diagonal from (2, 0): both capacities are 1.
  // LHS sum = p2 q0 + p1 q1 = r_2, upper sum = p2 q1 = r_3.
  BigInt full_low = 1 * 1 + 2 * 1;
  BigInt full_up = 1 * 1;
  CHECK(full_low == 3);
  CHECK(full_up == 1);
  CHECK(full_low * full_up == full_up * full_low);
}

TEST_CASE("harper block inequality rejects non-log-concave inputs") {
  CHECK_THROWS_AS(harper_block_inequality(profile_of({1, 1, 2}), profile_of({1})),
                  LogConcavityError);
}

TEST_CASE("harper block inequality over seeded random pairs") {
  auto pairs = random_profile_pairs(50, 0);
  for (const auto& [p, q] : pairs) {
    auto report = harper_block_inequality(p, q);
    CHECK(report.holds);
  }
}

TEST_CASE("range identity holds with exact operands") {
  auto p = profile_of({1, 2, 1});
  auto q = profile_of({1, 1});

  auto r1 = harper_range_identity(p, q, 1, 0, 1);
  CHECK(r1.equal);
  CHECK(r1.lhs == 6);  // (p1 q0) * (p2 q0 + p1 q1) = 2 * 3
  CHECK(r1.rhs == 6);

  auto r2 = harper_range_identity(p, q, 1, 0, 2);
  CHECK(r2.equal);
  CHECK(r2.lhs == 9);  // (p1 q0 + p0 q1) * (p2 q0 + p1 q1) = 3 * 3
  CHECK(r2.rhs == 9);

  // Zero-padded out-of-range indices keep both sides equal.
  auto r3 = harper_range_identity(p, q, 0, 0, 2);
  CHECK(r3.equal);
}

TEST_CASE("range identity holds on random inputs and indices") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_log_concave_profile(rng, 6, 1000);
    auto q = random_log_concave_profile(rng, 6, 1000);
    int k = static_cast<int>(rng.below(8));
    int l = static_cast<int>(rng.below(8));
    int t = 1 + static_cast<int>(rng.below(5));
    CHECK(harper_range_identity(p, q, k, l, t).equal);
  }
}

TEST_CASE("convolutions of log-concave profiles are log-concave") {
  CHECK(product_log_concavity_check(profile_of({1, 2, 1}), profile_of({1, 2, 1})).holds);
  CHECK(is_log_concave(convolution(profile_of({1, 2, 1}), profile_of({1, 2, 1}))));

  auto p = profile_of({2, 6, 9, 9, 6});
  CHECK(product_log_concavity_check(p, profile_of({1})).holds);

  for (const auto& [a, b] : random_profile_pairs(50, 1)) {
    CHECK(product_log_concavity_check(a, b).holds);
    CHECK(is_log_concave(convolution(a, b)));
  }
  CHECK_THROWS_AS(product_log_concavity_check(profile_of({1, 1, 2}), profile_of({1})),
                  LogConcavityError);
}

TEST_CASE("rearrangement probe on the worked example") {
  auto probe = log_concavity_rearrangement_probe(profile_of({1, 2, 1}), profile_of({1, 1}), 1);
  CHECK(probe.difference == 6);  // r_1^2 - r_2 r_0 = 9 - 3
  CHECK(probe.quadratic_form_sum == 12);
  CHECK(probe.quadratic_form_sum >= 0);
  CHECK_FALSE(probe.equal);
}

TEST_CASE("rearrangement probe on a degenerate factor") {
  auto probe = log_concavity_rearrangement_probe(profile_of({1, 2, 1}), profile_of({1}), 1);
  CHECK(probe.difference == 4 - 1);
  CHECK(probe.quadratic_form_sum == 2 * probe.difference);
}

TEST_CASE("rearrangement probe sign and doubling across random inputs") {
  // The quadratic form double-counts the symmetric (i, j) pairs, so it
  // always evaluates to twice the direct difference; for log-concave
  // inputs both are non-negative.
  for (const auto& [p, q] : random_profile_pairs(40, 2)) {
    int len = static_cast<int>(convolution(p, q).sizes.size());
    for (int k = 0; k < len; ++k) {
      auto probe = log_concavity_rearrangement_probe(p, q, k);
      CHECK(probe.quadratic_form_sum >= 0);
      CHECK(probe.quadratic_form_sum == 2 * probe.difference);
    }
  }
}

TEST_CASE("footnote collision counts") {
  CHECK_THROWS_AS(footnote_collision_witness(0), std::invalid_argument);
  CHECK(footnote_collision_witness(1).duplicates.empty());
  CHECK(footnote_collision_witness(1).image_collision_pairs_total == 0);

  auto t2 = footnote_collision_witness(2);
  REQUIRE(t2.duplicates.size() == 1);
  CHECK(t2.duplicates[0].source_a == std::pair<int, int>{0, 1});
  CHECK(t2.duplicates[0].source_b == std::pair<int, int>{1, 0});
  CHECK(t2.duplicates[0].image == std::pair<int, int>{1, 0});

  CHECK(footnote_collision_witness(5).duplicates.size() == 4);
  for (int t = 2; t <= 16; ++t) {
    auto report = footnote_collision_witness(t);
    CHECK(static_cast<int>(report.duplicates.size()) == t - 1);
    // Full census of the case map: the second family (i, i+2) vs
    // (i+1, i+1) doubles the number of colliding pairs.
    CHECK(report.image_collision_pairs_total == 2 * (t - 1));
    for (const auto& c : report.duplicates) {
      CHECK(c.source_a.second == c.source_a.first + 1);
      CHECK(c.source_b.second == c.source_b.first - 1);
    }
  }
}

TEST_CASE("diagonal capacities of Hamming ball layers") {
  auto grid33 = block_grid({3, 3, 2});
  auto capacity = diagonal_capacity(grid33, 1, 1, 1);
  CHECK(capacity.numerator == 9);
  CHECK(capacity.denominator == 10);
  CHECK(capacity.value == Rational(9, 10));
  CHECK(diagonal_capacity(grid33, 1, 1, 2).value == 1);  // spans the whole diagonal

  auto grid22 = block_grid({2, 2, 1});
  CHECK(diagonal_capacity(grid22, 1, 0, 1).value == 1);  // single-block layer
  CHECK_THROWS_AS(diagonal_capacity(grid22, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("hamming capacity inequality on B_2[3,3]") {
  auto report = hamming_capacity_inequality({3, 3, 2});
  CHECK(report.holds);

  // The (i, j, t) = (1, 1, 1) instance: 9/10 against the upper diagonal
  // {B_{0,1}} (B_{1,2} is empty), which spans its whole layer.
  auto grid = block_grid({3, 3, 2});
  auto lower = diagonal_capacity(grid, 1, 1, 1);
  BigInt upper_num = grid.size_or_zero(1, 2) + grid.size_or_zero(0, 1);
  BigInt upper_den = grid.diagonal_sum(1, 2);
  CHECK(upper_num == 3);
  CHECK(upper_den == 3);
  CHECK(lower.numerator * upper_den <= upper_num * lower.denominator);
}

TEST_CASE("hamming capacity inequality sweep") {
  for (int p = 1; p <= 5; ++p) {
    for (int q = 1; q <= 5; ++q) {
      for (int rho = 0; rho <= 6; ++rho) {
        auto report = hamming_capacity_inequality({p, q, rho});
        CHECK(report.holds);
      }
    }
  }
}

TEST_CASE("block certification agrees with the capacity report") {
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= 6; ++q) {
      for (int rho = 1; rho <= 6; ++rho) {
        HammingBallParams params{p, q, rho};
        bool capacity_ok = hamming_capacity_inequality(params).holds;
        bool block_lym = lym_certify(block_poset(block_grid(params))).lym;
        CHECK(capacity_ok);
        CHECK(block_lym);
        CHECK(capacity_ok == block_lym);
      }
    }
  }
}

TEST_CASE("diagonal capacities agree with factorial-recomputed binomials") {
  // Independent binomial route: n! / (k! (n-k)!) assembled from factorials.
  auto factorial = [](int n) {
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  auto choose = [&](int n, int k) -> BigInt {
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
  };
  for (auto [p, q, rho] : {std::tuple{3, 3, 2}, {5, 4, 3}, {4, 4, 8}}) {
    HammingBallParams params{p, q, rho};
    auto grid = block_grid(params);
    for (const auto& e : grid.blocks) {
      for (int t = 1; t <= std::min(e.i, e.j) + 1; ++t) {
        auto capacity = diagonal_capacity(grid, e.i, e.j, t);
        BigInt num = 0, den = 0;
        for (int l = 0; l < t; ++l) {
          if (params.block_nonempty(e.i - l, e.j - l)) {
            num += choose(p, e.i - l) * choose(q, e.j - l);
          }
        }
        for (int l = -std::min(p - e.i, q - e.j) - rho; l <= std::min(e.i, e.j); ++l) {
          if (params.block_nonempty(e.i - l, e.j - l)) {
            den += choose(p, e.i - l) * choose(q, e.j - l);
          }
        }
        CHECK(capacity.numerator == num);
        CHECK(capacity.denominator == den);
      }
    }
  }
}

TEST_CASE("lifting the trivial ball flow") {
  HammingBallParams params{3, 4, 0};
  UnitFlow block_flow;
  block_flow.chains.push_back({{"B(0,0)"}, Rational(1)});
  auto lifted = lift_block_unit_flow(params, block_flow);
  REQUIRE(lifted.chains.size() == 1);
  CHECK(lifted.chains[0].elements == std::vector<std::string>{"{1,2,3}"});
  CHECK(verify_unit_flow(hamming_ball(params), lifted).ok);
}

TEST_CASE("lifting the B_1[2,2] block chain") {
  HammingBallParams params{2, 2, 1};
  UnitFlow block_flow;
  block_flow.chains.push_back({{"B(1,0)", "B(0,0)", "B(0,1)"}, Rational(1)});
  auto lifted = lift_block_unit_flow(params, block_flow);
  CHECK(lifted.chains.size() == 4);  // 2 starting subsets x 2 extra choices
  for (const auto& chain : lifted.chains) CHECK(chain.weight == Rational(1, 4));

  auto ball = hamming_ball(params);
  auto report = verify_unit_flow(ball, lifted);
  REQUIRE(report.ok);
  CHECK(report.marginal[ball.require("{1}")] == Rational(1, 2));
  CHECK(report.marginal[ball.require("{1,2}")] == Rational(1));
  CHECK(report.marginal[ball.require("{1,2,3}")] == Rational(1, 2));

  auto closed_form = lifted_flow_marginals(params, ball, block_flow);
  CHECK(closed_form == report.marginal);
}

TEST_CASE("lifting the cube recovers the permutation-symmetric flow") {
  for (int n = 1; n <= 4; ++n) {
    HammingBallParams params{n, 0, n};
    auto blocks = block_poset(block_grid(params));
    auto block_flow = build_unit_flow(blocks);
    auto lifted = lift_block_unit_flow(params, block_flow);
    BigInt factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    CHECK(lifted.chains.size() == static_cast<size_t>(factorial.get_ui()));
    for (const auto& chain : lifted.chains) {
      CHECK(chain.weight == make_rational(1, factorial));
      CHECK(chain.elements.size() == static_cast<size_t>(n + 1));
    }
    CHECK(verify_unit_flow(hamming_ball(params), lifted).ok);
  }
}

TEST_CASE("lift rejects bad inputs") {
  HammingBallParams params{2, 2, 1};
  UnitFlow wrong;
  wrong.chains.push_back({{"B(1,0)", "B(0,0)"}, Rational(1)});  // marginals off
  CHECK_THROWS_AS(lift_block_unit_flow(params, wrong), std::invalid_argument);

  UnitFlow good;
  good.chains.push_back({{"B(1,0)", "B(0,0)", "B(0,1)"}, Rational(1)});
  LiftOptions tiny;
  tiny.max_chains = 3;
  CHECK_THROWS_AS(lift_block_unit_flow(params, good, tiny), CapExceeded);
}

TEST_CASE("random log-concave profiles are in range, exact and reproducible") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    auto profile = random_log_concave_profile(rng);
    CHECK(profile.is_valid());
    CHECK(is_log_concave(profile));
    CHECK(profile.sizes.size() <= 8);
    for (const auto& s : profile.sizes) {
      CHECK(s >= 1);
      CHECK(s <= 1000000);
    }
  }
  SplitMix64 a(9), b(9);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(random_log_concave_profile(a).sizes == random_log_concave_profile(b).sizes);
  }
}

TEST_CASE("harper random sweep finds no violations") {
  auto summary = harper_random_sweep(100, 0);
  CHECK(summary.pairs == 100);
  CHECK(summary.capacity_violations == 0);
  CHECK(summary.logconcavity_violations == 0);
  CHECK_FALSE(summary.first_bad_pair.has_value());
}

TEST_CASE("harper conclusions hold triple-wise on random pairs") {
  // For each pair: the capacity bound, the convolution's log-concavity and
  // the certification of the product block poset, all on the same inputs.
  auto pairs = random_profile_pairs(10, 3);
  for (const auto& [p, q] : pairs) {
    bool capacity = harper_block_inequality(p, q).holds;
    bool logconcave = product_log_concavity_check(p, q).holds;
    auto grid = product_block_poset(p, q);
    bool certified = lym_certify(grid).lym;
    CHECK(capacity);
    CHECK(logconcave);
    CHECK(certified);
    CHECK(width(grid) == largest_layer(rank_function(grid)));
  }
}
