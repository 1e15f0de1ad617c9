#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "posetflow/builders.hpp"
#include "posetflow/flow.hpp"
#include "posetflow/numeric.hpp"

namespace posetflow {

// r_m = sum over k+l = m of p_k * q_l.
LayerProfile convolution(const LayerProfile& pprof, const LayerProfile& qprof);

struct InequalityViolation {
  std::vector<long long> indices;
  Rational lhs;
  Rational rhs;
};

struct InequalityReport {
  bool holds = true;
  long long checked = 0;
  std::optional<InequalityViolation> violation;  // first in canonical index order
};

// The partial-diagonal capacity bound behind the product-poset theorem:
// for all (k, l) with k+l < h+mu and all t >= 1 up to the diagonal length,
//   (sum_{i<t} p_{k-i} q_{l+i}) * r_{k+l+1} <= (sum_{i<=t} p_{k+1-i} q_{l+i}) * r_{k+l},
// with out-of-range entries zero. Inputs must be log-concave
// (LogConcavityError otherwise). Indices are relative to the supports.
InequalityReport harper_block_inequality(const LayerProfile& pprof, const LayerProfile& qprof,
                                         Parallelism mode = Parallelism::serial);

// Range-restricted identity: with both factors truncated to the window,
//   (sum_{i=0}^{t-1} p_{k-i} q_{l+i}) (sum_{j=0}^{t} p_{k+1-j} q_{l+j})
// equals the same product with the sums swapped. Holds identically; the
// checker evaluates both sides exactly.
struct RangeIdentityResult {
  BigInt lhs;
  BigInt rhs;
  bool equal = false;
};
RangeIdentityResult harper_range_identity(const LayerProfile& pprof, const LayerProfile& qprof,
                                          int k, int l, int t);

// Log-concavity of the convolution, checked in the direct cross-multiplied
// form r_k^2 >= r_{k+1} * r_{k-1} at every interior index.
InequalityReport product_log_concavity_check(const LayerProfile& pprof,
                                             const LayerProfile& qprof);

// Both routes to the convolution log-concavity condition at index k: the
// direct difference r_k^2 - r_{k+1} r_{k-1} and the rearranged quadratic
// form sum_{i,j} (p_{k-i} p_{k-j} - p_{k+1-i} p_{k-1-j})(q_i q_j - q_{i-1} q_{j+1}).
// The two agree up to a factor of two (the sum double-counts symmetric
// pairs); `equal` records plain equality, which holds only at zero.
struct RearrangementProbe {
  BigInt difference;
  BigInt quadratic_form_sum;
  bool equal = false;
};
RearrangementProbe log_concavity_rearrangement_probe(const LayerProfile& pprof,
                                                     const LayerProfile& qprof, int k);

// Case map (i,j) -> (i,j) if j <= i, else (i+1, j-1), over the domain
// i in [0, t-1], j in [0, t]. `duplicates` are the collisions between the
// bound contributions for j = i-1 and for i = j-1, i.e. the pairs
// ((i, i+1), (i+1, i)) for i = 0..t-2; there are exactly t-1 of them.
// The full census is larger: sources (i, i+2) and (i+1, i+1) also share an
// image, so `image_collision_pairs_total` counts 2(t-1) for t >= 2.
struct FootnoteCollision {
  std::pair<int, int> source_a;
  std::pair<int, int> source_b;
  std::pair<int, int> image;
};
struct FootnoteReport {
  int t = 0;
  std::vector<FootnoteCollision> duplicates;
  std::vector<FootnoteCollision> all_collisions;
  long long image_collision_pairs_total = 0;
};
FootnoteReport footnote_collision_witness(int t);

// capacity(B_{i,j} u B_{i-1,j-1} u ... u B_{i-(t-1),j-(t-1)}): the partial
// diagonal sum over the full diagonal (= layer) sum through block (i, j).
struct DiagonalCapacity {
  BigInt numerator;
  BigInt denominator;
  Rational value;
};
DiagonalCapacity diagonal_capacity(const BlockGrid& grid, int i, int j, int t);

// For every nonempty block below the top layer and every t up to the
// diagonal length: capacity(i, j, t) <= capacity on the upper diagonal
// starting at (i, j+1) with span t+1, by exact cross-multiplication.
// Also verifies the two single-step ratio monotonicity facts
// |B_{i,j+1}|/|B_{i,j}| = (q-j)/(j+1) decreasing in j (violation indices
// [-1, j, 0]) and |B_{i-1,j}|/|B_{i,j}| = i/(p-i+1) increasing in i
// (violation indices [-2, i, 0]).
InequalityReport hamming_capacity_inequality(const HammingBallParams& params,
                                             Parallelism mode = Parallelism::serial);

struct LiftOptions {
  long long max_chains = 100'000;
};

// Lifts a verified unit flow on the block poset to the element level:
// conditional on a block chain, the element chain starts uniformly in the
// first block and transitions uniformly over the covers inside the next
// block. Chains are materialized with exact rational weights (capped by
// max_chains) and sorted by element sequence.
UnitFlow lift_block_unit_flow(const HammingBallParams& params, const UnitFlow& block_flow,
                              const LiftOptions& options = {});

// Closed-form marginals of the lifted flow (w/o materialization): an
// element of block B gets (block marginal of B) / |B|. Aligned with the
// element indices of `ball`.
std::vector<Rational> lifted_flow_marginals(const HammingBallParams& params, const Poset& ball,
                                            const UnitFlow& block_flow);

// Seeded generator of exactly log-concave profiles: draws a non-increasing
// sequence of rational ratios, accumulates their products and clears
// denominators, so log-concavity holds by construction (and is verified).
LayerProfile random_log_concave_profile(SplitMix64& rng, int max_len = 8,
                                        long long max_entry = 1'000'000);

std::vector<std::pair<LayerProfile, LayerProfile>> random_profile_pairs(int count, uint64_t seed,
                                                                        int max_len = 8,
                                                                        long long max_entry =
                                                                            1'000'000);

struct HarperSweepSummary {
  int pairs = 0;
  int capacity_violations = 0;
  int logconcavity_violations = 0;
  std::optional<int> first_bad_pair;
};

// Runs harper_block_inequality and product_log_concavity_check over seeded
// random log-concave pairs; the parallel path partitions pairs across
// threads with deterministic inputs and merged verdicts.
HarperSweepSummary harper_random_sweep(int count, uint64_t seed,
                                       Parallelism mode = Parallelism::parallel);

}  // namespace posetflow
