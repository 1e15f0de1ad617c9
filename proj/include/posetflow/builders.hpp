#pragma once

#include <string>
#include <vector>

#include "posetflow/poset.hpp"

namespace posetflow {

// Builders fail fast with CapExceeded before allocating anything large.
struct SizeCaps {
  long long max_elements = 1LL << 20;
  int max_boolean_n = 20;
};

// Subsets of {1..n} ordered by inclusion; covers are single-element
// insertions. Canonical ids render subsets as "{1,2,3}" ("{}" when empty).
Poset boolean_lattice(int n, const SizeCaps& caps = {});

// Total order e000 < e001 < ... / n pairwise-incomparable elements.
// Both use the same id scheme, so chain_poset(1) == antichain_poset(1).
Poset chain_poset(int n);
Poset antichain_poset(int n);

// Componentwise order on pairs "(idP|idQ)"; pair weight is the product of
// the factor weights.
Poset product(const Poset& p, const Poset& q, const SizeCaps& caps = {});

// Hamming ball B_rho[p, q]: subsets of [p+q] within Hamming distance rho of
// the center {1..p}. Block (i, j) holds the subsets obtained by removing i
// elements of {1..p} and adding j elements of {p+1..p+q}; it is empty
// whenever i + j > rho, i < 0, j < 0, i > p or j > q.
struct HammingBallParams {
  int p = 0;
  int q = 0;
  int rho = 0;

  bool block_nonempty(int i, int j) const {
    return i >= 0 && j >= 0 && i <= p && j <= q && i + j <= rho;
  }
  // Unique minimal block is (min(p, rho), 0).
  int min_p_rho() const { return p < rho ? p : rho; }
  int block_rank(int i, int j) const { return j + min_p_rho() - i; }
};

Poset hamming_ball(const HammingBallParams& params, const SizeCaps& caps = {});

struct BlockGrid {
  struct Entry {
    int i = 0;
    int j = 0;
    BigInt size;  // C(p, i) * C(q, j)
    int rank = 0;
  };

  HammingBallParams params;
  std::vector<Entry> blocks;  // nonempty blocks sorted by (i, j)

  const Entry* find(int i, int j) const;
  BigInt size_or_zero(int i, int j) const;
  int max_rank() const;
  // Sum of block sizes along the diagonal j - i = const through (i, j);
  // equals the weighted size of the layer containing block (i, j).
  BigInt diagonal_sum(int i, int j) const;
};

BlockGrid block_grid(const HammingBallParams& params);

// One element "B(i,j)" per nonempty block, weighted by the block size;
// covers (i,j) -> (i-1,j) and (i,j) -> (i,j+1). Its weighted profile equals
// the profile of hamming_ball(params).
Poset block_poset(const BlockGrid& grid);

// Grid poset with one element "B(k,l)" per pair of positive profile
// entries, weight p_k * q_l, covers towards (k+1, l) and (k, l+1). Its
// weighted profile is the convolution of the inputs.
Poset product_block_poset(const LayerProfile& pprof, const LayerProfile& qprof);

// Convex closure of the Hamming ball: all blocks with i <= rho and
// j <= rho, dropping the i + j <= rho constraint. Contains
// hamming_ball(params) as an induced subposet.
Poset convex_closure_grid(const HammingBallParams& params, const SizeCaps& caps = {});

// Canonical id of the subset ([p] minus removed) plus extras, where
// removed/extras are bitmasks over {1..p} / {p+1..p+q}.
std::string hamming_subset_id(int p, int q, unsigned removed_mask, unsigned extras_mask);
std::string block_id(int i, int j);

}  // namespace posetflow
