#include "posetflow/theorems.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "posetflow/errors.hpp"

namespace posetflow {

namespace {

std::vector<BigInt> support_values(const LayerProfile& profile, const char* who) {
  if (!profile.is_valid()) {
    throw std::invalid_argument(std::string(who) + ": invalid layer profile");
  }
  return {profile.sizes.begin() + profile.support_begin(),
          profile.sizes.begin() + profile.support_end()};
}

void require_log_concave(const LayerProfile& profile, const char* who) {
  if (!is_log_concave(profile)) {
    throw LogConcavityError(std::string(who) + ": profile is not log-concave");
  }
}

BigInt at(const std::vector<BigInt>& v, long long idx) {
  if (idx < 0 || idx >= static_cast<long long>(v.size())) return 0;
  return v[static_cast<size_t>(idx)];
}

}  // namespace

LayerProfile convolution(const LayerProfile& pprof, const LayerProfile& qprof) {
  auto p = support_values(pprof, "convolution");
  auto q = support_values(qprof, "convolution");
  LayerProfile out;
  out.sizes.assign(p.size() + q.size() - 1, 0);
  for (size_t k = 0; k < p.size(); ++k) {
    for (size_t l = 0; l < q.size(); ++l) out.sizes[k + l] += p[k] * q[l];
  }
  return out;
}

InequalityReport harper_block_inequality(const LayerProfile& pprof, const LayerProfile& qprof,
                                         Parallelism mode) {
  require_log_concave(pprof, "harper_block_inequality");
  require_log_concave(qprof, "harper_block_inequality");
  auto p = support_values(pprof, "harper_block_inequality");
  auto q = support_values(qprof, "harper_block_inequality");
  const int h = static_cast<int>(p.size()) - 1;
  const int mu = static_cast<int>(q.size()) - 1;
  auto r = convolution(pprof, qprof).sizes;

  const int cells = (h + 1) * (mu + 1);
  std::vector<long long> checked(cells, 0);
  std::vector<std::optional<InequalityViolation>> violations(cells);

#pragma omp parallel for schedule(dynamic) if (mode == Parallelism::parallel)
  for (int cell = 0; cell < cells; ++cell) {
    const int k = cell / (mu + 1);
    const int l = cell % (mu + 1);
    if (k + l >= h + mu) continue;
    const int tmax = std::min(k, mu - l) + 1;
    BigInt num_low = 0;
    BigInt num_up = at(p, k + 1) * q[l];
    for (int t = 1; t <= tmax; ++t) {
      num_low += p[k - (t - 1)] * q[l + (t - 1)];
      num_up += at(p, k + 1 - t) * at(q, l + t);
      ++checked[cell];
      if (num_low * r[k + l + 1] > num_up * r[k + l]) {
        violations[cell] = InequalityViolation{{k, l, t},
                                               make_rational(num_low, r[k + l]),
                                               make_rational(num_up, r[k + l + 1])};
        break;
      }
    }
  }

  InequalityReport report;
  for (int cell = 0; cell < cells; ++cell) {
    report.checked += checked[cell];
    if (violations[cell] && report.holds) {
      report.holds = false;
      report.violation = std::move(violations[cell]);
    }
  }
  return report;
}

RangeIdentityResult harper_range_identity(const LayerProfile& pprof, const LayerProfile& qprof,
                                          int k, int l, int t) {
  if (t < 1) throw std::invalid_argument("harper_range_identity: t must be >= 1");
  auto p = support_values(pprof, "harper_range_identity");
  auto q = support_values(qprof, "harper_range_identity");
  BigInt low_narrow = 0, up_wide = 0, up_narrow = 0, low_wide = 0;
  for (int i = 0; i <= t - 1; ++i) low_narrow += at(p, k - i) * at(q, l + i);
  for (int j = 0; j <= t; ++j) up_wide += at(p, k + 1 - j) * at(q, l + j);
  for (int i = 0; i <= t; ++i) up_narrow += at(p, k + 1 - i) * at(q, l + i);
  for (int j = 0; j <= t - 1; ++j) low_wide += at(p, k - j) * at(q, l + j);
  RangeIdentityResult out;
  out.lhs = low_narrow * up_wide;
  out.rhs = up_narrow * low_wide;
  out.equal = (out.lhs == out.rhs);
  return out;
}

InequalityReport product_log_concavity_check(const LayerProfile& pprof,
                                             const LayerProfile& qprof) {
  require_log_concave(pprof, "product_log_concavity_check");
  require_log_concave(qprof, "product_log_concavity_check");
  auto r = convolution(pprof, qprof).sizes;
  InequalityReport report;
  for (size_t k = 1; k + 1 < r.size(); ++k) {
    ++report.checked;
    if (r[k] * r[k] < r[k + 1] * r[k - 1]) {
      report.holds = false;
      report.violation = InequalityViolation{{static_cast<long long>(k)},
                                             make_rational(r[k] * r[k], 1),
                                             make_rational(r[k + 1] * r[k - 1], 1)};
      break;
    }
  }
  return report;
}

RearrangementProbe log_concavity_rearrangement_probe(const LayerProfile& pprof,
                                                     const LayerProfile& qprof, int k) {
  auto p = support_values(pprof, "log_concavity_rearrangement_probe");
  auto q = support_values(qprof, "log_concavity_rearrangement_probe");
  auto r = convolution(pprof, qprof).sizes;
  RearrangementProbe probe;
  probe.difference = at(r, k) * at(r, k) - at(r, k + 1) * at(r, k - 1);

  long long hi = std::max<long long>(k, static_cast<long long>(q.size())) + 2;
  probe.quadratic_form_sum = 0;
  for (long long i = -2; i <= hi; ++i) {
    for (long long j = -2; j <= hi; ++j) {
      BigInt left = at(p, k - i) * at(p, k - j) - at(p, k + 1 - i) * at(p, k - 1 - j);
      if (left == 0) continue;
      BigInt right = at(q, i) * at(q, j) - at(q, i - 1) * at(q, j + 1);
      probe.quadratic_form_sum += left * right;
    }
  }
  probe.equal = (probe.quadratic_form_sum == probe.difference);
  return probe;
}

FootnoteReport footnote_collision_witness(int t) {
  if (t < 1) throw std::invalid_argument("footnote_collision_witness: t must be >= 1");
  FootnoteReport report;
  report.t = t;

  auto image_of = [](int i, int j) {
    return (j <= i) ? std::pair<int, int>{i, j} : std::pair<int, int>{i + 1, j - 1};
  };
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> census;
  for (int i = 0; i <= t - 1; ++i) {
    for (int j = 0; j <= t; ++j) census[image_of(i, j)].push_back({i, j});
  }
  for (const auto& [image, sources] : census) {
    for (size_t a = 0; a < sources.size(); ++a) {
      for (size_t b = a + 1; b < sources.size(); ++b) {
        report.all_collisions.push_back({sources[a], sources[b], image});
        ++report.image_collision_pairs_total;
        // The footnote's duplicates: one source from the j = i+1 family,
        // one from the j = i-1 family, listed shifted-first.
        auto shifted = sources[a], identity = sources[b];
        if (shifted.second != shifted.first + 1) std::swap(shifted, identity);
        if (shifted.second == shifted.first + 1 && identity.second == identity.first - 1) {
          report.duplicates.push_back({shifted, identity, image});
        }
      }
    }
  }
  return report;
}

DiagonalCapacity diagonal_capacity(const BlockGrid& grid, int i, int j, int t) {
  if (t < 1) throw std::invalid_argument("diagonal_capacity: t must be >= 1");
  if (!grid.find(i, j)) {
    throw std::invalid_argument("diagonal_capacity: leading block " + block_id(i, j) +
                                " is empty");
  }
  DiagonalCapacity capacity;
  capacity.numerator = 0;
  for (int l = 0; l < t; ++l) capacity.numerator += grid.size_or_zero(i - l, j - l);
  capacity.denominator = grid.diagonal_sum(i, j);
  capacity.value = make_rational(capacity.numerator, capacity.denominator);
  return capacity;
}

InequalityReport hamming_capacity_inequality(const HammingBallParams& params,
                                             Parallelism mode) {
  BlockGrid grid = block_grid(params);
  const int top = grid.max_rank();
  const int blocks = static_cast<int>(grid.blocks.size());
  std::vector<long long> checked(blocks, 0);
  std::vector<std::optional<InequalityViolation>> violations(blocks);

#pragma omp parallel for schedule(dynamic) if (mode == Parallelism::parallel)
  for (int b = 0; b < blocks; ++b) {
    const auto& e = grid.blocks[b];
    if (e.rank >= top) continue;
    BigInt den_low = grid.diagonal_sum(e.i, e.j);
    BigInt den_up = grid.diagonal_sum(e.i, e.j + 1);
    BigInt num_low = 0;
    BigInt num_up = grid.size_or_zero(e.i, e.j + 1);
    const int tmax = std::min(e.i, e.j) + 1;
    for (int t = 1; t <= tmax; ++t) {
      num_low += grid.size_or_zero(e.i - (t - 1), e.j - (t - 1));
      num_up += grid.size_or_zero(e.i - t, e.j + 1 - t);
      ++checked[b];
      if (num_low * den_up > num_up * den_low) {
        violations[b] = InequalityViolation{{e.i, e.j, t},
                                            make_rational(num_low, den_low),
                                            make_rational(num_up, den_up)};
        break;
      }
    }
  }

  InequalityReport report;
  for (int b = 0; b < blocks; ++b) {
    report.checked += checked[b];
    if (violations[b] && report.holds) {
      report.holds = false;
      report.violation = std::move(violations[b]);
    }
  }

  // Single-step ratio facts used by the proof of the capacity inequality.
  const long p = params.p, q = params.q;
  for (long j = 0; report.holds && j + 1 < q; ++j) {
    ++report.checked;
    if (BigInt(q - j) * (j + 2) < BigInt(q - j - 1) * (j + 1)) {
      report.holds = false;
      report.violation = InequalityViolation{{-1, j, 0},
                                             make_rational(BigInt(q - j - 1), BigInt(j + 2)),
                                             make_rational(BigInt(q - j), BigInt(j + 1))};
    }
  }
  for (long i = 0; report.holds && i < p; ++i) {
    ++report.checked;
    if (BigInt(i) * (p - i) > BigInt(i + 1) * (p - i + 1)) {
      report.holds = false;
      report.violation = InequalityViolation{{-2, i, 0},
                                             make_rational(BigInt(i), BigInt(p - i + 1)),
                                             make_rational(BigInt(i + 1), BigInt(p - i))};
    }
  }
  return report;
}

namespace {

std::pair<int, int> parse_block_id(const std::string& id) {
  int i = -1, j = -1;
  if (std::sscanf(id.c_str(), "B(%d,%d)", &i, &j) != 2) {
    throw std::invalid_argument("not a block id: " + id);
  }
  return {i, j};
}

}  // namespace

UnitFlow lift_block_unit_flow(const HammingBallParams& params, const UnitFlow& block_flow,
                              const LiftOptions& options) {
  BlockGrid grid = block_grid(params);
  Poset blocks = block_poset(grid);
  auto verification = verify_unit_flow(blocks, block_flow);
  if (!verification.ok) {
    throw std::invalid_argument("lift_block_unit_flow: block flow fails verification: " +
                                (verification.problems.empty() ? std::string("no details")
                                                               : verification.problems.front()));
  }

  const int p = params.p, q = params.q;
  // Branching is uniform within a block: down to (i-1, j) restores one of
  // i removed base elements, up to (i, j+1) adds one of q-j unused extras.
  auto chain_paths = [&](const std::vector<std::pair<int, int>>& blocks_seq) {
    BigInt count = grid.size_or_zero(blocks_seq[0].first, blocks_seq[0].second);
    for (size_t s = 0; s + 1 < blocks_seq.size(); ++s) {
      auto [i, j] = blocks_seq[s];
      auto [ni, nj] = blocks_seq[s + 1];
      if (ni == i - 1 && nj == j) {
        count *= i;
      } else if (ni == i && nj == j + 1) {
        count *= q - j;
      } else {
        throw std::invalid_argument("lift_block_unit_flow: block chain step is not a cover");
      }
    }
    return count;
  };

  std::vector<std::vector<std::pair<int, int>>> sequences;
  sequences.reserve(block_flow.chains.size());
  BigInt total_paths = 0;
  for (const auto& chain : block_flow.chains) {
    std::vector<std::pair<int, int>> seq;
    seq.reserve(chain.elements.size());
    for (const auto& id : chain.elements) seq.push_back(parse_block_id(id));
    total_paths += chain_paths(seq);
    sequences.push_back(std::move(seq));
  }
  if (total_paths > BigInt(static_cast<long>(options.max_chains))) {
    throw CapExceeded("lift_block_unit_flow: " + total_paths.get_str() +
                      " element chains exceed the cap of " +
                      std::to_string(options.max_chains));
  }

  std::map<std::vector<std::string>, Rational> merged;
  for (size_t c = 0; c < sequences.size(); ++c) {
    const auto& seq = sequences[c];
    Rational path_weight = block_flow.chains[c].weight / Rational(chain_paths(seq));
    path_weight.canonicalize();

    std::vector<std::string> ids(seq.size());
    // DFS over (removed, extras) masks along the block sequence.
    auto walk = [&](auto&& self, size_t step, unsigned removed, unsigned extras) -> void {
      ids[step] = hamming_subset_id(p, q, removed, extras);
      if (step + 1 == seq.size()) {
        merged[ids] += path_weight;
        return;
      }
      auto [i, j] = seq[step];
      auto [ni, nj] = seq[step + 1];
      if (ni == i - 1) {
        for (int a = 0; a < p; ++a) {
          if (removed >> a & 1u) self(self, step + 1, removed & ~(1u << a), extras);
        }
      } else {
        for (int b = 0; b < q; ++b) {
          if (!(extras >> b & 1u)) self(self, step + 1, removed, extras | (1u << b));
        }
      }
    };
    auto [i0, j0] = seq[0];
    // All starting subsets of the first block, in mask order.
    std::vector<unsigned> removed_masks, extras_masks;
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
      if (__builtin_popcount(mask) == i0) removed_masks.push_back(mask);
    }
    for (unsigned mask = 0; mask < (1u << q); ++mask) {
      if (__builtin_popcount(mask) == j0) extras_masks.push_back(mask);
    }
    for (unsigned removed : removed_masks) {
      for (unsigned extras : extras_masks) walk(walk, 0, removed, extras);
    }
  }

  UnitFlow lifted;
  lifted.chains.reserve(merged.size());
  for (auto& [elements, weight] : merged) {
    lifted.chains.push_back({elements, weight});
  }
  return lifted;
}

std::vector<Rational> lifted_flow_marginals(const HammingBallParams& params, const Poset& ball,
                                            const UnitFlow& block_flow) {
  BlockGrid grid = block_grid(params);
  std::map<std::pair<int, int>, Rational> block_marginal;
  for (const auto& chain : block_flow.chains) {
    for (const auto& id : chain.elements) block_marginal[parse_block_id(id)] += chain.weight;
  }
  std::vector<Rational> marginals(ball.size(), Rational(0));
  const int p = params.p, q = params.q;
  for (const auto& e : grid.blocks) {
    Rational share = block_marginal[{e.i, e.j}] / Rational(e.size);
    share.canonicalize();
    for (unsigned removed = 0; removed < (1u << p); ++removed) {
      if (__builtin_popcount(removed) != e.i) continue;
      for (unsigned extras = 0; extras < (1u << q); ++extras) {
        if (__builtin_popcount(extras) != e.j) continue;
        int idx = ball.index_of(hamming_subset_id(p, q, removed, extras));
        if (idx >= 0) marginals[idx] = share;
      }
    }
  }
  return marginals;
}

LayerProfile random_log_concave_profile(SplitMix64& rng, int max_len, long long max_entry) {
  int len = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_len)));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Rational> ratios;
    for (int k = 0; k + 1 < len; ++k) {
      ratios.push_back(make_rational(BigInt(1 + rng.below(6)), BigInt(1 + rng.below(6))));
    }
    std::stable_sort(ratios.begin(), ratios.end(),
                     [](const Rational& a, const Rational& b) { return a > b; });
    std::vector<Rational> values{Rational(1)};
    for (const auto& ratio : ratios) values.push_back(values.back() * ratio);
    BigInt scale = 1;
    for (const auto& v : values) scale = lcm(scale, BigInt(v.get_den()));

    std::vector<BigInt> sizes;
    sizes.reserve(values.size());
    BigInt common = 0;
    for (const auto& v : values) {
      sizes.push_back(BigInt(v.get_num()) * (scale / BigInt(v.get_den())));
      common = gcd(common, sizes.back());
    }
    BigInt mult = 1 + rng.below(3);
    bool in_range = true;
    for (auto& s : sizes) {
      s = s / common * mult;
      if (s > BigInt(static_cast<long>(max_entry))) in_range = false;
    }
    if (!in_range) continue;
    LayerProfile profile;
    profile.sizes = std::move(sizes);
    if (!is_log_concave(profile)) continue;  // rounding-free, so never expected
    return profile;
  }
  LayerProfile fallback;
  fallback.sizes.assign(len, 1);
  return fallback;
}

std::vector<std::pair<LayerProfile, LayerProfile>> random_profile_pairs(int count, uint64_t seed,
                                                                        int max_len,
                                                                        long long max_entry) {
  SplitMix64 rng(seed);
  std::vector<std::pair<LayerProfile, LayerProfile>> pairs;
  pairs.reserve(count);
  for (int c = 0; c < count; ++c) {
    auto first = random_log_concave_profile(rng, max_len, max_entry);
    auto second = random_log_concave_profile(rng, max_len, max_entry);
    pairs.emplace_back(std::move(first), std::move(second));
  }
  return pairs;
}

HarperSweepSummary harper_random_sweep(int count, uint64_t seed, Parallelism mode) {
  auto pairs = random_profile_pairs(count, seed);
  std::vector<char> capacity_bad(count, 0), logconcavity_bad(count, 0);

#pragma omp parallel for schedule(dynamic) if (mode == Parallelism::parallel)
  for (int c = 0; c < count; ++c) {
    if (!harper_block_inequality(pairs[c].first, pairs[c].second).holds) capacity_bad[c] = 1;
    if (!product_log_concavity_check(pairs[c].first, pairs[c].second).holds) {
      logconcavity_bad[c] = 1;
    }
  }

  HarperSweepSummary summary;
  summary.pairs = count;
  for (int c = 0; c < count; ++c) {
    summary.capacity_violations += capacity_bad[c];
    summary.logconcavity_violations += logconcavity_bad[c];
    if ((capacity_bad[c] || logconcavity_bad[c]) && !summary.first_bad_pair) {
      summary.first_bad_pair = c;
    }
  }
  return summary;
}

}  // namespace posetflow
