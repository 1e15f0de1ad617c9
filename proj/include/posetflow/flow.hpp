#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posetflow/poset.hpp"

namespace posetflow {

// Sweep kernels ship in two variants: an OpenMP-parallel one and a serial
// reference path kept for testing. Verdicts must match exactly.
enum class Parallelism { serial, parallel };

// Directed network with exact integer capacities. A missing capacity means
// the arc is unbounded; solvers substitute a surrogate larger than any
// realizable flow, so verdicts stay exact.
struct FlowNetwork {
  struct Arc {
    int from = 0;
    int to = 0;
    std::optional<BigInt> capacity;  // nullopt = unbounded
    BigInt lower = 0;
  };

  int node_count = 0;
  int source = -1;
  int sink = -1;
  std::vector<Arc> arcs;

  int add_node() { return node_count++; }
  int add_arc(int from, int to, std::optional<BigInt> capacity, BigInt lower = 0) {
    arcs.push_back({from, to, std::move(capacity), std::move(lower)});
    return static_cast<int>(arcs.size()) - 1;
  }
};

struct MaxFlowResult {
  BigInt value;
  std::vector<BigInt> arc_flow;
  std::vector<char> source_side;  // minimum cut: nodes reachable in the residual
};

// Exact Dinic over big integers. Requires all lower bounds zero.
// Deterministic given the arc insertion order.
MaxFlowResult max_flow(const FlowNetwork& net);

struct FeasibleFlowResult {
  bool feasible = false;
  std::vector<BigInt> arc_flow;       // meets [lower, capacity] on every arc
  std::vector<char> infeasible_cut;   // witness when infeasible
};

// Any source->sink flow meeting the lower bounds, via the standard
// super-source reduction with a sink->source return arc.
FeasibleFlowResult feasible_flow_with_lower_bounds(const FlowNetwork& net);

// Kleitman's consecutive-layer criterion for layers k and k+1: every
// S within layer k must satisfy W(nbhd(S)) / W_{k+1} >= W(S) / W_k.
// Decided by one exact max-flow; on failure the source side of the minimum
// cut yields S and the violating two-layer antichain S + (P_{k+1} - nbhd(S)).
struct MatchingCheckResult {
  bool ok = true;
  int layer = -1;
  std::vector<int> witness;    // S, element indices in id order
  std::vector<int> antichain;  // violating antichain, id order
  Rational lym_sum;            // its LYM sum (> 1 on failure)
};

MatchingCheckResult normalized_matching_check(const Poset& poset, int k);
MatchingCheckResult normalized_matching_check(const Poset& poset,
                                              const RankAssignment& ranks, int k);

struct LymCertificate {
  bool lym = false;
  std::optional<MatchingCheckResult> failure;  // first failing layer pair
};

// Conjunction of normalized_matching_check over all consecutive layer
// pairs; certifies the LYM property. Graded posets only.
LymCertificate lym_certify(const Poset& poset, Parallelism mode = Parallelism::parallel);

struct AntichainCertificate {
  std::vector<int> antichain;  // element indices in id order
  Rational value;              // exact weighted sum
  BigInt scale;                // lcm used to scale weights to integers
};

// Maximum-weight antichain, exact: weights are scaled to integers by the
// lcm of their denominators and weighted Dilworth is solved as a minimum
// flow with node lower bounds on the node-split closure network.
AntichainCertificate max_weight_antichain(const Poset& poset,
                                          const std::vector<Rational>& weights);

// Weighted width: maximum antichain under weight(x) = w(x).
BigInt width(const Poset& poset);

// Per-element LYM weights w(x) / W_{r(x)}.
std::vector<Rational> lym_weights(const Poset& poset);

// Maximum over antichains of the LYM sum; exactly 1 iff the poset is LYM
// (a full layer always attains 1).
Rational max_lym_sum(const Poset& poset);

// Weighted collection of cover-chains; a unit flow has total weight 1 and
// covers every element x with marginal w(x) / W_{r(x)}.
struct UnitFlow {
  struct Chain {
    std::vector<std::string> elements;  // ids, consecutive pairs are covers
    Rational weight;
  };
  std::vector<Chain> chains;
};

// Builds a unit flow on a graded LYM poset: node throughputs are pinned to
// L * w(x) / W_{r(x)} for L = lcm of the layer weights, a feasible flow is
// found by the lower-bound reduction, and the flow is path-decomposed
// greedily, always taking the lexicographically smallest next element id.
// Throws UnitFlowInfeasible (with the cut witness) when the poset is not
// LYM-certifiable.
UnitFlow build_unit_flow(const Poset& poset);

struct UnitFlowReport {
  bool ok = false;
  Rational total_weight;
  std::vector<Rational> marginal;  // per element index
  std::vector<Rational> expected;  // w(x) / W_{r(x)}
  std::vector<std::string> problems;
};

UnitFlowReport verify_unit_flow(const Poset& poset, const UnitFlow& flow);

}  // namespace posetflow
