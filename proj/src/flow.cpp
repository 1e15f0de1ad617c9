#include "posetflow/flow.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "posetflow/errors.hpp"

namespace posetflow {

namespace {

// Residual-graph Dinic over exact integers. Arcs are added in pairs
// (forward, backward); augment() pushes a maximum flow between any two
// nodes on the current residuals, so it serves plain max-flow, the
// lower-bound feasibility reduction and the flow-minimization phase alike.
class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), it_(n) {}

  int add_arc(int u, int v, BigInt fwd_res, BigInt bwd_res) {
    int id = static_cast<int>(edges_.size());
    adj_[u].push_back(id);
    edges_.push_back({v, std::move(fwd_res)});
    adj_[v].push_back(id + 1);
    edges_.push_back({u, std::move(bwd_res)});
    return id;
  }

  const BigInt& residual(int edge_id) const { return edges_[edge_id].res; }

  BigInt augment(int s, int t) {
    BigInt total = 0;
    BigInt bound = 1;
    for (int e : adj_[s]) bound += edges_[e].res;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (true) {
        BigInt pushed = dfs(s, t, bound);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : adj_[v]) {
        if (edges_[e].res > 0 && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          stack.push_back(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    BigInt res;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{s};
    level_[s] = 0;
    size_t head = 0;
    while (head < queue.size()) {
      int v = queue[head++];
      for (int e : adj_[v]) {
        if (edges_[e].res > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[v] + 1;
          queue.push_back(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  BigInt dfs(int v, int t, BigInt limit) {
    if (v == t) return limit;
    for (int& i = it_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      int e = adj_[v][i];
      Edge& edge = edges_[e];
      if (edge.res > 0 && level_[edge.to] == level_[v] + 1) {
        BigInt pushed = dfs(edge.to, t, std::min(limit, edge.res));
        if (pushed > 0) {
          edge.res -= pushed;
          edges_[e ^ 1].res += pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
  std::vector<Edge> edges_;
};

void check_network(const FlowNetwork& net, bool require_zero_lower) {
  if (net.source < 0 || net.source >= net.node_count || net.sink < 0 ||
      net.sink >= net.node_count || net.source == net.sink) {
    throw std::invalid_argument("flow network: bad source/sink");
  }
  for (const auto& arc : net.arcs) {
    if (arc.from < 0 || arc.from >= net.node_count || arc.to < 0 ||
        arc.to >= net.node_count) {
      throw std::invalid_argument("flow network: arc endpoint out of range");
    }
    if (arc.lower < 0) throw std::invalid_argument("flow network: negative lower bound");
    if (arc.capacity && *arc.capacity < arc.lower) {
      throw std::invalid_argument("flow network: capacity below lower bound");
    }
    if (require_zero_lower && arc.lower != 0) {
      throw std::invalid_argument("max_flow requires zero lower bounds");
    }
    if (arc.to == net.source) throw std::invalid_argument("flow network: arc into source");
    if (arc.from == net.sink) throw std::invalid_argument("flow network: arc out of sink");
  }
}

BigInt unbounded_surrogate(const FlowNetwork& net) {
  BigInt s = 1;
  for (const auto& arc : net.arcs) {
    if (arc.capacity) s += *arc.capacity;
    s += arc.lower;
  }
  return s;
}

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
  check_network(net, /*require_zero_lower=*/true);
  BigInt inf = unbounded_surrogate(net);
  BigInt finite_total = inf - 1;

  Dinic dinic(net.node_count);
  for (const auto& arc : net.arcs) {
    dinic.add_arc(arc.from, arc.to, arc.capacity ? *arc.capacity : inf, 0);
  }
  MaxFlowResult out;
  out.value = dinic.augment(net.source, net.sink);
  if (out.value > finite_total) {
    throw std::runtime_error("max_flow: flow value is unbounded");
  }
  out.arc_flow.reserve(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    const BigInt& cap = net.arcs[i].capacity ? *net.arcs[i].capacity : inf;
    out.arc_flow.push_back(cap - dinic.residual(static_cast<int>(2 * i)));
  }
  out.source_side = dinic.reachable(net.source);
  return out;
}

FeasibleFlowResult feasible_flow_with_lower_bounds(const FlowNetwork& net) {
  check_network(net, /*require_zero_lower=*/false);
  BigInt inf = unbounded_surrogate(net);
  int n = net.node_count;
  int super_source = n, super_sink = n + 1;

  Dinic dinic(n + 2);
  std::vector<BigInt> excess(n, 0);
  for (const auto& arc : net.arcs) {
    dinic.add_arc(arc.from, arc.to, arc.capacity ? *arc.capacity - arc.lower : inf, 0);
    excess[arc.to] += arc.lower;
    excess[arc.from] -= arc.lower;
  }
  dinic.add_arc(net.sink, net.source, inf, 0);  // return arc closes the circulation
  BigInt required = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      dinic.add_arc(super_source, v, excess[v], 0);
      required += excess[v];
    } else if (excess[v] < 0) {
      dinic.add_arc(v, super_sink, -excess[v], 0);
    }
  }

  FeasibleFlowResult out;
  BigInt pushed = dinic.augment(super_source, super_sink);
  out.feasible = (pushed == required);
  if (out.feasible) {
    out.arc_flow.reserve(net.arcs.size());
    for (size_t i = 0; i < net.arcs.size(); ++i) {
      const auto& arc = net.arcs[i];
      BigInt reduced_cap = arc.capacity ? *arc.capacity - arc.lower : inf;
      out.arc_flow.push_back(arc.lower + (reduced_cap - dinic.residual(static_cast<int>(2 * i))));
    }
  } else {
    auto side = dinic.reachable(super_source);
    out.infeasible_cut.assign(side.begin(), side.begin() + n);
  }
  return out;
}

namespace {

// Canonical element order (by id) shared by all poset-derived networks so
// minimum cuts and path decompositions are deterministic.
struct CanonicalView {
  std::vector<int> order;  // position -> original index
  std::vector<int> pos;    // original index -> position

  explicit CanonicalView(const Poset& poset) : order(poset.sorted_order()), pos(order.size()) {
    for (size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<int>(p);
  }
};

}  // namespace

MatchingCheckResult normalized_matching_check(const Poset& poset,
                                              const RankAssignment& ranks, int k) {
  if (!is_graded(poset, ranks)) {
    throw NotGradedError("normalized_matching_check: poset is not graded");
  }
  if (k < 0 || k + 1 > ranks.height()) {
    throw std::invalid_argument("normalized_matching_check: layer index out of range");
  }

  CanonicalView view(poset);
  auto by_id = [&](std::vector<int> v) {
    std::sort(v.begin(), v.end(), [&](int a, int b) { return view.pos[a] < view.pos[b]; });
    return v;
  };
  std::vector<int> left = by_id(ranks.layers[k]);
  std::vector<int> right = by_id(ranks.layers[k + 1]);
  const BigInt& wk = ranks.profile.sizes[k];
  const BigInt& wk1 = ranks.profile.sizes[k + 1];

  std::vector<int> left_slot(poset.size(), -1), right_slot(poset.size(), -1);
  for (size_t i = 0; i < left.size(); ++i) left_slot[left[i]] = static_cast<int>(i);
  for (size_t r = 0; r < right.size(); ++r) right_slot[right[r]] = static_cast<int>(r);
  std::vector<std::vector<int>> up(left.size());
  for (const auto& [lo, hi] : poset.covers()) {
    if (ranks.rank[lo] == k && ranks.rank[hi] == k + 1) {
      up[left_slot[lo]].push_back(right_slot[hi]);
    }
  }
  for (auto& targets : up) std::sort(targets.begin(), targets.end());

  FlowNetwork net;
  int s = net.add_node();
  int t = net.add_node();
  std::vector<int> left_node(left.size()), right_node(right.size());
  for (size_t i = 0; i < left.size(); ++i) left_node[i] = net.add_node();
  for (size_t r = 0; r < right.size(); ++r) right_node[r] = net.add_node();
  net.source = s;
  net.sink = t;
  for (size_t i = 0; i < left.size(); ++i) {
    net.add_arc(s, left_node[i], wk1 * poset.weight(left[i]));
  }
  for (size_t i = 0; i < left.size(); ++i) {
    for (int r : up[i]) net.add_arc(left_node[i], right_node[r], std::nullopt);
  }
  for (size_t r = 0; r < right.size(); ++r) {
    net.add_arc(right_node[r], t, wk * poset.weight(right[r]));
  }

  auto flow = max_flow(net);
  MatchingCheckResult result;
  result.layer = k;
  result.ok = (flow.value == wk * wk1);
  if (result.ok) return result;

  // Source side of the minimum cut: S = cut ∩ P_k; the violating antichain
  // is S together with the elements of P_{k+1} outside the neighborhood.
  std::vector<char> in_nbhd(right.size(), 0);
  for (size_t i = 0; i < left.size(); ++i) {
    if (!flow.source_side[left_node[i]]) continue;
    result.witness.push_back(left[i]);
    for (int r : up[i]) in_nbhd[r] = 1;
  }
  BigInt ws = 0, wrest = 0;
  result.antichain = result.witness;
  for (int x : result.witness) ws += poset.weight(x);
  for (size_t r = 0; r < right.size(); ++r) {
    if (!in_nbhd[r]) {
      result.antichain.push_back(right[r]);
      wrest += poset.weight(right[r]);
    }
  }
  result.lym_sum = make_rational(ws, wk) + make_rational(wrest, wk1);
  return result;
}

MatchingCheckResult normalized_matching_check(const Poset& poset, int k) {
  return normalized_matching_check(poset, rank_function(poset), k);
}

LymCertificate lym_certify(const Poset& poset, Parallelism mode) {
  auto ranks = rank_function(poset);
  if (!is_graded(poset, ranks)) {
    throw NotGradedError("lym_certify: poset is not graded");
  }
  int pairs = ranks.height();
  LymCertificate cert;
  cert.lym = true;
  if (pairs <= 0) return cert;

  if (mode == Parallelism::serial) {
    for (int k = 0; k < pairs; ++k) {
      auto r = normalized_matching_check(poset, ranks, k);
      if (!r.ok) {
        cert.lym = false;
        cert.failure = std::move(r);
        return cert;
      }
    }
    return cert;
  }

  std::vector<std::optional<MatchingCheckResult>> failures(pairs);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < pairs; ++k) {
    auto r = normalized_matching_check(poset, ranks, k);
    if (!r.ok) failures[k] = std::move(r);
  }
  for (auto& f : failures) {
    if (f) {
      cert.lym = false;
      cert.failure = std::move(*f);
      break;
    }
  }
  return cert;
}

AntichainCertificate max_weight_antichain(const Poset& poset,
                                          const std::vector<Rational>& weights) {
  int n = poset.size();
  if (static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("max_weight_antichain: one weight per element required");
  }
  AntichainCertificate cert;
  cert.scale = 1;
  if (n == 0) {
    cert.value = 0;
    return cert;
  }
  for (const auto& w : weights) {
    if (w <= 0) throw std::invalid_argument("max_weight_antichain: weights must be positive");
    cert.scale = lcm(cert.scale, BigInt(w.get_den()));
  }

  CanonicalView view(poset);
  auto closure = transitive_closure(poset);
  std::vector<BigInt> scaled(n);
  for (int i = 0; i < n; ++i) {
    scaled[i] = BigInt(weights[i].get_num()) * (cert.scale / BigInt(weights[i].get_den()));
  }

  // Node-split network: s=0, t=1, in(p)=2+2p, out(p)=3+2p by id order.
  // Chains may enter anywhere, pass the split arc (lower bound = scaled
  // weight), follow closure arcs upward and leave anywhere.
  const int s = 0, t = 1;
  auto node_in = [](int p) { return 2 + 2 * p; };
  auto node_out = [](int p) { return 3 + 2 * p; };
  int nodes = 2 + 2 * n;

  BigInt total_demand = 0;
  for (const auto& c : scaled) total_demand += c;
  BigInt inf = 2 * total_demand + 1;

  Dinic phase1(nodes + 2);
  int super_source = nodes, super_sink = nodes + 1;
  struct ArcRef {
    int edge;
    BigInt lower;
  };
  std::vector<ArcRef> arcs;  // original arcs in canonical order
  auto add = [&](int u, int v, const BigInt& cap, BigInt lower) {
    arcs.push_back({phase1.add_arc(u, v, cap - lower, 0), std::move(lower)});
  };
  for (int p = 0; p < n; ++p) add(s, node_in(p), inf, 0);
  for (int p = 0; p < n; ++p) add(node_in(p), node_out(p), inf, scaled[view.order[p]]);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (closure.less(view.order[a], view.order[b])) add(node_out(a), node_in(b), inf, 0);
    }
  }
  for (int p = 0; p < n; ++p) add(node_out(p), t, inf, 0);
  int return_edge = phase1.add_arc(t, s, inf, 0);
  // Lower bounds only sit on split arcs, so the excess pattern is fixed.
  BigInt required = 0;
  for (int p = 0; p < n; ++p) {
    const BigInt& c = scaled[view.order[p]];
    phase1.add_arc(super_source, node_out(p), c, 0);
    phase1.add_arc(node_in(p), super_sink, c, 0);
    required += c;
  }
  if (phase1.augment(super_source, super_sink) != required) {
    throw std::logic_error("max_weight_antichain: throughput network unexpectedly infeasible");
  }

  std::vector<BigInt> flow(arcs.size());
  for (size_t i = 0; i < arcs.size(); ++i) {
    BigInt reduced_cap = inf - arcs[i].lower;
    flow[i] = arcs[i].lower + (reduced_cap - phase1.residual(arcs[i].edge));
  }
  BigInt value = inf - phase1.residual(return_edge);

  // Minimize: cancel flow by augmenting sink -> source on the residual of
  // the original network (lower bounds respected via backward residuals).
  Dinic phase2(nodes);
  size_t idx = 0;
  std::vector<int> edge2(arcs.size());
  auto re_add = [&](int u, int v) {
    edge2[idx] = phase2.add_arc(u, v, inf - flow[idx], flow[idx] - arcs[idx].lower);
    ++idx;
  };
  for (int p = 0; p < n; ++p) re_add(s, node_in(p));
  for (int p = 0; p < n; ++p) re_add(node_in(p), node_out(p));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (closure.less(view.order[a], view.order[b])) re_add(node_out(a), node_in(b));
    }
  }
  for (int p = 0; p < n; ++p) re_add(node_out(p), t);
  value -= phase2.augment(t, s);

  // Max-weight antichain = split arcs crossing the final residual cut.
  auto reach = phase2.reachable(t);
  BigInt attained = 0;
  for (int p = 0; p < n; ++p) {
    if (!reach[node_in(p)] && reach[node_out(p)]) {
      cert.antichain.push_back(view.order[p]);
      attained += scaled[view.order[p]];
    }
  }
  if (attained != value) {
    throw std::logic_error("max_weight_antichain: cut does not match the minimum flow");
  }
  cert.value = make_rational(value, cert.scale);
  return cert;
}

BigInt width(const Poset& poset) {
  std::vector<Rational> weights;
  weights.reserve(poset.size());
  for (const auto& e : poset.elements()) weights.emplace_back(e.weight);
  auto cert = max_weight_antichain(poset, weights);
  return BigInt(cert.value.get_num());
}

std::vector<Rational> lym_weights(const Poset& poset) {
  auto ranks = rank_function(poset);
  std::vector<Rational> weights;
  weights.reserve(poset.size());
  for (int i = 0; i < poset.size(); ++i) {
    weights.push_back(make_rational(poset.weight(i), ranks.profile.sizes[ranks.rank[i]]));
  }
  return weights;
}

Rational max_lym_sum(const Poset& poset) {
  if (poset.size() == 0) return Rational(0);
  return max_weight_antichain(poset, lym_weights(poset)).value;
}

UnitFlow build_unit_flow(const Poset& poset) {
  int n = poset.size();
  if (n == 0) throw std::invalid_argument("build_unit_flow: empty poset");
  auto ranks = rank_function(poset);
  if (!is_graded(poset, ranks)) {
    throw NotGradedError("build_unit_flow: poset is not graded");
  }
  CanonicalView view(poset);

  BigInt layer_lcm = 1;
  for (const auto& w : ranks.profile.sizes) layer_lcm = lcm(layer_lcm, w);
  auto throughput = [&](int original) -> BigInt {
    return layer_lcm * poset.weight(original) / ranks.profile.sizes[ranks.rank[original]];
  };

  // S -> s pins the total to L, so decomposed weights sum to exactly 1.
  FlowNetwork net;
  int S = net.add_node();
  int s = net.add_node();
  int t = net.add_node();
  std::vector<int> node_in(n), node_out(n);
  for (int p = 0; p < n; ++p) {
    node_in[p] = net.add_node();
    node_out[p] = net.add_node();
  }
  net.source = S;
  net.sink = t;
  net.add_arc(S, s, layer_lcm, layer_lcm);
  std::vector<int> start_arc(n), split_arc(n), end_arc(n);
  for (int p = 0; p < n; ++p) start_arc[p] = net.add_arc(s, node_in[p], std::nullopt);
  for (int p = 0; p < n; ++p) {
    BigInt thr = throughput(view.order[p]);
    split_arc[p] = net.add_arc(node_in[p], node_out[p], thr, thr);
  }
  std::vector<std::pair<int, int>> cover_pos;  // (lower pos, upper pos)
  cover_pos.reserve(poset.covers().size());
  for (const auto& [lo, hi] : poset.covers()) {
    cover_pos.emplace_back(view.pos[lo], view.pos[hi]);
  }
  std::sort(cover_pos.begin(), cover_pos.end());
  std::vector<int> cover_arc(cover_pos.size());
  for (size_t c = 0; c < cover_pos.size(); ++c) {
    cover_arc[c] = net.add_arc(node_out[cover_pos[c].first], node_in[cover_pos[c].second],
                               std::nullopt);
  }
  for (int p = 0; p < n; ++p) end_arc[p] = net.add_arc(node_out[p], t, std::nullopt);

  auto feasible = feasible_flow_with_lower_bounds(net);
  if (!feasible.feasible) {
    std::string witness = "build_unit_flow: throughput network infeasible; cut side:";
    for (int p = 0; p < n; ++p) {
      if (feasible.infeasible_cut[node_out[p]]) witness += " " + poset.id(view.order[p]);
    }
    throw UnitFlowInfeasible(witness);
  }

  // Greedy path decomposition, smallest next id first. Successor lists per
  // position: cover arcs in target order, then the arc to the sink.
  std::vector<std::vector<std::pair<int, int>>> successors(n);  // (target pos or -1 for t, arc)
  for (size_t c = 0; c < cover_pos.size(); ++c) {
    successors[cover_pos[c].first].emplace_back(cover_pos[c].second, cover_arc[c]);
  }
  for (int p = 0; p < n; ++p) successors[p].emplace_back(-1, end_arc[p]);

  std::vector<BigInt> remaining = feasible.arc_flow;
  UnitFlow flow;
  for (int start = 0; start < n;) {
    if (remaining[start_arc[start]] == 0) {
      ++start;
      continue;
    }
    std::vector<int> path_arcs{start_arc[start]};
    std::vector<int> chain_pos{start};
    int at = start;
    while (true) {
      path_arcs.push_back(split_arc[at]);
      int next = -2;
      for (const auto& [target, arc] : successors[at]) {
        if (remaining[arc] > 0) {
          path_arcs.push_back(arc);
          next = target;
          break;
        }
      }
      if (next == -2) throw std::logic_error("build_unit_flow: stuck decomposition");
      if (next == -1) break;
      chain_pos.push_back(next);
      at = next;
    }
    BigInt delta = remaining[path_arcs[0]];
    for (int arc : path_arcs) delta = std::min(delta, remaining[arc]);
    for (int arc : path_arcs) remaining[arc] -= delta;
    UnitFlow::Chain chain;
    chain.weight = make_rational(delta, layer_lcm);
    for (int p : chain_pos) chain.elements.push_back(poset.id(view.order[p]));
    flow.chains.push_back(std::move(chain));
  }
  return flow;
}

UnitFlowReport verify_unit_flow(const Poset& poset, const UnitFlow& flow) {
  UnitFlowReport report;
  int n = poset.size();
  auto ranks = rank_function(poset);
  report.marginal.assign(n, Rational(0));
  report.expected.reserve(n);
  for (int i = 0; i < n; ++i) {
    report.expected.push_back(make_rational(poset.weight(i), ranks.profile.sizes[ranks.rank[i]]));
  }

  std::set<std::pair<int, int>> covers(poset.covers().begin(), poset.covers().end());
  report.total_weight = 0;
  for (size_t c = 0; c < flow.chains.size(); ++c) {
    const auto& chain = flow.chains[c];
    if (chain.elements.empty()) {
      report.problems.push_back("chain " + std::to_string(c) + " is empty");
      continue;
    }
    if (chain.weight <= 0) {
      report.problems.push_back("chain " + std::to_string(c) + " has non-positive weight");
      continue;
    }
    bool valid = true;
    std::vector<int> idx;
    idx.reserve(chain.elements.size());
    for (const auto& id : chain.elements) {
      int i = poset.index_of(id);
      if (i < 0) {
        report.problems.push_back("chain " + std::to_string(c) + " references unknown id '" +
                                  id + "'");
        valid = false;
        break;
      }
      idx.push_back(i);
    }
    if (!valid) continue;
    for (size_t step = 0; step + 1 < idx.size(); ++step) {
      if (!covers.count({idx[step], idx[step + 1]})) {
        report.problems.push_back("chain " + std::to_string(c) + " step " +
                                  std::to_string(step) + " is not a cover");
        valid = false;
        break;
      }
    }
    if (!valid) continue;
    report.total_weight += chain.weight;
    for (int i : idx) report.marginal[i] += chain.weight;
  }

  bool marginals_ok = true;
  for (int i = 0; i < n; ++i) {
    if (report.marginal[i] != report.expected[i]) {
      marginals_ok = false;
      report.problems.push_back("element '" + poset.id(i) + "' has marginal " +
                                to_fraction(report.marginal[i]) + ", expected " +
                                to_fraction(report.expected[i]));
    }
  }
  if (report.total_weight != 1) {
    report.problems.push_back("chain weights sum to " + to_fraction(report.total_weight) +
                              ", expected 1/1");
  }
  report.ok = marginals_ok && report.total_weight == 1 &&
              std::none_of(flow.chains.begin(), flow.chains.end(),
                           [](const UnitFlow::Chain& c) { return c.elements.empty(); }) &&
              report.problems.empty();
  return report;
}

}  // namespace posetflow
