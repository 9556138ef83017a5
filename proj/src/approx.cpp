#include "mvapx/approx.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <optional>

#include "mvapx/errors.hpp"

namespace mvapx::approx {

using mvtsp::EdgeMultiplicity;
using mvtsp::Instance;

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

EdgeMultiplicity hamiltonian_cycle(std::size_t n, const std::vector<std::size_t>& circuit) {
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order;
  for (std::size_t v : circuit) {
    if (!seen[v]) {
      seen[v] = true;
      order.push_back(v);
    }
  }
  if (order.size() != n) throw Error(ErrorKind::kInternal, "circuit misses a vertex");
  EdgeMultiplicity out;
  for (std::size_t i = 0; i < n; ++i) out.add(Edge::make(order[i], order[(i + 1) % n]), 1);
  return out;
}

// Successive shortest paths on a small dense residual graph.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap, Rational cost) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, cap, cost});
    adj_[from].push_back(id);
    arcs_.push_back({from, 0, -cost});
    adj_[to].push_back(id + 1);
    return id;
  }

  std::int64_t flow_on(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

  // Costs must be nonnegative so that zero potentials start out feasible.
  std::int64_t run(std::size_t s, std::size_t t, std::int64_t want) {
    const std::size_t nodes = adj_.size();
    std::vector<Rational> pi(nodes);
    std::int64_t sent = 0;
    while (sent < want) {
      std::vector<std::optional<Rational>> dist(nodes);
      std::vector<std::size_t> via(nodes, SIZE_MAX);
      std::vector<bool> done(nodes, false);
      dist[s] = Rational(0);
      for (;;) {
        std::size_t best = SIZE_MAX;
        for (std::size_t v = 0; v < nodes; ++v) {
          if (done[v] || !dist[v]) continue;
          if (best == SIZE_MAX || *dist[v] < *dist[best]) best = v;
        }
        if (best == SIZE_MAX) break;
        done[best] = true;
        for (std::size_t id : adj_[best]) {
          const Arc& a = arcs_[id];
          if (a.cap == 0 || done[a.to]) continue;
          Rational d = *dist[best] + a.cost + pi[best] - pi[a.to];
          if (!dist[a.to] || d < *dist[a.to]) {
            dist[a.to] = std::move(d);
            via[a.to] = id;
          }
        }
      }
      if (!dist[t]) break;
      for (std::size_t v = 0; v < nodes; ++v) {
        if (dist[v]) pi[v] += *dist[v];
      }
      std::int64_t push = want - sent;
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].cap);
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      sent += push;
    }
    return sent;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
    Rational cost;
  };
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace

std::vector<Edge> minimum_spanning_tree(const Instance& inst) {
  std::vector<Edge> candidates;
  for (const Edge& e : complete_edges_with_loops(inst.n)) {
    if (!e.is_loop()) candidates.push_back(e);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Edge& a, const Edge& b) {
    return inst.cost(a.u, a.v) < inst.cost(b.u, b.v);
  });
  DisjointSets sets(inst.n);
  std::vector<Edge> tree;
  for (const Edge& e : candidates) {
    if (sets.unite(e.u, e.v)) tree.push_back(e);
  }
  return tree;
}

Matching min_cost_perfect_matching(const Instance& inst, const std::vector<std::size_t>& vertices) {
  const std::size_t k = vertices.size();
  if (k % 2 != 0) throw Error(ErrorKind::kOddCardinality, std::to_string(k) + " vertices to match");
  if (k > kMatchingCap) {
    throw Error(ErrorKind::kSubsetTooLarge,
                std::to_string(k) + " vertices to match, cap is " + std::to_string(kMatchingCap));
  }
  Matching out;
  if (k == 0) return out;

  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::vector<Rational> best(std::size_t{full} + 1);
  std::vector<bool> reached(std::size_t{full} + 1, false);
  std::vector<std::uint16_t> chosen(std::size_t{full} + 1, 0);
  reached[0] = true;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (!reached[mask]) continue;
    const auto i = static_cast<std::size_t>(std::countr_one(mask));
    for (std::size_t j = i + 1; j < k; ++j) {
      if (mask & (std::uint32_t{1} << j)) continue;
      const std::uint32_t next = mask | (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
      Rational c = best[mask] + inst.cost(vertices[i], vertices[j]);
      if (!reached[next] || c < best[next]) {
        best[next] = std::move(c);
        reached[next] = true;
        chosen[next] = static_cast<std::uint16_t>(i << 8 | j);
      }
    }
  }

  out.cost = best[full];
  for (std::uint32_t mask = full; mask != 0;) {
    const std::size_t i = chosen[mask] >> 8;
    const std::size_t j = chosen[mask] & 0xff;
    out.pairs.emplace_back(std::min(vertices[i], vertices[j]), std::max(vertices[i], vertices[j]));
    mask &= ~((std::uint32_t{1} << i) | (std::uint32_t{1} << j));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

EdgeMultiplicity christofides(const Instance& inst) {
  mvtsp::validate_shape(inst);
  EdgeMultiplicity out;
  if (inst.n == 1) {
    out.add(Edge{0, 0}, 1);
    return out;
  }
  if (inst.n == 2) {
    out.add(Edge{0, 1}, 2);
    return out;
  }
  const std::vector<Edge> tree = minimum_spanning_tree(inst);
  std::vector<std::int64_t> degree(inst.n, 0);
  for (const Edge& e : tree) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < inst.n; ++v) {
    if (degree[v] % 2 != 0) odd.push_back(v);
  }
  const Matching matching = min_cost_perfect_matching(inst, odd);
  std::vector<Edge> multigraph = tree;
  for (const auto& [a, b] : matching.pairs) multigraph.push_back(Edge::make(a, b));
  return hamiltonian_cycle(inst.n, mvtsp::eulerian_circuit(inst.n, multigraph));
}

TransportationPlan transportation(const Instance& inst, const IntVector& supply, const IntVector& demand) {
  const std::size_t n = inst.n;
  if (supply.size() != n || demand.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "supply and demand need one entry per vertex");
  }
  std::int64_t total_supply = 0;
  std::int64_t total_demand = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (supply[v] < 0 || demand[v] < 0) throw Error(ErrorKind::kInvalidInput, "negative supply or demand");
    total_supply += supply[v];
    total_demand += demand[v];
  }
  if (total_supply != total_demand) {
    throw Error(ErrorKind::kUnbalanced, "supply " + std::to_string(total_supply) + " vs demand " +
                                            std::to_string(total_demand));
  }
  for (const Rational& c : inst.costs) {
    if (c < 0) throw Error(ErrorKind::kInvalidInput, "negative cost");
  }

  const std::size_t source = 2 * n;
  const std::size_t sink = 2 * n + 1;
  MinCostFlow flow(2 * n + 2);
  for (std::size_t u = 0; u < n; ++u) flow.add_arc(source, u, supply[u], Rational(0));
  for (std::size_t v = 0; v < n; ++v) flow.add_arc(n + v, sink, demand[v], Rational(0));
  std::vector<std::size_t> middle(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) middle[u * n + v] = flow.add_arc(u, n + v, total_supply, inst.cost(u, v));
  }
  if (flow.run(source, sink, total_supply) != total_supply) {
    throw Error(ErrorKind::kInternal, "transportation flow fell short");
  }

  TransportationPlan plan;
  plan.n = n;
  plan.y.resize(n * n);
  plan.cost = 0;
  for (std::size_t i = 0; i < n * n; ++i) {
    plan.y[i] = flow.flow_on(middle[i]);
    plan.cost += inst.costs[i] * plan.y[i];
  }
  return plan;
}

EdgeMultiplicity fold(const TransportationPlan& plan) {
  EdgeMultiplicity z;
  for (std::size_t u = 0; u < plan.n; ++u) {
    for (std::size_t v = 0; v < plan.n; ++v) z.add(Edge::make(u, v), plan.at(u, v));
  }
  return z;
}

Apx25Result apx25_detailed(const Instance& inst) {
  Apx25Result out;
  out.single_visit = christofides(inst);
  IntVector rest(inst.n);
  for (std::size_t v = 0; v < inst.n; ++v) rest[v] = inst.requests[v] - 1;
  out.plan = transportation(inst, rest, rest);
  out.tour = out.single_visit;
  const EdgeMultiplicity folded = fold(out.plan);
  for (const auto& [e, k] : folded.entries()) out.tour.add(e, k);
  out.alpha = Rational(3, 2);
  return out;
}

EdgeMultiplicity apx25(const Instance& inst) { return apx25_detailed(inst).tour; }

rounding::BdgpeInstance degree_instance(const Instance& inst) {
  mvtsp::validate_shape(inst);
  const std::vector<Edge> edges = complete_edges_with_loops(inst.n);
  rounding::BdgpeInstance out{gpoly::graphic_mvtsp_border(inst.n, inst.requests), {}, {}, rounding::Regime::kLowerOnly};
  out.costs.reserve(edges.size());
  for (const Edge& e : edges) out.costs.push_back(inst.cost(e.u, e.v));
  out.hyperedges.resize(inst.n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.is_loop()) {
      out.hyperedges[e.u].members.push_back(i);
      out.hyperedges[e.u].m.push_back(2);
      continue;
    }
    for (std::size_t v : {e.u, e.v}) {
      out.hyperedges[v].members.push_back(i);
      out.hyperedges[v].m.push_back(1);
    }
  }
  for (std::size_t v = 0; v < inst.n; ++v) out.hyperedges[v].f = 2 * inst.requests[v];
  return out;
}

Apx15Result apx15_detailed(const Instance& inst, const rounding::Options& options) {
  Apx15Result out;
  out.rounding = rounding::solve_bdgpe(degree_instance(inst), options);
  out.z = EdgeMultiplicity::from_dense(inst.n, out.rounding.z);

  const std::vector<std::int64_t> degree = out.z.degrees(inst.n);
  for (std::size_t v = 0; v < inst.n; ++v) {
    if (degree[v] % 2 != 0) out.odd_vertices.push_back(v);
  }
  out.matching = min_cost_perfect_matching(inst, out.odd_vertices);

  EdgeMultiplicity doubled = out.z;
  for (const auto& [a, b] : out.matching.pairs) doubled.add(Edge::make(a, b), 1);
  out.cover = mvtsp::cycle_decompose(inst.n, doubled);
  out.walk = mvtsp::implicit_order(inst.n, out.cover);
  out.tour = mvtsp::shortcut(inst, out.walk);
  return out;
}

EdgeMultiplicity apx15(const Instance& inst) { return apx15_detailed(inst).tour; }

}  // namespace mvapx::approx
