#include "mvapx/oracles.hpp"

#include <numeric>

#include "mvapx/approx.hpp"
#include "mvapx/errors.hpp"
#include "mvapx/lp.hpp"

namespace mvapx::oracles {

using mvtsp::EdgeMultiplicity;
using mvtsp::Instance;

namespace {

// Costs are scaled by a common denominator and doubled, so the search runs
// on machine integers whenever they fit and on exact rationals otherwise.
template <typename Cost>
class TourSearch {
 public:
  TourSearch(const Instance& inst, std::vector<Cost> doubled_costs, std::uint64_t max_nodes)
      : inst_(inst), cost2_(std::move(doubled_costs)), max_nodes_(max_nodes) {
    n_ = inst.n;
    edges_ = complete_edges_with_loops(n_);
    cheapest_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      cheapest_[v] = cost2_[edge_index(n_, v, v)] / 2;
      for (std::size_t w = 0; w < n_; ++w) {
        if (w != v && cost2_[edge_index(n_, v, w)] / 2 < cheapest_[v]) cheapest_[v] = cost2_[edge_index(n_, v, w)] / 2;
      }
    }
    rem_.resize(n_);
    pending_ = Cost(0);
    for (std::size_t v = 0; v < n_; ++v) {
      rem_[v] = 2 * inst.requests[v];
      pending_ += cheapest_[v] * rem_[v];
    }
    z_.assign(edges_.size(), 0);
  }

  // A Hamiltonian cycle (or the doubled edge, or the loop) plus loops for
  // the remaining visits.
  void seed() {
    IntVector z(edges_.size(), 0);
    if (n_ == 1) {
      z[0] = inst_.requests[0];
    } else {
      for (std::size_t v = 0; v < n_; ++v) {
        z[edge_index(n_, v, (v + 1) % n_)] += 1;
        z[edge_index(n_, v, v)] += inst_.requests[v] - 1;
      }
    }
    best_z_ = z;
    best_ = Cost(0);
    for (std::size_t i = 0; i < z.size(); ++i) best_ += cost2_[i] * z[i];
  }

  void run() { descend(0, Cost(0)); }

  const IntVector& best_z() const { return best_z_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void assign(std::size_t i, std::int64_t k, const Cost& acc) {
    const Edge& e = edges_[i];
    const std::int64_t d = e.is_loop() ? 2 * k : k;
    rem_[e.u] -= d;
    pending_ -= cheapest_[e.u] * d;
    if (!e.is_loop()) {
      rem_[e.v] -= k;
      pending_ -= cheapest_[e.v] * k;
    }
    z_[i] = k;
    descend(i + 1, acc + cost2_[i] * k);
    z_[i] = 0;
    rem_[e.u] += d;
    pending_ += cheapest_[e.u] * d;
    if (!e.is_loop()) {
      rem_[e.v] += k;
      pending_ += cheapest_[e.v] * k;
    }
  }

  void descend(std::size_t i, const Cost& acc) {
    if (++nodes_ > max_nodes_) throw Error(ErrorKind::kBudgetExceeded, "oracle node budget exhausted");
    if (!(acc + pending_ < best_)) return;
    if (i == edges_.size()) {
      if (support_connected()) {
        best_ = acc;
        best_z_ = z_;
      }
      return;
    }
    const Edge& e = edges_[i];
    if (e.is_loop()) {
      if (e.u == n_ - 1) {
        if (rem_[e.u] % 2 == 0) assign(i, rem_[e.u] / 2, acc);
        return;
      }
      for (std::int64_t k = 0; 2 * k <= rem_[e.u]; ++k) assign(i, k, acc);
      return;
    }
    if (e.v == n_ - 1) {
      if (rem_[e.u] <= rem_[e.v]) assign(i, rem_[e.u], acc);
      return;
    }
    const std::int64_t top = std::min(rem_[e.u], rem_[e.v]);
    for (std::int64_t k = 0; k <= top; ++k) assign(i, k, acc);
  }

  bool support_connected() const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = n_;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (z_[i] == 0 || edges_[i].is_loop()) continue;
      const std::size_t a = find(edges_[i].u);
      const std::size_t b = find(edges_[i].v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  const Instance& inst_;
  std::vector<Cost> cost2_;
  std::uint64_t max_nodes_;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Cost> cheapest_;  // doubled lower bound per unit of degree
  std::vector<std::int64_t> rem_;
  Cost pending_;
  IntVector z_;
  IntVector best_z_;
  Cost best_;
  std::uint64_t nodes_ = 0;
};

template <typename Cost>
MvtspOptimum run_search(const Instance& inst, std::vector<Cost> cost2, std::uint64_t max_nodes) {
  TourSearch<Cost> search(inst, std::move(cost2), max_nodes);
  search.seed();
  search.run();
  MvtspOptimum out;
  out.z = EdgeMultiplicity::from_dense(inst.n, search.best_z());
  out.cost = mvtsp::tour_cost(inst, out.z);
  out.nodes = search.nodes();
  return out;
}

}  // namespace

MvtspOptimum exact_mvtsp(const Instance& inst, const OracleBudget& budget) {
  mvtsp::validate_shape(inst);
  if (inst.n > budget.max_vertices) {
    throw Error(ErrorKind::kBudgetExceeded, "n = " + std::to_string(inst.n) + " exceeds the vertex budget " +
                                                std::to_string(budget.max_vertices));
  }
  if (inst.total_requests() > budget.max_total_visits) {
    throw Error(ErrorKind::kBudgetExceeded, "r(V) = " + std::to_string(inst.total_requests()) +
                                                " exceeds the visit budget " + std::to_string(budget.max_total_visits));
  }

  const std::vector<Edge> edges = complete_edges_with_loops(inst.n);
  BigInt scale = 1;
  for (const Edge& e : edges) {
    scale = boost::multiprecision::lcm(scale, BigInt(boost::multiprecision::denominator(inst.cost(e.u, e.v))));
  }
  std::vector<BigInt> scaled;
  BigInt largest = 0;
  for (const Edge& e : edges) {
    const Rational c = inst.cost(e.u, e.v);
    scaled.push_back(2 * boost::multiprecision::numerator(c) * (scale / boost::multiprecision::denominator(c)));
    largest = std::max(largest, scaled.back());
  }
  // Every partial sum stays below (2 r(V) + 1) * largest.
  if (largest * (2 * inst.total_requests() + 1) < BigInt(std::numeric_limits<std::int64_t>::max() / 2)) {
    std::vector<std::int64_t> cost2;
    for (const BigInt& c : scaled) cost2.push_back(c.convert_to<std::int64_t>());
    return run_search(inst, std::move(cost2), budget.max_nodes);
  }
  std::vector<Rational> cost2;
  for (const Edge& e : edges) cost2.push_back(2 * inst.cost(e.u, e.v));
  return run_search(inst, std::move(cost2), budget.max_nodes);
}

BdgpeOptimum exact_bdgpe(const rounding::BdgpeInstance& inst, const OracleBudget& budget) {
  rounding::validate(inst);
  if (inst.pair.size() > budget.max_ground_size) {
    throw Error(ErrorKind::kBudgetExceeded, "ground set of " + std::to_string(inst.pair.size()) +
                                                " exceeds the budget " + std::to_string(budget.max_ground_size));
  }
  BdgpeOptimum out;
  gpoly::for_each_integer_point(inst.pair, [&](const IntVector& x) {
    if (++out.points > budget.max_nodes) throw Error(ErrorKind::kBudgetExceeded, "oracle point budget exhausted");
    for (const rounding::Hyperedge& h : inst.hyperedges) {
      const std::int64_t w = h.weight(x);
      if ((h.f && w < *h.f) || (h.g && w > *h.g)) return true;
    }
    Rational c = weighted_sum(inst.costs, x);
    if (!out.z || c < out.cost) {
      out.z = x;
      out.cost = std::move(c);
    }
    return true;
  });
  return out;
}

Rational lp_lower_bound(const rounding::BdgpeInstance& inst) {
  rounding::validate(inst);
  return lp::solve(rounding::build_lp(inst)).objective_value;
}

Rational lp_lower_bound(const Instance& inst) { return lp_lower_bound(approx::degree_instance(inst)); }

}  // namespace mvapx::oracles
