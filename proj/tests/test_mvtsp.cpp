#include <gtest/gtest.h>

#include <algorithm>

#include "mvapx/errors.hpp"
#include "mvapx/mvtsp.hpp"
#include "walks.hpp"

namespace mvapx::mvtsp {
namespace {

using testing::walk_edges;

Instance unit_triangle(IntVector r) {
  Instance inst;
  inst.n = 3;
  inst.requests = std::move(r);
  inst.costs.assign(9, Rational(1));
  for (std::size_t v = 0; v < 3; ++v) inst.costs[v * 3 + v] = 2;
  return inst;
}

EdgeMultiplicity edges_of(std::initializer_list<std::tuple<std::size_t, std::size_t, std::int64_t>> list) {
  EdgeMultiplicity z;
  for (const auto& [u, v, m] : list) z.add(Edge::make(u, v), m);
  return z;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

TEST(MvtspEdges, DenseRoundTripAndDegrees) {
  const EdgeMultiplicity z = edges_of({{0, 0, 2}, {0, 2, 1}, {1, 2, 3}});
  EXPECT_EQ(z.dense(3), (IntVector{2, 0, 1, 0, 3, 0}));
  EXPECT_EQ(EdgeMultiplicity::from_dense(3, z.dense(3)), z);
  EXPECT_EQ(z.degrees(3), (std::vector<std::int64_t>{5, 3, 4}));
  EXPECT_EQ(z.total(), 6);
  EXPECT_EQ(edge_index(3, 2, 1), 4u);
}

TEST(MvtspFeasible, Examples) {
  Instance one;
  one.n = 1;
  one.costs = {Rational(3)};
  one.requests = {4};
  EXPECT_TRUE(check_feasible(one, edges_of({{0, 0, 4}})));
  EXPECT_TRUE(check_feasible(unit_triangle({1, 1, 1}), edges_of({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})));
  const auto split = check_feasibility(unit_triangle({1, 1, 1}), edges_of({{0, 0, 1}, {1, 2, 2}}));
  EXPECT_FALSE(split.ok());
  EXPECT_TRUE(split.degrees_ok);
  EXPECT_FALSE(split.connected);
  const auto off = check_feasibility(unit_triangle({1, 1, 1}), edges_of({{0, 1, 2}, {1, 2, 1}}));
  EXPECT_FALSE(off.degrees_ok);
  EXPECT_EQ(off.vertex, std::optional<std::size_t>(1));
  EXPECT_NE(off.message().find("vertex 1"), std::string::npos);
}

TEST(MvtspCost, Examples) {
  const Instance tri = unit_triangle({1, 1, 1});
  EXPECT_EQ(tour_cost(tri, EdgeMultiplicity{}), Rational(0));
  EXPECT_EQ(tour_cost(tri, edges_of({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})), Rational(3));
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testing::line_instance({0, 3, 4, 9}, {1, 1, 1, 1});
    const EdgeMultiplicity z = testing::random_eulerian(rng, 4, 3);
    Rational by_dense = 0;
    const auto dense = z.dense(4);
    const auto edges = complete_edges_with_loops(4);
    for (std::size_t i = 0; i < edges.size(); ++i) by_dense += inst.cost(edges[i].u, edges[i].v) * dense[i];
    EXPECT_EQ(tour_cost(inst, z), by_dense);
  }
}

TEST(MvtspCycles, Triangle) {
  const CycleCover once = cycle_decompose(3, edges_of({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
  ASSERT_EQ(once.size(), 1u);
  EXPECT_EQ(once[0].vertices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(once[0].mu, 1);
  const CycleCover five = cycle_decompose(3, edges_of({{0, 1, 5}, {1, 2, 5}, {0, 2, 5}}));
  ASSERT_EQ(five.size(), 1u);
  EXPECT_EQ(five[0].mu, 5);
}

TEST(MvtspCycles, LoopsAndDoubleEdges) {
  const CycleCover cover = cycle_decompose(2, edges_of({{0, 0, 3}, {0, 1, 4}}));
  ASSERT_EQ(cover.size(), 2u);
  EXPECT_EQ(cover[0].vertices, std::vector<std::size_t>{0});
  EXPECT_EQ(cover[0].mu, 3);
  EXPECT_EQ(cover[1].vertices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(cover[1].mu, 2);
  EXPECT_TRUE(cycle_decompose(3, EdgeMultiplicity{}).empty());
}

TEST(MvtspCycles, Errors) {
  EXPECT_EQ(kind_of([] { cycle_decompose(3, edges_of({{0, 1, 1}})); }), ErrorKind::kOddDegree);
  EXPECT_EQ(kind_of([] { cycle_decompose(4, edges_of({{0, 1, 2}, {2, 3, 2}})); }),
            ErrorKind::kDisconnected);
}

TEST(MvtspCycles, RandomRecomposition) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    const EdgeMultiplicity z = testing::random_eulerian(rng, n, 4);
    const CycleCover cover = cycle_decompose(n, z);
    EXPECT_EQ(recompose(cover), z) << "trial " << trial;
    EXPECT_LE(cover.size(), n * (n + 1) / 2);
    for (const Cycle& c : cover) {
      EXPECT_GE(c.mu, 1);
      std::vector<std::size_t> sorted = c.vertices;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end()) << "not simple";
    }
  }
}

TEST(MvtspEuler, Triangle) {
  EXPECT_EQ(eulerian_circuit(3, {{0, 1}, {1, 2}, {0, 2}}), (std::vector<std::size_t>{0, 1, 2, 0}));
}

TEST(MvtspEuler, TwoTrianglesSharingAVertex) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}};
  const auto circuit = eulerian_circuit(5, edges);
  ASSERT_EQ(circuit.size(), 7u);
  EXPECT_EQ(circuit.front(), circuit.back());
  std::vector<std::size_t> open(circuit.begin(), circuit.end() - 1);
  EXPECT_EQ(walk_edges(open), walk_edges({0, 1, 2, 0, 3, 4}));
}

TEST(MvtspEuler, Errors) {
  EXPECT_EQ(kind_of([] { eulerian_circuit(3, {{0, 1}}); }), ErrorKind::kNotEulerian);
  EXPECT_EQ(kind_of([] { eulerian_circuit(4, {{0, 1}, {0, 1}, {2, 3}, {2, 3}}); }),
            ErrorKind::kNotEulerian);
  EXPECT_TRUE(eulerian_circuit(2, {}).empty());
  EXPECT_EQ(eulerian_circuit(2, {{1, 1}}), (std::vector<std::size_t>{1, 1}));
}

TEST(MvtspEuler, AuxiliaryGraphsOfRandomCovers) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    const CycleCover cover = cycle_decompose(n, testing::random_eulerian(rng, n, 4));
    std::vector<Edge> aux;
    EdgeMultiplicity expected;
    for (const Cycle& c : cover) {
      for (const Edge& e : cycle_edges(c)) {
        aux.push_back(e);
        expected.add(e, 1);
      }
    }
    const auto circuit = eulerian_circuit(n, aux);
    ASSERT_EQ(circuit.size(), aux.size() + 1);
    EXPECT_EQ(circuit.front(), circuit.back());
    std::vector<std::size_t> open(circuit.begin(), circuit.end() - 1);
    EXPECT_EQ(walk_edges(open), expected) << "trial " << trial;
  }
}

TEST(MvtspImplicit, SingleCycle) {
  const ImplicitTour once = implicit_order(3, {{{0, 1, 2}, 1}});
  EXPECT_EQ(once.expand(100), (std::vector<std::size_t>{0, 1, 2}));
  const ImplicitTour thrice = implicit_order(3, {{{0, 1, 2}, 3}});
  EXPECT_EQ(thrice.visits(3), (std::vector<std::int64_t>{3, 3, 3}));
  EXPECT_EQ(thrice.edges(), edges_of({{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}));
}

TEST(MvtspImplicit, ExpansionMatchesCover) {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    const EdgeMultiplicity z = testing::random_eulerian(rng, n, 3);
    if (z.total() > 12) continue;
    const CycleCover cover = cycle_decompose(n, z);
    const ImplicitTour tour = implicit_order(n, cover);
    const auto walk = tour.expand(1000);
    std::vector<std::int64_t> counted(n, 0);
    for (std::size_t v : walk) ++counted[v];
    const auto d = z.degrees(n);
    for (std::size_t v = 0; v < n; ++v) EXPECT_EQ(counted[v] * 2, d[v]);
    EXPECT_EQ(walk_edges(walk), z) << "trial " << trial;
    EXPECT_EQ(tour.edges(), z);
  }
}

// Explicit-sequence reference for shortcutting.
EdgeMultiplicity shortcut_explicit(std::vector<std::size_t> walk, const IntVector& r) {
  std::vector<std::int64_t> visits(r.size(), 0);
  for (std::size_t v : walk) ++visits[v];
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::int64_t extra = visits[w] - r[w];
    for (std::size_t i = walk.size(); i-- > 0 && extra > 0;) {
      if (walk[i] == w) {
        walk.erase(walk.begin() + static_cast<std::ptrdiff_t>(i));
        --extra;
      }
    }
  }
  return walk_edges(walk);
}

TEST(MvtspShortcut, ExactTourUnchanged) {
  const Instance tri = unit_triangle({2, 2, 2});
  const EdgeMultiplicity z = edges_of({{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
  const ImplicitTour tour = implicit_order(3, cycle_decompose(3, z));
  EXPECT_EQ(shortcut(tri, tour), z);
}

TEST(MvtspShortcut, TwoVertexSurplus) {
  // c(0,1) = 1, loops 2. Walk visits vertex 0 three times, r(0) = 2.
  Instance inst;
  inst.n = 2;
  inst.costs = {Rational(2), Rational(1), Rational(1), Rational(2)};
  inst.requests = {2, 1};
  const EdgeMultiplicity z = edges_of({{0, 0, 2}, {0, 1, 2}});
  const ImplicitTour tour = implicit_order(2, cycle_decompose(2, z));
  EXPECT_EQ(tour.visits(2), (std::vector<std::int64_t>{3, 1}));
  const EdgeMultiplicity out = shortcut(inst, tour);
  EXPECT_EQ(out.degrees(2), (std::vector<std::int64_t>{4, 2}));
  EXPECT_TRUE(check_feasible(inst, out));
  EXPECT_LE(tour_cost(inst, out), tour_cost(inst, z));
}

TEST(MvtspShortcut, DeficitVisit) {
  const Instance tri = unit_triangle({2, 1, 1});
  const ImplicitTour tour = implicit_order(3, {{{0, 1, 2}, 1}});
  EXPECT_EQ(kind_of([&] { shortcut(tri, tour); }), ErrorKind::kDeficitVisit);
}

TEST(MvtspShortcut, MatchesExplicitRemovalAndKeepsFeasibility) {
  Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    const EdgeMultiplicity z = testing::random_eulerian(rng, n, 4);
    const ImplicitTour tour = implicit_order(n, cycle_decompose(n, z));
    const auto visits = tour.visits(n);
    IntVector r(n);
    for (std::size_t v = 0; v < n; ++v) r[v] = rng.uniform(1, visits[v]);
    std::vector<std::int64_t> pos(n);
    for (auto& p : pos) p = rng.uniform(0, 10);
    const Instance inst = testing::line_instance(pos, r);
    const EdgeMultiplicity out = shortcut(inst, tour);
    EXPECT_TRUE(check_feasible(inst, out)) << "trial " << trial;
    EXPECT_LE(tour_cost(inst, out), tour_cost(inst, z));
    if (tour.length() <= 200) {
      EXPECT_EQ(out, shortcut_explicit(tour.expand(200), r)) << "trial " << trial;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(MvtspShortcut, LargeMultiplicitiesStayCompact) {
  // A triangle traversed 10^12 times, shortcut down to r = (10^12, 1, 1).
  const std::int64_t big = 1'000'000'000'000;
  Instance inst = testing::line_instance({0, 1, 2}, {big, 1, 1});
  const EdgeMultiplicity z = edges_of({{0, 1, big}, {1, 2, big}, {0, 2, big}});
  const ImplicitTour tour = implicit_order(3, cycle_decompose(3, z));
  const ImplicitTour cut = shortcut_walk(3, tour, inst.requests);
  EXPECT_LE(cut.segments.size(), 10u);
  const EdgeMultiplicity out = cut.edges();
  EXPECT_TRUE(check_feasible(inst, out));
  EXPECT_EQ(out.get({0, 0}), big - 1);
}

}  // namespace
}  // namespace mvapx::mvtsp
