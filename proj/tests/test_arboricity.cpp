#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "dyno/arboricity.hpp"
#include "dyno/oracles.hpp"
#include "support/gen.hpp"

using namespace dyno;

namespace {

EdgeList ends(const GraphState& g, const std::vector<EdgeId>& es) {
  EdgeList out;
  for (EdgeId e : es) out.emplace_back(g.tail_end(e), g.head_end(e));
  return out;
}

// Components of G[M] found by a plain DSU; no partition may repeat inside one.
bool surplus_colourful(ArbEngine& a) {
  GraphState& g = a.graph();
  std::vector<Vertex> up(g.n());
  for (Vertex v = 0; v < g.n(); ++v) up[v] = v;
  auto find = [&](Vertex v) {
    while (up[v] != v) v = up[v] = up[up[v]];
    return v;
  };
  std::vector<EdgeId> m = a.surplus_edges();
  for (EdgeId e : m) up[find(g.tail_end(e))] = find(g.head_end(e));
  std::set<std::pair<Vertex, int>> used;
  for (EdgeId e : m)
    if (!used.insert({find(g.tail_end(e)), a.partition(e)}).second) return false;
  return true;
}

void expect_decomposition(ArbEngine& a) {
  GraphState& g = a.graph();
  std::multiset<EdgeId> covered;
  for (const auto& f : a.forests()) {
    ASSERT_TRUE(is_forest(ends(g, f)));
    covered.insert(f.begin(), f.end());
  }
  std::vector<EdgeId> h = a.refinement().h_edges();
  ASSERT_TRUE(is_forest(ends(g, h)));
  covered.insert(h.begin(), h.end());
  auto ids = g.edge_ids();
  ASSERT_EQ(covered, std::multiset<EdgeId>(ids.begin(), ids.end()));
  ASSERT_TRUE(surplus_colourful(a));
}

int nonempty_forests(const ArbEngine& a) {
  int k = !a.refinement().h_edges().empty();
  for (const auto& f : a.forests()) k += !f.empty();
  return k;
}

std::vector<int> loads_from_counts(const GraphState& g) {
  std::vector<int> s(g.n(), 0);
  for (EdgeId e : g.edge_ids()) {
    s[g.tail_end(e)] += g.count(e, g.tail_end(e));
    s[g.head_end(e)] += g.count(e, g.head_end(e));
  }
  return s;
}

}  // namespace

TEST(Arboricity, SingleEdgeSitsInH) {
  GraphState g(testgen::small_params(4, 8));
  ArbEngine a(g);
  a.insert_edge(0, 1);
  EdgeId e = g.find(0, 1);
  EXPECT_TRUE(a.refinement().in_h(e));
  EXPECT_EQ(a.placement(e), Placement::kNone);
  EXPECT_EQ(nonempty_forests(a), 1);
  a.check();
  a.delete_edge(0, 1);
  EXPECT_EQ(nonempty_forests(a), 0);
  a.check();
}

TEST(Arboricity, CompleteGraphOnFive) {
  GraphState g(testgen::small_params(5, 16));
  ArbEngine a(g, ArbOptions{true, true});
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) a.insert_edge(u, v);
  expect_decomposition(a);
  // Arboricity 3, so at most floor(1.5 * 3) + 2 forests.
  EXPECT_LE(nonempty_forests(a), 6);
  a.check();
}

TEST(Arboricity, PendingEdgesGetPlaced) {
  GraphState g(testgen::small_params(6, 8));
  ArbEngine a(g);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) a.insert_edge(u, v);
  for (EdgeId e : g.edge_ids()) {
    if (a.refinement().in_h(e)) continue;
    EXPECT_TRUE(a.placement(e) == Placement::kForest || a.placement(e) == Placement::kMatch);
    EXPECT_GE(a.partition(e), 0);
  }
  expect_decomposition(a);
}

TEST(Arboricity, InvertUnicycleKeepsLoads) {
  GraphState g(testgen::small_params(6, 8));
  ArbEngine a(g, ArbOptions{false, false});
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) a.insert_edge(u, v);
  int inverted = 0;
  for (int i = 0; i < a.num_partitions(); ++i) {
    for (Vertex v = 0; v < 6; ++v) {
      if (a.match_at(i, v) == kNoEdge) continue;
      EdgeId m = a.match_at(i, v);
      Vertex x = g.other(m, v);
      std::vector<int> before = loads_from_counts(g);
      a.invert_unicycle(i, v);
      EXPECT_EQ(loads_from_counts(g), before);
      for (Vertex w = 0; w < 6; ++w) EXPECT_EQ(g.load(w), before[w]);
      EXPECT_EQ(a.match_at(i, x), m) << "the matching edge now hangs off the other end";
      EXPECT_EQ(a.match_at(i, v), kNoEdge);
      ++inverted;
    }
  }
  EXPECT_GT(inverted, 0);
}

TEST(Arboricity, OscillationRegression) {
  // This trace once made the surplus repair swap the same two edges forever.
  const int seed = 212;
  std::mt19937 rng(seed);
  GraphState g(testgen::small_params(12, seed % 2 ? 8 : 16));
  ArbEngine a(g);
  for (int op = 0; op < 1500; ++op) {
    int u = rng() % 12, v = rng() % 12;
    if (u == v) continue;
    if (g.find(u, v) == kNoEdge) {
      if (g.num_edges() < static_cast<std::size_t>(30 + seed % 25)) a.insert_edge(u, v);
    } else {
      a.delete_edge(u, v);
    }
  }
  a.check();
  expect_decomposition(a);
}

TEST(ArboricityProperty, DecompositionUnderChurn) {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const int n = 11;
    const double eps = 0.5;
    GraphState g(testgen::small_params(n, seed % 2 ? 8 : 16, eps));
    ArbEngine a(g, ArbOptions{true, seed < 4});
    for (const TraceOp& op : testgen::churn(n, 300, 28, seed + 500)) {
      if (op.kind == OpKind::kAdd)
        a.insert_edge(op.u, op.v);
      else
        a.delete_edge(op.u, op.v);
      a.check();
      expect_decomposition(a);
      EdgeList es = testgen::edges_of(g);
      int alpha = es.empty() ? 0 : exact_arboricity(es);
      ASSERT_LE(nonempty_forests(a), static_cast<int>(std::floor((1 + eps) * alpha)) + 2);
    }
  }
}

TEST(ArboricityProperty, WithoutSurplusPartitionsArePseudoforests) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 10;
    GraphState g(testgen::small_params(n, 8));
    ArbEngine a(g, ArbOptions{false, false});
    for (const TraceOp& op : testgen::churn(n, 300, 26, seed + 900)) {
      if (op.kind == OpKind::kAdd)
        a.insert_edge(op.u, op.v);
      else
        a.delete_edge(op.u, op.v);
      a.check();
      std::map<int, EdgeList> parts;
      for (EdgeId e : g.edge_ids())
        if (!a.refinement().in_h(e)) parts[a.partition(e)].emplace_back(g.tail_end(e), g.head_end(e));
      for (auto& [i, es] : parts) ASSERT_TRUE(is_pseudoforest(es)) << "partition " << i;
    }
  }
}
