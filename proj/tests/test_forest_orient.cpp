#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dyno/forest_orient.hpp"
#include "support/gen.hpp"

using namespace dyno;

namespace {

// Heavy means more than half of the parent's subtree, recomputed from scratch.
std::vector<int> naive_sizes(const HeavyLightForest& f, int n) {
  std::vector<int> size(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex x = v; x != kNoVertex; x = f.parent(x)) ++size[x];
  return size;
}

int naive_dashed_on_path(const HeavyLightForest& f, int n, Vertex u, Vertex v) {
  auto size = naive_sizes(f, n);
  std::vector<Vertex> pu, pv;
  for (Vertex x = u; x != kNoVertex; x = f.parent(x)) pu.push_back(x);
  for (Vertex x = v; x != kNoVertex; x = f.parent(x)) pv.push_back(x);
  std::set<Vertex> on_v(pv.begin(), pv.end());
  Vertex lca = kNoVertex;
  for (Vertex x : pu)
    if (on_v.count(x)) {
      lca = x;
      break;
    }
  int k = 0;
  for (auto* p : {&pu, &pv})
    for (Vertex x : *p) {
      if (x == lca) break;
      if (2 * size[x] <= size[f.parent(x)]) ++k;
    }
  return k;
}

void expect_explicit_orientation(const HeavyLightForest& f, int n) {
  auto size = naive_sizes(f, n);
  for (Vertex v = 0; v < n; ++v) {
    ASSERT_LE(f.out_degree(v), 2);
    Vertex p = f.parent(v);
    if (p == kNoVertex) continue;
    HLEdge e = f.edge(v, p);
    ASSERT_EQ(e.solid, 2 * size[v] > size[p]);
    if (!e.solid) ASSERT_EQ(e.tail, v) << "dashed edges point child to parent";
  }
}

}  // namespace

TEST(HeavyLight, LinkTwoSingletons) {
  HeavyLightForest f(2);
  EXPECT_TRUE(f.explicit_out_edges(0).empty());
  f.link(0, 1);
  EXPECT_LE(f.out_degree(0), 1);
  EXPECT_LE(f.out_degree(1), 1);
  EXPECT_EQ(f.out_degree(0) + f.out_degree(1), 1);
  EXPECT_THROW(f.link(1, 0), CycleError);
  f.cut(0, 1);
  EXPECT_EQ(f.out_degree(0) + f.out_degree(1), 0);
  EXPECT_THROW(f.cut(0, 1), NotFoundError);
}

TEST(HeavyLight, PathOfSixteen) {
  HeavyLightForest f(16);
  for (Vertex k = 1; k < 16; ++k) f.link(k, k - 1);
  for (Vertex v = 0; v < 16; ++v) EXPECT_LE(f.out_degree(v), 2);
  expect_explicit_orientation(f, 16);
  f.check();
}

TEST(HeavyLight, StarCentre) {
  HeavyLightForest f(6);
  for (Vertex leaf = 1; leaf <= 5; ++leaf) f.link(leaf, 0);
  EXPECT_LE(f.out_degree(0), 2);
  int total = 0;
  for (Vertex v = 0; v < 6; ++v) total += f.out_degree(v);
  EXPECT_EQ(total, 5);
  expect_explicit_orientation(f, 6);
}

TEST(HeavyLight, HeavyPathHasNoDashedEdges) {
  HeavyLightForest f(8);
  for (Vertex k = 1; k < 8; ++k) f.link(k, k - 1);
  ASSERT_EQ(naive_dashed_on_path(f, 8, 0, 5), 0);
  EXPECT_TRUE(f.light_edges_between(0, 5).empty());
  EXPECT_EQ(f.dashed_on_path(0, 7), naive_dashed_on_path(f, 8, 0, 7));
}

TEST(HeavyLight, BalancedBinaryTree) {
  HeavyLightForest f(31);
  for (Vertex k = 1; k < 31; ++k) f.link(k, (k - 1) / 2);
  // Root is 0; leaves 15..30. Pick one leaf under each child of the root.
  for (Vertex x : {15, 18, 22}) {
    for (Vertex y : {23, 26, 30}) {
      int k = f.dashed_on_path(x, y);
      EXPECT_EQ(k, naive_dashed_on_path(f, 31, x, y));
      EXPECT_LE(k, 2 * 4);
    }
  }
}

TEST(HeavyLight, CleanPathRefreshesOnlyStaleDashedEdges) {
  std::vector<std::pair<Vertex, Vertex>> calls;
  HeavyLightForest f(31, [&](Vertex a, Vertex b) { calls.emplace_back(std::min(a, b), std::max(a, b)); });
  for (Vertex k = 1; k < 31; ++k) f.link(k, (k - 1) / 2);
  f.check();
  // Edges that were never heavy start dirty.
  int dirty = 0;
  for (auto [a, b] : f.light_edges_between(15, 30)) dirty += !f.is_clean(a, b);
  EXPECT_GT(dirty, 0);
  EXPECT_EQ(f.clean_path(15, 30), dirty);
  EXPECT_EQ(f.clean_path(15, 30), 0);

  f.touch(1);
  for (auto [a, b] : f.heavy_edges_at(1)) EXPECT_TRUE(f.is_clean(a, b));
  std::set<std::pair<Vertex, Vertex>> stale;
  for (auto [a, b] : f.light_edges_between(15, 30))
    if (!f.is_clean(a, b)) stale.insert({std::min(a, b), std::max(a, b)});
  calls.clear();
  int k = f.clean_path(15, 30);
  EXPECT_EQ(k, static_cast<int>(stale.size()));
  EXPECT_EQ(std::set(calls.begin(), calls.end()), stale);
  for (auto [a, b] : f.light_edges_between(15, 30)) EXPECT_TRUE(f.is_clean(a, b));
  f.check();
}

TEST(HeavyLightProperty, RandomForestChurn) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    testgen::Rng rng(seed);
    const int n = 100;
    HeavyLightForest f(n, [](Vertex, Vertex) {});
    std::vector<std::pair<Vertex, Vertex>> edges;
    int bound = 2 * static_cast<int>(std::ceil(std::log2(n)));
    for (int step = 0; step < 1000; ++step) {
      Vertex u = rng.below(n), v = rng.below(n);
      if (rng.chance(30) && !edges.empty()) {
        int k = rng.below(static_cast<int>(edges.size()));
        f.cut(edges[k].first, edges[k].second);
        edges.erase(edges.begin() + k);
      } else if (u != v && !f.connected(u, v)) {
        f.link(u, v);
        edges.emplace_back(u, v);
      } else if (u != v) {
        ASSERT_LE(f.dashed_on_path(u, v), bound);
        ASSERT_EQ(f.dashed_on_path(u, v), naive_dashed_on_path(f, n, u, v));
      }
      if (rng.chance(20)) f.touch(rng.below(n));
      expect_explicit_orientation(f, n);
      ASSERT_EQ(f.num_edges(), edges.size());
    }
    f.check();
  }
}
