#include <gtest/gtest.h>

#include <cmath>

#include "dyno/colouring.hpp"
#include "dyno/oracles.hpp"
#include "dyno/trace.hpp"
#include "support/gen.hpp"

using namespace dyno;

namespace {

std::vector<std::int64_t> all_colours(Colouring& c, int n) {
  std::vector<std::int64_t> out;
  for (Vertex v = 0; v < n; ++v) out.push_back(c.colour(v).code);
  return out;
}

std::int64_t radix_product(const std::vector<int>& r) {
  std::int64_t p = 1;
  for (int x : r) p *= x;
  return p;
}

}  // namespace

TEST(Colouring, EmptyGraph) {
  GraphState g(testgen::small_params(3, 8));
  ArbEngine a(g);
  Colouring cf(a, ColourMode::kForest), cp(a, ColourMode::kPseudoforest);
  EXPECT_EQ(cf.colour(2).code, 0);
  EXPECT_EQ(cf.radices(), (std::vector<int>{2, 2}));
  EXPECT_EQ(cf.colour_count(), 4);
  EXPECT_EQ(cp.colour(2).code, 0);
  EXPECT_EQ(cp.radices(), (std::vector<int>{2}));
  EXPECT_EQ(cp.colour_count(), 2);
}

TEST(Colouring, SingleEdgeDiffersInHDigit) {
  GraphState g(testgen::small_params(3, 8));
  ArbEngine a(g);
  a.insert_edge(0, 1);
  Colouring c(a, ColourMode::kForest);
  ColourCode x = c.colour(0), y = c.colour(1);
  EXPECT_NE(x.digits.back(), y.digits.back());
  EXPECT_NE(x.code, y.code);
  EXPECT_EQ(c.colour(2).digits.back(), 0);
}

TEST(Colouring, CodeIsMixedRadix) {
  GraphState g(testgen::small_params(6, 8));
  ArbEngine a(g);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) a.insert_edge(u, v);
  for (ColourMode mode : {ColourMode::kForest, ColourMode::kPseudoforest}) {
    Colouring c(a, mode);
    for (Vertex v = 0; v < 6; ++v) {
      ColourCode cc = c.colour(v);
      ASSERT_EQ(cc.digits.size(), cc.radices.size());
      std::int64_t code = 0;
      for (std::size_t k = cc.digits.size(); k-- > 0;) {
        ASSERT_LT(cc.digits[k], cc.radices[k]);
        code = code * cc.radices[k] + cc.digits[k];
      }
      EXPECT_EQ(cc.code, code);
      EXPECT_LT(cc.code, c.colour_count());
    }
    EXPECT_EQ(c.colour_count(), radix_product(c.radices()));
  }
}

TEST(Colouring, MatchingTailGetsDigitTwo) {
  GraphState g(testgen::small_params(6, 8));
  ArbEngine a(g, ArbOptions{false, false});
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) a.insert_edge(u, v);
  Colouring c(a, ColourMode::kPseudoforest);
  int tails = 0;
  for (int i = 0; i < a.partitions_used(); ++i)
    for (Vertex v = 0; v < 6; ++v)
      if (a.match_at(i, v) != kNoEdge) {
        EXPECT_EQ(c.colour(v).digits[i], 2);
        ++tails;
      }
  EXPECT_GT(tails, 0);
  EXPECT_TRUE(is_proper(all_colours(c, 6), testgen::edges_of(g)));
}

TEST(Colouring, QueriesAreCounted) {
  GraphState g(testgen::small_params(4, 8));
  ArbEngine a(g);
  a.insert_edge(0, 1);
  a.insert_edge(1, 2);
  Colouring c(a, ColourMode::kForest);
  c.colour(0);
  EXPECT_EQ(c.forest_queries(), a.partitions_used() + 2);
}

TEST(ColouringProperty, ProperAfterEveryUpdate) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 12, am = 1 + static_cast<int>(seed % 3);
    const double eps = seed % 2 ? 1.0 : 0.5;
    GraphState g(testgen::small_params(n, 8, eps));
    ArbEngine a(g, ArbOptions{seed % 4 != 3, false});
    Colouring cf(a, ColourMode::kForest), cp(a, ColourMode::kPseudoforest);
    const int top = static_cast<int>(std::floor((1 + eps) * am));
    for (const TraceOp& op : generate_trace(GenKind::kRandom, n, 300, 200 + seed, am)) {
      if (op.kind == OpKind::kAdd)
        a.insert_edge(op.u, op.v);
      else
        a.delete_edge(op.u, op.v);
      EdgeList es = testgen::edges_of(g);
      ASSERT_TRUE(is_proper(all_colours(cp, n), es));
      ASSERT_LE(cp.colour_count(), 2 * static_cast<std::int64_t>(std::pow(3, top)));
      if (seed % 4 == 3) continue;  // forest mode needs the surplus graph kept acyclic
      ASSERT_TRUE(is_proper(all_colours(cf, n), es));
      ASSERT_LE(cf.colour_count(), std::int64_t{4} << top);
    }
  }
}
