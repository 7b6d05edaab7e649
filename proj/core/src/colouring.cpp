#include "dyno/colouring.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dyno {

std::vector<int> Colouring::radices() const {
  int k = arb_.partitions_used();
  std::vector<int> r;
  if (mode_ == ColourMode::kForest) {
    r.assign(k + 2, 2);
  } else {
    r.assign(k, 3);
    r.push_back(2);
  }
  return r;
}

std::int64_t Colouring::colour_count() const {
  std::int64_t c = 1;
  for (int r : radices()) c *= r;
  return c;
}

// G[M] is a small forest; 2-colour the component of v from its least vertex.
int Colouring::surplus_parity(Vertex v) const {
  const GraphState& g = arb_.refinement().graph();
  std::vector<Vertex> comp{v};
  std::set<Vertex> seen{v};
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (EdgeId e : arb_.surplus_incident(comp[i]))
      if (Vertex y = g.other(e, comp[i]); seen.insert(y).second) comp.push_back(y);
  Vertex root = *seen.begin();
  std::map<Vertex, int> from_root{{root, 0}};
  std::vector<Vertex> q{root};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (EdgeId e : arb_.surplus_incident(q[i])) {
      Vertex y = g.other(e, q[i]);
      if (from_root.emplace(y, from_root[q[i]] + 1).second) q.push_back(y);
    }
  return from_root[v] & 1;
}

ColourCode Colouring::colour(Vertex v) {
  ColourCode c;
  c.radices = radices();
  int k = arb_.partitions_used();
  for (int i = 0; i < k; ++i) {
    if (mode_ == ColourMode::kPseudoforest && arb_.match_at(i, v) != kNoEdge) {
      c.digits.push_back(2);
      continue;
    }
    c.digits.push_back(arb_.forest(i).depth_parity(v));
    ++forest_queries_;
  }
  if (mode_ == ColourMode::kForest) {
    c.digits.push_back(surplus_parity(v));
    ++forest_queries_;
  }
  c.digits.push_back(arb_.refinement().h().depth_parity(v));
  ++forest_queries_;
  std::int64_t scale = 1;
  for (std::size_t j = 0; j < c.digits.size(); ++j) {
    c.code += c.digits[j] * scale;
    scale *= c.radices[j];
  }
  return c;
}

}  // namespace dyno
