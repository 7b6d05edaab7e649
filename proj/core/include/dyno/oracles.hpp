#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dyno/common.hpp"
#include "dyno/dyn_forest.hpp"
#include "dyno/graph.hpp"
#include "dyno/trace.hpp"

namespace dyno {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// Brute force over vertex subsets; at most 12 non-isolated vertices,
// SizeError otherwise.
int exact_arboricity(const EdgeList& edges);

struct Fraction {
  long long num = 0;
  long long den = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Fraction exact_max_density(const EdgeList& edges);

struct EtaViolation {
  Vertex tail = kNoVertex;
  Vertex head = kNoVertex;
  int gap = 0;  // s(tail) - s(head), in copies
};
// Every edge with a copy tail -> head while s(tail) - s(head) > eta.
std::vector<EtaViolation> check_eta_valid(const GraphState& g, int eta);

bool is_forest(const EdgeList& edges);
bool is_pseudoforest(const EdgeList& edges);
// Arcs are (tail, head).
bool is_acyclic(const EdgeList& arcs);
bool is_proper(const std::vector<std::int64_t>& colour, const EdgeList& edges);

// Out-degree <= delta after every update with few reorientations: edges are
// inserted along shortest out-paths ending below delta, with the trace
// replayed backwards so that the path costs land on deletions. Returns the
// number of reorientations; throws ConsistencyError if no short path exists.
long long offline_reorientations(int n, int delta, const std::vector<TraceOp>& ops);

// Adjacency-map mirror of DynForest with the same root conventions.
class NaiveForest {
 public:
  NaiveForest(int n, int gamma);

  void link(Vertex u, Vertex v, int weight_u);
  void cut(Vertex u, Vertex v);
  bool connected(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  void add_weight(Vertex u, Vertex v, int x);
  int min_weight(Vertex u, Vertex v) const;
  int max_weight(Vertex u, Vertex v) const;
  ForestEdge find_extreme_edge(Vertex u, Vertex v, DynForest::Extreme which) const;
  int weight(Vertex u, Vertex v) const;

  void set_root(Vertex r);
  Vertex find_root(Vertex v) const;
  int depth(Vertex v) const;
  int depth_parity(Vertex v) const { return depth(v) & 1; }

  void set_flag(Vertex u, Vertex v, bool flag);
  std::optional<ForestEdge> find_flagged_edge_on_path(Vertex u, Vertex v) const;

 private:
  struct Rec {
    int w_lo = 0;  // weight seen from the smaller endpoint
    bool flag = false;
  };
  std::vector<Vertex> path(Vertex u, Vertex v) const;
  std::vector<Vertex> component(Vertex v) const;
  int dir_weight(Vertex from, Vertex to) const;

  int n_;
  int gamma_;
  std::vector<std::vector<Vertex>> adj_;
  std::map<std::uint64_t, Rec> rec_;
  std::vector<char> is_root_;
};

}  // namespace dyno
