#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "dyno/dyn_forest.hpp"
#include "dyno/forest_orient.hpp"
#include "dyno/graph.hpp"
#include "dyno/pseudo_split.hpp"
#include "dyno/refinement.hpp"

namespace dyno {

enum class Placement : unsigned char { kNone, kPending, kForest, kMatch };

struct ArbCounters {
  long long inversions = 0;
  long long repair_pairs = 0;  // copies deleted and reinserted
  long long repaired_edges = 0;
  long long placements = 0;
  long long move1 = 0;
  long long move2 = 0;
  long long surplus_steps = 0;
  long long max_component = 0;
};

struct ArbOptions {
  // When off, cycle-closing edges stay in their pseudoforest and the
  // surplus graph is left alone.
  bool surplus = true;
  bool paranoid = false;
};

// Splits G - H into pseudoforests (F_i, M_i) faithful to the rounded
// orientation and keeps the surplus graph G[M] a colourful forest, giving the
// forests F_0 .. F_{k-1}, G[M] and H.
class ArbEngine {
 public:
  explicit ArbEngine(GraphState& g, ArbOptions opt = {});
  ArbEngine(const ArbEngine&) = delete;
  ArbEngine& operator=(const ArbEngine&) = delete;

  void insert_edge(Vertex u, Vertex v);
  void delete_edge(Vertex u, Vertex v);

  int num_partitions() const { return static_cast<int>(parts_.size()); }
  int partitions_used() const { return split_.partitions_used(); }
  Placement placement(EdgeId e) const;
  int partition(EdgeId e) const;
  Vertex structural_tail(EdgeId e);
  // The M_i edge whose tail (the root of its pseudotree) is v.
  EdgeId match_at(int i, Vertex v) const;
  DynForest& forest(int i) { return parts_.at(i)->f; }

  // F_0 .. F_{k-1} followed by G[M]; H is reported by the refinement.
  std::vector<std::vector<EdgeId>> forests() const;
  std::vector<EdgeId> surplus_edges() const;
  std::vector<EdgeId> surplus_incident(Vertex v) const { return sadj_[v]; }

  // Reverses the unicycle whose M_i edge leaves `root`. Returns the edges
  // that became 1-invalid. Exposed for tests.
  std::vector<EdgeId> invert_unicycle(int i, Vertex root);

  GraphState& graph() { return g_; }
  Refinement& refinement() { return ref_; }
  const Refinement& refinement() const { return ref_; }
  const PseudoSplit& split() const { return split_; }
  const ArbCounters& counters() const { return counters_; }
  long long total_moves() const { return split_.total_moves() + counters_.placements; }

  void check();

 private:
  struct Part {
    Part(int n, int gamma) : f(n, gamma), hl(n), m_at(n, kNoEdge) {}
    DynForest f;
    HeavyLightForest hl;
    std::vector<EdgeId> m_at;
  };

  Part& part(int i);
  void ensure(EdgeId e);
  EdgeId resolve(Vertex v, int i);
  void provide(Vertex v, std::vector<Vertex>& out);
  void out_nbrs(Vertex v, std::vector<Vertex>& out);
  void before_enter_h(EdgeId e);

  void apply(const MoveLog& moves);
  void make_pending(EdgeId e, Vertex tail, int i);
  void drop_pending(EdgeId e);
  void remove_from_structure(EdgeId e);
  void unmatch(EdgeId e);
  void place(EdgeId e);
  void reprocess(const ReorientLog& touched);
  void repair(const std::vector<EdgeId>& bad);
  void settle();

  void surplus_add(EdgeId e);
  void surplus_del(EdgeId e);
  void restore_surplus(Vertex v);
  bool move1(EdgeId a, EdgeId b);
  void move2_step(const std::vector<Vertex>& verts, const std::vector<EdgeId>& edges);
  void replace_match(int i, EdgeId m);
  // Shortest walk through edges sharing endpoints, from `from` to the first
  // edge accepted by `goal`.
  std::vector<EdgeId> line_path(const std::vector<EdgeId>& edges, EdgeId from,
                                const std::function<bool(EdgeId)>& goal) const;

  GraphState& g_;
  ArbOptions opt_;
  Refinement ref_;
  PseudoSplit split_;
  std::vector<std::unique_ptr<Part>> parts_;
  std::vector<Placement> kind_;
  std::vector<int> epart_;
  std::vector<Vertex> ptail_;  // tail of a pending edge
  std::vector<Vertex> mtail_;  // tail of a matching edge
  std::vector<char> queued_;
  std::vector<std::vector<EdgeId>> pend_at_;
  std::vector<std::vector<EdgeId>> sadj_;
  std::vector<std::vector<Vertex>> last_out_;
  std::deque<EdgeId> r_;
  std::vector<Vertex> dirty_;
  ArbCounters counters_;
};

}  // namespace dyno
