#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dyno/common.hpp"

namespace dyno {

// One edge changing partition. `from` < 0: the edge enters; `to` < 0: it
// leaves. `tail` is the edge's out-vertex after the move.
struct Move {
  EdgeId edge = kNoEdge;
  Vertex tail = kNoVertex;
  int from = -1;
  int to = -1;
  friend bool operator==(const Move&, const Move&) = default;
};
using MoveLog = std::vector<Move>;

// Splits an out-degree-d orientation into d out-degree-1 partitions. Every
// vertex keeps its out-edges in partitions 0 .. outdeg-1.
class PseudoSplit {
 public:
  // Returns the out-edge of v stored in partition i. Without a resolver the
  // split keeps its own slot table.
  using Resolver = std::function<EdgeId(Vertex, int)>;

  explicit PseudoSplit(int n);

  void set_resolver(Resolver r) { resolver_ = std::move(r); }

  MoveLog on_insert(EdgeId e, Vertex tail);
  MoveLog on_delete(EdgeId e, Vertex tail);
  MoveLog on_reorient(EdgeId e, Vertex old_tail, Vertex new_tail);
  // Exchanges the partitions of two out-edges of the same vertex.
  void swap_parts(EdgeId a, EdgeId b);

  bool assigned(EdgeId e) const {
    return e >= 0 && e < static_cast<EdgeId>(part_.size()) && part_[e] >= 0;
  }
  int partition_of(EdgeId e) const;
  int out_degree(Vertex v) const { return deg_[v]; }
  int smallest_free(Vertex v) const { return deg_[v]; }
  int largest_used(Vertex v) const { return deg_[v] - 1; }
  EdgeId out_edge(Vertex v, int i) const;
  int partitions_used() const;
  std::vector<EdgeId> edges_in(int i) const;

  long long total_moves() const { return total_moves_; }

  // `oriented` lists every assigned edge with its current tail.
  void check(const std::vector<std::pair<EdgeId, Vertex>>& oriented) const;

 private:
  void ensure(EdgeId e);
  void put(Vertex v, int i, EdgeId e);
  void drop(Vertex v, int i);

  Resolver resolver_;
  std::vector<int> deg_;
  std::vector<int> part_;
  std::vector<std::vector<EdgeId>> slots_;
  long long total_moves_ = 0;
};

}  // namespace dyno
