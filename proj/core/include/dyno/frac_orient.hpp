#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dyno/graph.hpp"

namespace dyno {

// Edges whose counters changed during one operation, in first-touch order
// and without duplicates.
using ReorientLog = std::vector<EdgeId>;

struct FracCounters {
  long long copy_inserts = 0;
  long long copy_deletes = 0;
  long long reorientations = 0;
  long long longest_chain = 0;
};

// Maintains 1-validity of every copy in the gamma-multigraph: each copy u->v
// satisfies s(u) - s(v) <= 1. Insertions and deletions absorb the load change
// by flipping a maximal chain of tight copies.
class FracOrient {
 public:
  // Lists neighbours x of v whose edge vx may have changed in/out status
  // since v was last accessed.
  using NbrProvider = std::function<void(Vertex, std::vector<Vertex>&)>;
  using LoadHook = std::function<void(Vertex)>;

  explicit FracOrient(GraphState& g);

  void set_provider(NbrProvider p) { provider_ = std::move(p); }
  void set_load_hook(LoadHook h) { load_hook_ = std::move(h); }
  void set_paranoid(bool on) { paranoid_ = on; }

  ReorientLog insert_copy(Vertex u, Vertex v);
  ReorientLog delete_copy(Vertex u, Vertex v);  // removes one copy u -> v
  ReorientLog gamma_insert(Vertex u, Vertex v);
  ReorientLog gamma_delete(Vertex u, Vertex v);

  std::optional<Vertex> tight_out_nbr(Vertex v) const;
  std::optional<Vertex> tight_in_nbr(Vertex v) const;
  void update_nbrs(Vertex v);
  // Brings both directions of the bundle uv in line with its counters.
  void reconcile_edge(Vertex u, Vertex v);

  const std::map<Vertex, EdgeId>& out_nbrs(Vertex v) const { return out_[v]; }
  std::vector<Vertex> in_nbrs(Vertex v) const;
  std::optional<Vertex> in_heap_max(Vertex v) const;

  const FracCounters& counters() const { return counters_; }
  GraphState& graph() { return g_; }
  const GraphState& graph() const { return g_; }

  // Compares v's neighbour sets and heap keys against a direct scan.
  void check_vertex(Vertex v) const;
  void check_all() const;

 private:
  void add(EdgeId e, Vertex u, Vertex v);
  void remove(EdgeId e, Vertex u, Vertex v);
  void reorient(EdgeId e, Vertex u, Vertex v);
  void increment(Vertex u);
  void decrement(Vertex u);
  void link_nbr(EdgeId e, Vertex u, Vertex v);
  void unlink_nbr(EdgeId e, Vertex u, Vertex v);
  bool listed(EdgeId e, Vertex u) const;
  void note(EdgeId e);
  void ensure(EdgeId e);
  void begin_log();

  GraphState& g_;
  NbrProvider provider_;
  LoadHook load_hook_;
  bool paranoid_ = false;
  std::vector<std::map<Vertex, EdgeId>> out_;
  std::vector<std::set<std::pair<int, Vertex>>> in_;
  // Per edge and direction (0: tail_end -> head_end): listed flag and cached key.
  std::vector<std::array<char, 2>> present_;
  std::vector<std::array<int, 2>> key_;
  std::vector<unsigned> seen_;
  unsigned epoch_ = 0;
  ReorientLog log_;
  std::vector<Vertex> scratch_;
  FracCounters counters_;
};

}  // namespace dyno
