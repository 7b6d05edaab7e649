#pragma once

#include <functional>
#include <set>
#include <vector>

#include "dyno/dyn_forest.hpp"
#include "dyno/forest_orient.hpp"
#include "dyno/frac_orient.hpp"
#include "dyno/graph.hpp"

namespace dyno {

struct RefinementCounters {
  long long links = 0;
  long long cuts = 0;
  long long inversions = 0;
  long long plain_removals = 0;
  long long max_q = 0;
  long long max_s = 0;
  long long round_ties = 0;
};

// Keeps the set H of evenly split edges as a forest on top of the fractional
// orientation and rounds everything else to an explicit orientation.
class Refinement {
 public:
  using EdgeHook = std::function<void(EdgeId)>;

  explicit Refinement(GraphState& g);

  // Returns every edge whose counters or H membership changed.
  ReorientLog insert_edge(Vertex u, Vertex v);
  ReorientLog delete_edge(Vertex u, Vertex v);
  // Brings H back in line after the edges in q changed counters. Returns the
  // edges that entered or left H, plus q itself.
  ReorientLog process(const ReorientLog& q);

  // Called right before an edge joins H and right after it leaves.
  void set_hooks(EdgeHook before_enter, EdgeHook after_leave) {
    before_enter_ = std::move(before_enter);
    after_leave_ = std::move(after_leave);
  }
  void set_fifo(bool on) { fifo_ = on; }
  // Off when another engine owns the explicit orientation of G - H.
  void set_track_rounding(bool on) { track_rounding_ = on; }
  // Neighbour lists may lag behind until a vertex is accessed.
  void set_lazy_nbr_lists(bool on) { lazy_nbrs_ = on; }
  void set_paranoid(bool on) {
    paranoid_ = on;
    frac_.set_paranoid(on);
  }

  bool in_h(EdgeId e) const { return e < static_cast<EdgeId>(in_h_.size()) && in_h_[e]; }
  bool in_open(EdgeId e) const;
  bool in_closed(EdgeId e) const;

  // Explicit orientation: rounded edges outside H plus the heavy-light
  // directions inside H.
  std::vector<Vertex> rounded_out_nbrs(Vertex v) const;
  int rounded_out_degree(Vertex v) const;
  Vertex rounded_tail(EdgeId e) const;
  // Endpoint holding more copies; ties go to the larger id.
  Vertex count_tail(EdgeId e) const;

  GraphState& graph() { return g_; }
  const GraphState& graph() const { return g_; }
  FracOrient& frac() { return frac_; }
  const FracOrient& frac() const { return frac_; }
  DynForest& h() { return h_; }
  const HeavyLightForest& h_orient() const { return hl_; }
  const RefinementCounters& counters() const { return counters_; }
  std::vector<EdgeId> h_edges() const;

  // Throws ConsistencyError naming the first broken invariant.
  void check(bool with_nbr_lists = true) const;

 private:
  void ensure(EdgeId e);
  void enter_h(EdgeId e);
  void leave_h(EdgeId e);
  void handle_s_edge(EdgeId e);
  void round_edge(EdgeId e);
  void unround(EdgeId e);

  GraphState& g_;
  FracOrient frac_;
  DynForest h_;
  HeavyLightForest hl_;
  EdgeHook before_enter_;
  EdgeHook after_leave_;
  bool fifo_ = false;
  bool paranoid_ = false;
  bool track_rounding_ = true;
  bool lazy_nbrs_ = false;
  std::vector<char> in_h_;
  std::vector<Vertex> tail_;  // rounded tail outside H, kNoVertex otherwise
  std::vector<std::set<Vertex>> round_out_;
  std::vector<EdgeId> changed_;
  RefinementCounters counters_;
};

}  // namespace dyno
