#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyno/common.hpp"

namespace dyno {

struct HLEdge {
  Vertex tail = kNoVertex;  // stored explicit direction tail -> head
  Vertex head = kNoVertex;
  bool solid = false;
  bool clean = false;
};

// Explicitly rooted dynamic forest with a heavy-light (solid/dashed)
// decomposition. Dashed edges always point child -> parent; solid edges keep
// whatever direction they had when they became solid, so every vertex has at
// most two explicit out-edges.
class HeavyLightForest {
 public:
  using Refresher = std::function<void(Vertex, Vertex)>;

  explicit HeavyLightForest(int n, Refresher refresher = {});

  void set_refresher(Refresher r) { refresher_ = std::move(r); }

  void link(Vertex u, Vertex v);
  void cut(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  bool connected(Vertex u, Vertex v) const { return root(u) == root(v); }

  std::vector<Vertex> explicit_out_edges(Vertex v) const;
  int out_degree(Vertex v) const { return static_cast<int>(explicit_out_edges(v).size()); }
  HLEdge edge(Vertex u, Vertex v) const;

  // Dashed edges on the tree path between u and v.
  std::vector<std::pair<Vertex, Vertex>> light_edges_between(Vertex u, Vertex v) const;
  // Refreshes every dirty dashed edge on the path; returns how many were refreshed.
  int clean_path(Vertex u, Vertex v);
  // Records that the state behind v's incident bits changed: heavy edges at v
  // are refreshed at once, dashed ones turn dirty.
  void touch(Vertex v);
  bool is_clean(Vertex u, Vertex v) const;
  void refresh(Vertex u, Vertex v);
  std::vector<std::pair<Vertex, Vertex>> heavy_edges_at(Vertex v) const;

  Vertex parent(Vertex v) const { return parent_[v]; }
  Vertex root(Vertex v) const;
  int size(Vertex v) const { return size_[v]; }
  int dashed_on_path(Vertex u, Vertex v) const {
    return static_cast<int>(light_edges_between(u, v).size());
  }
  std::size_t num_edges() const { return edges_.size(); }

  // Full structural self-check; throws ConsistencyError on failure.
  void check() const;

 private:
  struct Rec {
    Vertex tail = kNoVertex;
    bool solid = false;
    std::uint64_t stamp = 0;
  };

  Vertex heavy_child(Vertex v) const;
  std::vector<Vertex> root_path(Vertex v) const;
  void set_size(Vertex v, int s);
  void reroot(Vertex u);
  void reclassify(const std::vector<std::pair<Vertex, Vertex>>& before,
                  const std::vector<Vertex>& touched, bool new_edge_u_v, Vertex nu, Vertex nv);
  Rec& rec(Vertex u, Vertex v);
  const Rec* find(Vertex u, Vertex v) const;

  int n_;
  Refresher refresher_;
  std::vector<Vertex> parent_;
  std::vector<int> size_;
  std::vector<std::set<std::pair<int, Vertex>>> kids_;
  std::vector<std::uint64_t> vstamp_;
  std::uint64_t clock_ = 0;
  std::unordered_map<std::uint64_t, Rec> edges_;
};

}  // namespace dyno
