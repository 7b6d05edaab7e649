#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "dyno/common.hpp"
#include "dyno/graph.hpp"

namespace dyno {

// A forest edge as seen from a query: `from` is the endpoint nearer the
// query origin, `to` the other one.
struct ForestEdge {
  Vertex from = kNoVertex;
  Vertex to = kNoVertex;
  EdgeId tag = kNoEdge;
  friend bool operator==(const ForestEdge&, const ForestEdge&) = default;
};

// Dynamic forest over vertices [0, n) where every edge wz carries integer
// weights X^w + X^z = gamma. Paths are kept in splay trees (link-cut trees);
// every tree has a designated root which only moves through link, cut and
// set_root.
class DynForest : public BundleHome {
 public:
  DynForest(int n, int gamma);

  int n() const { return n_; }
  int gamma() const { return gamma_; }
  int num_edges() const { return static_cast<int>(edge_nodes_.size()); }

  // Adds uv with X^u = weight_u. The merged tree keeps the root of v's tree.
  void link(Vertex u, Vertex v, int weight_u, EdgeId tag = kNoEdge);
  // Removes uv. The part that loses the root is rooted at its endpoint of uv.
  void cut(Vertex u, Vertex v);
  bool connected(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  // X^w += x for every edge wz on the u..v path with w nearer u.
  void add_weight(Vertex u, Vertex v, int x);
  int min_weight(Vertex u, Vertex v);
  int max_weight(Vertex u, Vertex v);
  enum class Extreme { kMin, kMax };
  // Edge attaining the extreme on the u..v path; ties go to the one nearest u.
  ForestEdge find_extreme_edge(Vertex u, Vertex v, Extreme which);

  int weight(Vertex u, Vertex v);
  void set_weight(Vertex u, Vertex v, int weight_u);
  EdgeId tag_of(Vertex u, Vertex v) const;

  void set_root(Vertex r);
  Vertex find_root(Vertex v);
  // The edge from v towards the root, absent when v is the root.
  std::optional<ForestEdge> first_edge_on_root_path(Vertex v);
  int depth_parity(Vertex v);
  int depth(Vertex v);

  void set_flag(Vertex u, Vertex v, bool flag);
  bool flag(Vertex u, Vertex v);
  std::optional<ForestEdge> find_flagged_edge_on_path(Vertex u, Vertex v);

  // All edges as (a, b) with the orientation they were linked with.
  std::vector<ForestEdge> edges() const;

  // BundleHome over edge tags.
  int home_count(EdgeId e, Vertex from) const override;
  void home_set(EdgeId e, Vertex from, int count) override;

 private:
  struct Node {
    int ch[2] = {-1, -1};
    int par = -1;
    bool rev = false;
    int add = 0;
    bool is_edge = false;
    Vertex a = kNoVertex;
    Vertex b = kNoVertex;
    int xa = 0;      // X^a
    bool dir = false;  // false: in-order runs a -> b
    bool flag = false;
    bool flag_or = false;
    int mn = 0;
    int mx = 0;
    int ecnt = 0;
    int sz = 1;
    EdgeId tag = kNoEdge;
  };

  int fwd(const Node& x) const { return x.dir ? gamma_ - x.xa : x.xa; }
  bool is_aux_root(int x) const;
  void apply_rev(int x);
  void apply_add(int x, int a);
  void push(int x);
  void pull(int x);
  void rotate(int x);
  void splay(int x);
  int access(int x);
  void evert(int x);
  int root_of(int x);
  int expose_path(Vertex u, Vertex v);
  int edge_node(Vertex u, Vertex v) const;
  int new_edge_node();
  void detach_edge_node(int e);
  ForestEdge describe(int e, Vertex from) const;
  int weight_of(int e, Vertex from) const;
  int materialize(int e) const;
  void check(Vertex v) const;

  int n_;
  int gamma_;
  mutable std::vector<Node> t_;
  std::vector<int> free_nodes_;
  std::unordered_map<std::uint64_t, int> edge_nodes_;
  std::unordered_map<EdgeId, int> by_tag_;
  mutable std::vector<int> stack_;
};

}  // namespace dyno
