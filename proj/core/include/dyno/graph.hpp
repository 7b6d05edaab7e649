#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dyno/common.hpp"

namespace dyno {

// All fractional quantities are integers over the implicit denominator gamma.
struct Params {
  int n_cap = 0;
  double epsilon = 0.5;
  int gamma = 8;
  int delta_num = 2;
  int mu_num = 1;
  std::optional<int> alpha_max;
  int eta_num = 1;

  void validate() const;

  // eps' = eps/20, gamma = ceil(log2(n) / eps'^2) clamped to [3, gamma_cap],
  // delta = 2/gamma, mu = 1/gamma.
  static Params from_recipe(int n_cap, double epsilon, int gamma_cap,
                            std::optional<int> alpha_max = std::nullopt);

  int lo_open() const { return delta_num; }             // delta * gamma
  int hi_open() const { return gamma - delta_num; }     // (1 - delta) * gamma
  int lo_closed() const { return delta_num - mu_num; }  // (delta - mu) * gamma
  int hi_closed() const { return gamma - delta_num + mu_num; }
};

struct EdgeBundle {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  int count_u = 0;  // copies oriented u -> v
  int count_v = 0;  // copies oriented v -> u
};

// Storage that temporarily owns the counters of an edge (a forest keeping
// the weights of its edges under lazy path updates).
class BundleHome {
 public:
  virtual ~BundleHome() = default;
  virtual int home_count(EdgeId e, Vertex from) const = 0;
  virtual void home_set(EdgeId e, Vertex from, int count) = 0;
};

class GraphState {
 public:
  explicit GraphState(const Params& params);

  const Params& params() const { return params_; }
  int n() const { return params_.n_cap; }
  int gamma() const { return params_.gamma; }

  std::optional<EdgeBundle> get_bundle(Vertex u, Vertex v) const;
  // Replaces the counters and shifts both loads by the difference.
  void set_bundle(Vertex u, Vertex v, int count_u, int count_v);

  EdgeId find(Vertex u, Vertex v) const;
  EdgeId add_edge(Vertex u, Vertex v);
  void remove_edge(EdgeId e);
  bool alive(EdgeId e) const {
    return e >= 0 && e < static_cast<EdgeId>(edges_.size()) && edges_[e].alive;
  }
  Vertex tail_end(EdgeId e) const { return edges_[e].u; }
  Vertex head_end(EdgeId e) const { return edges_[e].v; }
  Vertex other(EdgeId e, Vertex x) const {
    return edges_[e].u == x ? edges_[e].v : edges_[e].u;
  }

  int count(EdgeId e, Vertex from) const;
  // Raw counter write; loads are the caller's business.
  void write_count(EdgeId e, Vertex from, int c);

  int load(Vertex v) const { return load_[v]; }
  void add_load(Vertex v, int d) { load_[v] += d; }
  int max_load() const;

  BundleHome* home(EdgeId e) const { return edges_[e].home; }
  // Passing nullptr copies the counters back out of the current home.
  // A non-null home must already hold the current counters.
  void set_home(EdgeId e, BundleHome* h);

  const std::vector<EdgeId>& edge_ids() const { return ids_; }
  std::size_t num_edges() const { return ids_.size(); }
  int edge_capacity() const { return static_cast<int>(edges_.size()); }

  void check_vertex(Vertex v) const;

 private:
  struct Rec {
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    int cu = 0;
    int cv = 0;
    bool alive = false;
    int pos = -1;
    BundleHome* home = nullptr;
  };

  Params params_;
  std::vector<Rec> edges_;
  std::vector<EdgeId> free_;
  std::vector<EdgeId> ids_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
  std::vector<int> load_;
};

}  // namespace dyno
