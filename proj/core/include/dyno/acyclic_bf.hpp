#pragma once

#include <unordered_map>
#include <vector>

#include "dyno/common.hpp"
#include "dyno/pseudo_split.hpp"

namespace dyno {

struct BfStats {
  long long flipped_vertices = 0;
  long long reorientations = 0;
};

struct BfCounters {
  long long inserts = 0;
  long long deletes = 0;
  long long flipped_vertices = 0;
  long long reorientations = 0;
  long long delete_probes = 0;
  long long max_cascade = 0;
};

// Out-degree bound d = 2(alpha_max + 1). Each insertion makes its first
// endpoint a sink; any vertex pushed above d then has its whole out-list
// reversed, overfull vertices handled last-in first-out. The orientation
// stays acyclic, so the pseudo-split partitions it feeds are forests.
class BfEngine {
 public:
  BfEngine(int n, int alpha_max);

  int n() const { return static_cast<int>(out_.size()); }
  int bound() const { return d_; }

  BfStats insert_edge(Vertex u, Vertex v);
  void delete_edge(Vertex u, Vertex v);

  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_.at(v); }
  std::vector<Vertex> out_nbrs(Vertex v) const;
  int out_degree(Vertex v) const { return static_cast<int>(out_.at(v).size()); }
  EdgeId find(Vertex u, Vertex v) const;
  Vertex tail(EdgeId e) const { return ends_[e].first; }
  Vertex head(EdgeId e) const { return ends_[e].second; }
  std::vector<EdgeId> edge_ids() const;
  std::size_t num_edges() const { return index_.size(); }

  const PseudoSplit& split() const { return split_; }
  // Endpoint pairs of the edges in partition i.
  std::vector<std::pair<Vertex, Vertex>> partition_edges(int i) const;
  const BfCounters& counters() const { return counters_; }

  void check() const;

 private:
  void flip_all(Vertex x, std::vector<Vertex>& overfull, BfStats& st);

  int d_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::pair<Vertex, Vertex>> ends_;  // (tail, head)
  std::vector<EdgeId> free_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
  PseudoSplit split_;
  BfCounters counters_;
};

}  // namespace dyno
