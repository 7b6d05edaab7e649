#include "dyno/acyclic_bf.hpp"

#include <algorithm>

namespace dyno {

BfEngine::BfEngine(int n, int alpha_max) : d_(2 * (alpha_max + 1)), out_(n), split_(n) {
  if (n < 1) throw ConfigError("vertex count must be positive");
  if (alpha_max < 1) throw ConfigError("alpha_max must be positive");
}

EdgeId BfEngine::find(Vertex u, Vertex v) const {
  auto it = index_.find(pair_key(u, v));
  return it == index_.end() ? kNoEdge : it->second;
}

std::vector<Vertex> BfEngine::out_nbrs(Vertex v) const {
  std::vector<Vertex> out;
  for (EdgeId e : out_.at(v)) out.push_back(ends_[e].second);
  return out;
}

std::vector<EdgeId> BfEngine::edge_ids() const {
  std::vector<EdgeId> ids;
  for (auto [key, e] : index_) ids.push_back(e);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void BfEngine::flip_all(Vertex x, std::vector<Vertex>& overfull, BfStats& st) {
  std::vector<EdgeId> list;
  list.swap(out_[x]);
  for (EdgeId e : list) {
    Vertex y = ends_[e].second;
    ends_[e] = {y, x};
    out_[y].push_back(e);
    split_.on_reorient(e, x, y);
    if (static_cast<int>(out_[y].size()) == d_ + 1) overfull.push_back(y);
  }
  st.reorientations += static_cast<long long>(list.size());
  ++st.flipped_vertices;
}

BfStats BfEngine::insert_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n() || v >= n()) throw NotFoundError("vertex out of range");
  if (u == v) throw SelfLoopError("self-loop");
  if (find(u, v) != kNoEdge) throw DuplicateEdgeError("edge already present");
  EdgeId e;
  if (!free_.empty()) {
    e = free_.back();
    free_.pop_back();
    ends_[e] = {u, v};
  } else {
    e = static_cast<EdgeId>(ends_.size());
    ends_.emplace_back(u, v);
  }
  index_[pair_key(u, v)] = e;
  out_[u].push_back(e);
  split_.on_insert(e, u);

  BfStats st;
  std::vector<Vertex> overfull;
  flip_all(u, overfull, st);
  while (!overfull.empty()) {
    Vertex x = overfull.back();
    overfull.pop_back();
    if (static_cast<int>(out_[x].size()) > d_) flip_all(x, overfull, st);
  }
  ++counters_.inserts;
  counters_.flipped_vertices += st.flipped_vertices;
  counters_.reorientations += st.reorientations;
  counters_.max_cascade = std::max(counters_.max_cascade, st.flipped_vertices - 1);
  return st;
}

void BfEngine::delete_edge(Vertex u, Vertex v) {
  auto it = index_.find(pair_key(u, v));
  if (it == index_.end()) throw NotFoundError("edge not present");
  EdgeId e = it->second;
  index_.erase(it);
  // Search both out-lists, as if the orientation were unknown.
  for (Vertex x : {u, v}) {
    auto& list = out_[x];
    for (std::size_t j = 0; j < list.size(); ++j) {
      ++counters_.delete_probes;
      if (list[j] != e) continue;
      split_.on_delete(e, x);
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(j));
      free_.push_back(e);
      ++counters_.deletes;
      return;
    }
  }
  throw ConsistencyError("edge missing from both out-lists");
}

std::vector<std::pair<Vertex, Vertex>> BfEngine::partition_edges(int i) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (EdgeId e : split_.edges_in(i)) out.push_back(ends_[e]);
  return out;
}

void BfEngine::check() const {
  std::vector<int> indeg(out_.size(), 0);
  std::size_t total = 0;
  for (std::size_t x = 0; x < out_.size(); ++x) {
    if (static_cast<int>(out_[x].size()) > d_) throw ConsistencyError("out-degree above the bound");
    for (EdgeId e : out_[x]) {
      if (ends_[e].first != static_cast<Vertex>(x)) throw ConsistencyError("out-list holds a foreign edge");
      ++indeg[ends_[e].second];
    }
    total += out_[x].size();
  }
  if (total != index_.size()) throw ConsistencyError("edge count mismatch");
  // Kahn's algorithm.
  std::vector<Vertex> ready;
  for (std::size_t x = 0; x < out_.size(); ++x)
    if (indeg[x] == 0) ready.push_back(static_cast<Vertex>(x));
  std::size_t seen = 0;
  while (!ready.empty()) {
    Vertex x = ready.back();
    ready.pop_back();
    ++seen;
    for (EdgeId e : out_[x])
      if (--indeg[ends_[e].second] == 0) ready.push_back(ends_[e].second);
  }
  if (seen != out_.size()) throw ConsistencyError("orientation has a directed cycle");
  std::vector<std::pair<EdgeId, Vertex>> oriented;
  for (auto [key, e] : index_) oriented.emplace_back(e, ends_[e].first);
  split_.check(oriented);
}

}  // namespace dyno
