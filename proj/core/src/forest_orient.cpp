#include "dyno/forest_orient.hpp"

#include <algorithm>

namespace dyno {

HeavyLightForest::HeavyLightForest(int n, Refresher refresher)
    : n_(n),
      refresher_(std::move(refresher)),
      parent_(n, kNoVertex),
      size_(n, 1),
      kids_(n),
      vstamp_(n, 0) {}

const HeavyLightForest::Rec* HeavyLightForest::find(Vertex u, Vertex v) const {
  auto it = edges_.find(pair_key(u, v));
  return it == edges_.end() ? nullptr : &it->second;
}

HeavyLightForest::Rec& HeavyLightForest::rec(Vertex u, Vertex v) {
  auto it = edges_.find(pair_key(u, v));
  if (it == edges_.end()) throw NotFoundError("forest edge absent");
  return it->second;
}

bool HeavyLightForest::has_edge(Vertex u, Vertex v) const { return find(u, v) != nullptr; }

HLEdge HeavyLightForest::edge(Vertex u, Vertex v) const {
  const Rec* r = find(u, v);
  if (!r) throw NotFoundError("forest edge absent");
  Vertex head = r->tail == u ? v : u;
  return HLEdge{r->tail, head, r->solid, is_clean(u, v)};
}

Vertex HeavyLightForest::root(Vertex v) const {
  while (parent_[v] != kNoVertex) v = parent_[v];
  return v;
}

std::vector<Vertex> HeavyLightForest::root_path(Vertex v) const {
  std::vector<Vertex> p;
  for (; v != kNoVertex; v = parent_[v]) p.push_back(v);
  return p;
}

Vertex HeavyLightForest::heavy_child(Vertex v) const {
  if (kids_[v].empty()) return kNoVertex;
  const auto& [s, c] = *kids_[v].rbegin();
  return 2 * s > size_[v] ? c : kNoVertex;
}

void HeavyLightForest::set_size(Vertex v, int s) {
  Vertex p = parent_[v];
  if (p != kNoVertex) {
    kids_[p].erase({size_[v], v});
    kids_[p].insert({s, v});
  }
  size_[v] = s;
}

void HeavyLightForest::reroot(Vertex u) {
  std::vector<Vertex> path = root_path(u);
  if (path.size() < 2) return;
  int total = size_[path.back()];
  std::vector<int> old(path.size());
  for (std::size_t j = 0; j < path.size(); ++j) old[j] = size_[path[j]];
  for (std::size_t j = 1; j < path.size(); ++j) kids_[path[j]].erase({old[j - 1], path[j - 1]});
  for (std::size_t j = 0; j + 1 < path.size(); ++j) parent_[path[j + 1]] = path[j];
  parent_[u] = kNoVertex;
  size_[u] = total;
  for (std::size_t j = 1; j < path.size(); ++j) {
    size_[path[j]] = total - old[j - 1];
    kids_[path[j - 1]].insert({size_[path[j]], path[j]});
  }
}

void HeavyLightForest::reclassify(const std::vector<std::pair<Vertex, Vertex>>& before,
                                  const std::vector<Vertex>& touched, bool new_edge,
                                  Vertex nu, Vertex nv) {
  std::vector<std::pair<Vertex, Vertex>> cand;
  for (auto [x, hc] : before)
    if (hc != kNoVertex) cand.emplace_back(x, hc);
  for (Vertex x : touched) {
    if (parent_[x] != kNoVertex) cand.emplace_back(x, parent_[x]);
    Vertex hc = heavy_child(x);
    if (hc != kNoVertex) cand.emplace_back(x, hc);
  }
  std::sort(cand.begin(), cand.end(), [](auto a, auto b) {
    return pair_key(a.first, a.second) < pair_key(b.first, b.second);
  });
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](auto a, auto b) {
                           return pair_key(a.first, a.second) == pair_key(b.first, b.second);
                         }),
             cand.end());
  for (auto [a, b] : cand) {
    auto it = edges_.find(pair_key(a, b));
    if (it == edges_.end()) continue;
    Rec& r = it->second;
    Vertex child = parent_[a] == b ? a : b;
    bool solid = heavy_child(parent_[child]) == child;
    bool fresh = new_edge && pair_key(a, b) == pair_key(nu, nv);
    if (fresh) {
      r.solid = solid;
      r.tail = solid ? nu : child;
      if (solid) refresh(a, b);
      continue;
    }
    if (!solid) {
      r.solid = false;
      r.tail = child;
    } else if (!r.solid) {
      r.solid = true;
      refresh(a, b);
    }
  }
}

void HeavyLightForest::link(Vertex u, Vertex v) {
  if (u == v) throw SelfLoopError("forest self-loop");
  if (root(u) == root(v)) throw CycleError("endpoints already connected");
  std::vector<Vertex> pu = root_path(u);
  std::vector<Vertex> pv = root_path(v);
  std::vector<std::pair<Vertex, Vertex>> before;
  for (Vertex x : pu) before.emplace_back(x, heavy_child(x));
  for (Vertex x : pv) before.emplace_back(x, heavy_child(x));
  reroot(u);
  edges_[pair_key(u, v)] = Rec{};
  parent_[u] = v;
  kids_[v].insert({size_[u], u});
  int add = size_[u];
  for (Vertex x = v; x != kNoVertex; x = parent_[x]) set_size(x, size_[x] + add);
  std::vector<Vertex> touched = pu;
  touched.insert(touched.end(), pv.begin(), pv.end());
  reclassify(before, touched, true, u, v);
}

void HeavyLightForest::cut(Vertex u, Vertex v) {
  if (!find(u, v)) throw NotFoundError("forest edge absent");
  Vertex child = parent_[u] == v ? u : v;
  Vertex p = parent_[child];
  std::vector<Vertex> pp = root_path(p);
  std::vector<std::pair<Vertex, Vertex>> before;
  for (Vertex x : pp) before.emplace_back(x, heavy_child(x));
  int sub = size_[child];
  for (Vertex x = p; x != kNoVertex; x = parent_[x]) set_size(x, size_[x] - sub);
  kids_[p].erase({size_[child], child});
  parent_[child] = kNoVertex;
  edges_.erase(pair_key(u, v));
  pp.push_back(child);
  reclassify(before, pp, false, kNoVertex, kNoVertex);
}

std::vector<Vertex> HeavyLightForest::explicit_out_edges(Vertex v) const {
  std::vector<Vertex> out;
  Vertex p = parent_[v];
  if (p != kNoVertex && find(v, p)->tail == v) out.push_back(p);
  Vertex hc = heavy_child(v);
  if (hc != kNoVertex && find(v, hc)->tail == v) out.push_back(hc);
  return out;
}

std::vector<std::pair<Vertex, Vertex>> HeavyLightForest::light_edges_between(Vertex u,
                                                                             Vertex v) const {
  std::vector<Vertex> pu = root_path(u);
  std::vector<Vertex> pv = root_path(v);
  if (pu.back() != pv.back()) throw NotConnectedError("vertices not connected");
  // Strip the common suffix to find the meeting point.
  while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
    pu.pop_back();
    pv.pop_back();
  }
  std::vector<std::pair<Vertex, Vertex>> out;
  for (auto* path : {&pu, &pv})
    for (std::size_t j = 0; j + 1 < path->size(); ++j) {
      Vertex c = (*path)[j];
      if (!find(c, parent_[c])->solid) out.emplace_back(c, parent_[c]);
    }
  return out;
}

bool HeavyLightForest::is_clean(Vertex u, Vertex v) const {
  const Rec* r = find(u, v);
  if (!r) throw NotFoundError("forest edge absent");
  return r->stamp > vstamp_[u] && r->stamp > vstamp_[v];
}

void HeavyLightForest::refresh(Vertex u, Vertex v) {
  Rec& r = rec(u, v);
  if (refresher_) refresher_(u, v);
  r.stamp = ++clock_;
}

int HeavyLightForest::clean_path(Vertex u, Vertex v) {
  int k = 0;
  for (auto [a, b] : light_edges_between(u, v))
    if (!is_clean(a, b)) {
      refresh(a, b);
      ++k;
    }
  return k;
}

std::vector<std::pair<Vertex, Vertex>> HeavyLightForest::heavy_edges_at(Vertex v) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  Vertex p = parent_[v];
  if (p != kNoVertex && find(v, p)->solid) out.emplace_back(v, p);
  Vertex hc = heavy_child(v);
  if (hc != kNoVertex) out.emplace_back(v, hc);
  return out;
}

void HeavyLightForest::touch(Vertex v) {
  vstamp_[v] = ++clock_;
  for (auto [a, b] : heavy_edges_at(v)) refresh(a, b);
}

void HeavyLightForest::check() const {
  for (Vertex v = 0; v < n_; ++v) {
    Vertex p = parent_[v];
    if (p != kNoVertex && !find(v, p)) throw ConsistencyError("parent without edge");
  }
  // Sizes: accumulate along parent chains (quadratic, test-only).
  std::vector<int> acc(n_, 0);
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex x = v; x != kNoVertex; x = parent_[x]) ++acc[x];
  std::size_t tree_edges = 0;
  for (Vertex v = 0; v < n_; ++v) {
    if (acc[v] != size_[v]) throw ConsistencyError("subtree size mismatch");
    if (parent_[v] != kNoVertex) ++tree_edges;
  }
  if (tree_edges != edges_.size()) throw ConsistencyError("edge count mismatch");
  for (const auto& [key, r] : edges_) {
    Vertex a = static_cast<Vertex>(key >> 32);
    Vertex b = static_cast<Vertex>(key & 0xffffffffu);
    Vertex child = parent_[a] == b ? a : b;
    if (parent_[child] != (child == a ? b : a)) throw ConsistencyError("edge not a tree edge");
    bool solid = heavy_child(parent_[child]) == child;
    if (solid != r.solid) throw ConsistencyError("stale solid/dashed flag");
    if (!solid && r.tail != child) throw ConsistencyError("dashed edge not child->parent");
    if (solid && !is_clean(a, b)) throw ConsistencyError("dirty heavy edge");
  }
  for (Vertex v = 0; v < n_; ++v)
    if (out_degree(v) > 2) throw ConsistencyError("out-degree above two");
}

}  // namespace dyno
