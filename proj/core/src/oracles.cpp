#include "dyno/oracles.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace dyno {

namespace {

// Relabels endpoints to 0..k-1 and returns (k, edges as bit pairs).
std::pair<int, std::vector<std::pair<int, int>>> compact(const EdgeList& edges) {
  std::map<Vertex, int> id;
  for (auto [u, v] : edges) {
    id.emplace(u, 0);
    id.emplace(v, 0);
  }
  int k = 0;
  for (auto& [v, i] : id) i = k++;
  if (k > 12) throw SizeError("subset enumeration limited to 12 vertices");
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : edges) out.emplace_back(id[u], id[v]);
  return {k, out};
}

struct Dsu {
  explicit Dsu(std::size_t n) : p(n), cyc(n, 0) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  std::vector<int> p;
  std::vector<int> cyc;
};

template <class F>
void for_each_subset(int k, const std::vector<std::pair<int, int>>& es, F&& f) {
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int nv = __builtin_popcount(mask);
    int ne = 0;
    for (auto [a, b] : es)
      if ((mask >> a & 1) && (mask >> b & 1)) ++ne;
    f(nv, ne);
  }
}

}  // namespace

int exact_arboricity(const EdgeList& edges) {
  auto [k, es] = compact(edges);
  int best = 0;
  for_each_subset(k, es, [&](int nv, int ne) {
    if (nv >= 2) best = std::max(best, (ne + nv - 2) / (nv - 1));
  });
  return best;
}

Fraction exact_max_density(const EdgeList& edges) {
  auto [k, es] = compact(edges);
  Fraction best{0, 1};
  for_each_subset(k, es, [&](int nv, int ne) {
    if (static_cast<long long>(ne) * best.den > best.num * nv) best = {ne, nv};
  });
  long long g = std::gcd(best.num, best.den);
  if (g > 1) best = {best.num / g, best.den / g};
  return best;
}

std::vector<EtaViolation> check_eta_valid(const GraphState& g, int eta) {
  std::vector<EtaViolation> out;
  for (EdgeId e : g.edge_ids()) {
    Vertex a = g.tail_end(e), b = g.head_end(e);
    for (auto [t, h] : {std::pair{a, b}, std::pair{b, a}}) {
      int gap = g.load(t) - g.load(h);
      if (g.count(e, t) > 0 && gap > eta) out.push_back({t, h, gap});
    }
  }
  return out;
}

bool is_forest(const EdgeList& edges) {
  std::unordered_map<Vertex, int> id;
  for (auto [u, v] : edges) {
    id.emplace(u, static_cast<int>(id.size()));
    id.emplace(v, static_cast<int>(id.size()));
  }
  Dsu d(id.size());
  for (auto [u, v] : edges) {
    int a = d.find(id[u]), b = d.find(id[v]);
    if (a == b) return false;
    d.p[a] = b;
  }
  return true;
}

bool is_pseudoforest(const EdgeList& edges) {
  std::unordered_map<Vertex, int> id;
  for (auto [u, v] : edges) {
    id.emplace(u, static_cast<int>(id.size()));
    id.emplace(v, static_cast<int>(id.size()));
  }
  Dsu d(id.size());
  for (auto [u, v] : edges) {
    int a = d.find(id[u]), b = d.find(id[v]);
    if (a == b) {
      if (d.cyc[a]++ > 0) return false;
      continue;
    }
    if (d.cyc[a] + d.cyc[b] > 1) return false;
    d.p[a] = b;
    d.cyc[b] += d.cyc[a];
  }
  return true;
}

bool is_acyclic(const EdgeList& arcs) {
  std::unordered_map<Vertex, std::vector<Vertex>> out;
  std::unordered_map<Vertex, int> indeg;
  for (auto [t, h] : arcs) {
    out[t].push_back(h);
    ++indeg[h];
    indeg.emplace(t, 0);
  }
  std::vector<Vertex> ready;
  for (auto [v, d] : indeg)
    if (d == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (Vertex w : out[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return seen == indeg.size();
}

bool is_proper(const std::vector<std::int64_t>& colour, const EdgeList& edges) {
  for (auto [u, v] : edges)
    if (colour.at(u) == colour.at(v)) return false;
  return true;
}

long long offline_reorientations(int n, int delta, const std::vector<TraceOp>& ops) {
  std::vector<std::unordered_set<Vertex>> out(n);
  auto orient_in = [&](Vertex u, Vertex v) -> long long {
    out[u].insert(v);
    if (static_cast<int>(out[u].size()) <= delta) return 0;
    // Shortest out-path from u to a vertex with spare out-degree.
    std::vector<Vertex> prev(n, kNoVertex);
    std::deque<Vertex> q{u};
    prev[u] = u;
    Vertex end = kNoVertex;
    while (!q.empty() && end == kNoVertex) {
      Vertex x = q.front();
      q.pop_front();
      for (Vertex y : out[x])
        if (prev[y] == kNoVertex) {
          prev[y] = x;
          if (static_cast<int>(out[y].size()) < delta) {
            end = y;
            break;
          }
          q.push_back(y);
        }
    }
    if (end == kNoVertex) throw ConsistencyError("no vertex below the degree bound is reachable");
    long long len = 0;
    for (Vertex y = end; y != u; y = prev[y]) {
      Vertex x = prev[y];
      out[x].erase(y);
      out[y].insert(x);
      ++len;
    }
    return len;
  };

  // Orient the final graph without charge, then walk the trace backwards:
  // a forward deletion is an insertion here.
  std::unordered_set<std::uint64_t> present;
  std::vector<std::pair<Vertex, Vertex>> final_edges;
  for (const TraceOp& op : ops) {
    if (op.kind == OpKind::kAdd) present.insert(pair_key(op.u, op.v));
    if (op.kind == OpKind::kDel) present.erase(pair_key(op.u, op.v));
  }
  for (const TraceOp& op : ops)
    if (op.kind == OpKind::kAdd && present.erase(pair_key(op.u, op.v))) orient_in(op.u, op.v);

  long long r = 0;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->kind == OpKind::kDel) {
      r += orient_in(it->u, it->v);
    } else if (it->kind == OpKind::kAdd) {
      if (!out[it->u].erase(it->v)) out[it->v].erase(it->u);
    }
  }
  return r;
}

NaiveForest::NaiveForest(int n, int gamma) : n_(n), gamma_(gamma), adj_(n), is_root_(n, 1) {}

bool NaiveForest::has_edge(Vertex u, Vertex v) const { return rec_.count(pair_key(u, v)) > 0; }

int NaiveForest::dir_weight(Vertex from, Vertex to) const {
  int w = rec_.at(pair_key(from, to)).w_lo;
  return from < to ? w : gamma_ - w;
}

std::vector<Vertex> NaiveForest::component(Vertex v) const {
  std::vector<Vertex> seen{v};
  std::unordered_set<Vertex> in{v};
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (Vertex y : adj_[seen[i]])
      if (in.insert(y).second) seen.push_back(y);
  return seen;
}

std::vector<Vertex> NaiveForest::path(Vertex u, Vertex v) const {
  std::vector<Vertex> prev(n_, kNoVertex);
  std::deque<Vertex> q{u};
  prev[u] = u;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (Vertex y : adj_[x])
      if (prev[y] == kNoVertex) {
        prev[y] = x;
        q.push_back(y);
      }
  }
  if (prev[v] == kNoVertex) throw NotConnectedError("vertices not connected");
  std::vector<Vertex> p{v};
  while (p.back() != u) p.push_back(prev[p.back()]);
  std::reverse(p.begin(), p.end());
  return p;
}

bool NaiveForest::connected(Vertex u, Vertex v) const {
  auto c = component(u);
  return std::find(c.begin(), c.end(), v) != c.end();
}

void NaiveForest::link(Vertex u, Vertex v, int weight_u) {
  if (u == v) throw SelfLoopError("forest self-loop");
  if (weight_u < 0 || weight_u > gamma_) throw WeightRangeError("link weight out of range");
  if (connected(u, v)) throw CycleError("endpoints already connected");
  for (Vertex x : component(u)) is_root_[x] = 0;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  rec_[pair_key(u, v)] = Rec{u < v ? weight_u : gamma_ - weight_u, false};
}

void NaiveForest::cut(Vertex u, Vertex v) {
  if (!has_edge(u, v)) throw NotFoundError("forest edge absent");
  rec_.erase(pair_key(u, v));
  std::erase(adj_[u], v);
  std::erase(adj_[v], u);
  for (Vertex side : {u, v}) {
    auto c = component(side);
    if (std::none_of(c.begin(), c.end(), [&](Vertex x) { return is_root_[x]; })) is_root_[side] = 1;
  }
}

void NaiveForest::add_weight(Vertex u, Vertex v, int x) {
  auto p = path(u, v);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    int w = dir_weight(p[i], p[i + 1]) + x;
    if (w < 0 || w > gamma_) throw WeightRangeError("path weight leaves [0, gamma]");
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Rec& r = rec_[pair_key(p[i], p[i + 1])];
    r.w_lo += p[i] < p[i + 1] ? x : -x;
  }
}

int NaiveForest::min_weight(Vertex u, Vertex v) const {
  auto p = path(u, v);
  int m = INT_MAX;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::min(m, dir_weight(p[i], p[i + 1]));
  return m;
}

int NaiveForest::max_weight(Vertex u, Vertex v) const {
  auto p = path(u, v);
  int m = INT_MIN;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, dir_weight(p[i], p[i + 1]));
  return m;
}

ForestEdge NaiveForest::find_extreme_edge(Vertex u, Vertex v, DynForest::Extreme which) const {
  if (u == v) throw NotFoundError("empty path");
  auto p = path(u, v);
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    int w = dir_weight(p[i], p[i + 1]), b = dir_weight(p[best], p[best + 1]);
    if (which == DynForest::Extreme::kMin ? w < b : w > b) best = i;
  }
  return ForestEdge{p[best], p[best + 1], kNoEdge};
}

int NaiveForest::weight(Vertex u, Vertex v) const {
  if (!has_edge(u, v)) throw NotFoundError("forest edge absent");
  return dir_weight(u, v);
}

void NaiveForest::set_root(Vertex r) {
  for (Vertex x : component(r)) is_root_[x] = 0;
  is_root_[r] = 1;
}

Vertex NaiveForest::find_root(Vertex v) const {
  for (Vertex x : component(v))
    if (is_root_[x]) return x;
  throw ConsistencyError("component without a root");
}

int NaiveForest::depth(Vertex v) const {
  return static_cast<int>(path(v, find_root(v)).size()) - 1;
}

void NaiveForest::set_flag(Vertex u, Vertex v, bool flag) {
  auto it = rec_.find(pair_key(u, v));
  if (it == rec_.end()) throw NotFoundError("forest edge absent");
  it->second.flag = flag;
}

std::optional<ForestEdge> NaiveForest::find_flagged_edge_on_path(Vertex u, Vertex v) const {
  if (u == v) return std::nullopt;
  auto p = path(u, v);
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (rec_.at(pair_key(p[i], p[i + 1])).flag) return ForestEdge{p[i], p[i + 1], kNoEdge};
  return std::nullopt;
}

}  // namespace dyno
