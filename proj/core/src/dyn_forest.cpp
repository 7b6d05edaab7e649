#include "dyno/dyn_forest.hpp"

#include <algorithm>
#include <climits>

namespace dyno {

// Path aggregates follow the cluster algebra of directed weights: a node's
// value is X^w of its edge for the endpoint w that comes first in in-order.
// Reversing a subtree turns every value x into gamma - x, which swaps and
// reflects (min, max) and negates any pending addition.

DynForest::DynForest(int n, int gamma) : n_(n), gamma_(gamma), t_(n) {
  for (auto& x : t_) {
    x.mn = INT_MAX;
    x.mx = INT_MIN;
  }
}

void DynForest::check(Vertex v) const {
  if (v < 0 || v >= n_) throw ConfigError("forest vertex out of range");
}

bool DynForest::is_aux_root(int x) const {
  int p = t_[x].par;
  return p < 0 || (t_[p].ch[0] != x && t_[p].ch[1] != x);
}

void DynForest::apply_rev(int x) {
  Node& nd = t_[x];
  std::swap(nd.ch[0], nd.ch[1]);
  nd.rev = !nd.rev;
  if (nd.is_edge) nd.dir = !nd.dir;
  if (nd.ecnt > 0) {
    int mn = nd.mn;
    nd.mn = gamma_ - nd.mx;
    nd.mx = gamma_ - mn;
  }
  nd.add = -nd.add;
}

void DynForest::apply_add(int x, int a) {
  Node& nd = t_[x];
  if (nd.is_edge) nd.xa += nd.dir ? -a : a;
  if (nd.ecnt > 0) {
    nd.mn += a;
    nd.mx += a;
  }
  nd.add += a;
}

void DynForest::push(int x) {
  Node& nd = t_[x];
  if (nd.rev) {
    for (int c : nd.ch)
      if (c >= 0) apply_rev(c);
    nd.rev = false;
  }
  if (nd.add != 0) {
    for (int c : nd.ch)
      if (c >= 0) apply_add(c, nd.add);
    nd.add = 0;
  }
}

void DynForest::pull(int x) {
  Node& nd = t_[x];
  nd.sz = 1;
  nd.ecnt = nd.is_edge ? 1 : 0;
  nd.mn = nd.is_edge ? fwd(nd) : INT_MAX;
  nd.mx = nd.is_edge ? fwd(nd) : INT_MIN;
  nd.flag_or = nd.is_edge && nd.flag;
  for (int c : nd.ch) {
    if (c < 0) continue;
    const Node& cn = t_[c];
    nd.sz += cn.sz;
    nd.ecnt += cn.ecnt;
    if (cn.ecnt > 0) {
      nd.mn = std::min(nd.mn, cn.mn);
      nd.mx = std::max(nd.mx, cn.mx);
    }
    nd.flag_or = nd.flag_or || cn.flag_or;
  }
}

void DynForest::rotate(int x) {
  int p = t_[x].par;
  int g = t_[p].par;
  int dx = t_[p].ch[1] == x ? 1 : 0;
  if (!is_aux_root(p)) {
    if (t_[g].ch[0] == p)
      t_[g].ch[0] = x;
    else
      t_[g].ch[1] = x;
  }
  t_[x].par = g;
  int b = t_[x].ch[dx ^ 1];
  t_[p].ch[dx] = b;
  if (b >= 0) t_[b].par = p;
  t_[x].ch[dx ^ 1] = p;
  t_[p].par = x;
  pull(p);
  pull(x);
}

void DynForest::splay(int x) {
  stack_.clear();
  int y = x;
  stack_.push_back(y);
  while (!is_aux_root(y)) {
    y = t_[y].par;
    stack_.push_back(y);
  }
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);
  while (!is_aux_root(x)) {
    int p = t_[x].par;
    if (!is_aux_root(p)) {
      int g = t_[p].par;
      bool zigzig = (t_[g].ch[0] == p) == (t_[p].ch[0] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
}

int DynForest::access(int x) {
  int last = -1;
  for (int y = x; y >= 0; y = t_[y].par) {
    splay(y);
    t_[y].ch[1] = last;
    pull(y);
    last = y;
  }
  splay(x);
  return last;
}

void DynForest::evert(int x) {
  access(x);
  apply_rev(x);
}

int DynForest::root_of(int x) {
  access(x);
  int y = x;
  for (;;) {
    push(y);
    if (t_[y].ch[0] < 0) break;
    y = t_[y].ch[0];
  }
  splay(y);
  return y;
}

int DynForest::edge_node(Vertex u, Vertex v) const {
  auto it = edge_nodes_.find(pair_key(u, v));
  return it == edge_nodes_.end() ? -1 : it->second;
}

int DynForest::new_edge_node() {
  if (!free_nodes_.empty()) {
    int e = free_nodes_.back();
    free_nodes_.pop_back();
    t_[e] = Node{};
    return e;
  }
  t_.emplace_back();
  return static_cast<int>(t_.size()) - 1;
}

bool DynForest::connected(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) return true;
  return root_of(u) == root_of(v);
}

bool DynForest::has_edge(Vertex u, Vertex v) const { return edge_node(u, v) >= 0; }

void DynForest::link(Vertex u, Vertex v, int weight_u, EdgeId tag) {
  check(u);
  check(v);
  if (u == v) throw SelfLoopError("forest self-loop");
  if (weight_u < 0 || weight_u > gamma_) throw WeightRangeError("link weight out of range");
  if (connected(u, v)) throw CycleError("endpoints already connected");
  int e = new_edge_node();
  Node& nd = t_[e];
  nd.is_edge = true;
  nd.a = u;
  nd.b = v;
  nd.xa = weight_u;
  nd.dir = true;  // v is the shallower endpoint once u hangs below it
  nd.tag = tag;
  pull(e);
  evert(u);
  t_[u].par = e;
  t_[e].par = v;
  edge_nodes_.emplace(pair_key(u, v), e);
  if (tag != kNoEdge) by_tag_[tag] = e;
}

void DynForest::detach_edge_node(int e) {
  // e sits between its endpoints; split it off both sides.
  Vertex a = t_[e].a;
  Vertex b = t_[e].b;
  evert(a);
  access(e);
  // In-order: a, e. Drop the left part.
  int l = t_[e].ch[0];
  if (l >= 0) {
    t_[l].par = -1;
    t_[e].ch[0] = -1;
    pull(e);
  }
  evert(e);
  access(b);
  int l2 = t_[b].ch[0];
  if (l2 >= 0) {
    t_[l2].par = -1;
    t_[b].ch[0] = -1;
    pull(b);
  }
}

void DynForest::cut(Vertex u, Vertex v) {
  check(u);
  check(v);
  int e = edge_node(u, v);
  if (e < 0) throw NotFoundError("forest edge absent");
  int r = root_of(u);
  detach_edge_node(e);
  edge_nodes_.erase(pair_key(u, v));
  if (t_[e].tag != kNoEdge) by_tag_.erase(t_[e].tag);
  t_[e].is_edge = false;
  t_[e].par = -1;
  t_[e].ch[0] = t_[e].ch[1] = -1;
  free_nodes_.push_back(e);
  // Restore the old root on its side; root the other side at its endpoint.
  Vertex other = (root_of(u) == root_of(r)) ? v : u;
  evert(r);
  evert(other);
}

int DynForest::expose_path(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (!connected(u, v)) throw NotConnectedError("vertices not connected");
  evert(u);
  access(v);
  return v;
}

void DynForest::add_weight(Vertex u, Vertex v, int x) {
  if (x == 0 && connected(u, v)) return;
  int r = root_of(u);
  int top = expose_path(u, v);
  if (t_[top].ecnt > 0) {
    if (t_[top].mn + x < 0 || t_[top].mx + x > gamma_) {
      evert(r);
      throw WeightRangeError("path weight leaves [0, gamma]");
    }
    apply_add(top, x);
  }
  evert(r);
}

int DynForest::min_weight(Vertex u, Vertex v) {
  int r = root_of(u);
  int top = expose_path(u, v);
  int res = t_[top].ecnt > 0 ? t_[top].mn : INT_MAX;
  evert(r);
  return res;
}

int DynForest::max_weight(Vertex u, Vertex v) {
  int r = root_of(u);
  int top = expose_path(u, v);
  int res = t_[top].ecnt > 0 ? t_[top].mx : INT_MIN;
  evert(r);
  return res;
}

ForestEdge DynForest::describe(int e, Vertex from) const {
  const Node& nd = t_[e];
  Vertex to = nd.a == from ? nd.b : nd.a;
  return ForestEdge{from, to, nd.tag};
}

ForestEdge DynForest::find_extreme_edge(Vertex u, Vertex v, Extreme which) {
  if (u == v) throw NotFoundError("empty path");
  int r = root_of(u);
  int x = expose_path(u, v);
  int target = which == Extreme::kMin ? t_[x].mn : t_[x].mx;
  for (;;) {
    push(x);
    int l = t_[x].ch[0];
    if (l >= 0 && t_[l].ecnt > 0 &&
        (which == Extreme::kMin ? t_[l].mn == target : t_[l].mx == target)) {
      x = l;
      continue;
    }
    if (t_[x].is_edge && fwd(t_[x]) == target) break;
    x = t_[x].ch[1];
  }
  // The in-order predecessor of an edge node on this path is its endpoint nearer u.
  bool a_first = !t_[x].dir;
  ForestEdge res = describe(x, a_first ? t_[x].a : t_[x].b);
  splay(x);
  evert(r);
  return res;
}

int DynForest::materialize(int e) const {
  auto* self = const_cast<DynForest*>(this);
  self->splay(e);
  return e;
}

int DynForest::weight_of(int e, Vertex from) const {
  materialize(e);
  const Node& nd = t_[e];
  return nd.a == from ? nd.xa : gamma_ - nd.xa;
}

int DynForest::weight(Vertex u, Vertex v) {
  int e = edge_node(u, v);
  if (e < 0) throw NotFoundError("forest edge absent");
  return weight_of(e, u);
}

void DynForest::set_weight(Vertex u, Vertex v, int weight_u) {
  int e = edge_node(u, v);
  if (e < 0) throw NotFoundError("forest edge absent");
  if (weight_u < 0 || weight_u > gamma_) throw WeightRangeError("weight out of range");
  splay(e);
  Node& nd = t_[e];
  nd.xa = nd.a == u ? weight_u : gamma_ - weight_u;
  pull(e);
}

EdgeId DynForest::tag_of(Vertex u, Vertex v) const {
  int e = edge_node(u, v);
  if (e < 0) throw NotFoundError("forest edge absent");
  return t_[e].tag;
}

void DynForest::set_root(Vertex r) {
  check(r);
  evert(r);
}

Vertex DynForest::find_root(Vertex v) {
  check(v);
  return root_of(v);
}

std::optional<ForestEdge> DynForest::first_edge_on_root_path(Vertex v) {
  check(v);
  access(v);
  int x = t_[v].ch[0];
  if (x < 0) return std::nullopt;
  for (;;) {
    push(x);
    if (t_[x].ch[1] < 0) break;
    x = t_[x].ch[1];
  }
  ForestEdge res = describe(x, v);
  splay(x);
  return res;
}

int DynForest::depth(Vertex v) {
  check(v);
  access(v);
  int l = t_[v].ch[0];
  return l < 0 ? 0 : t_[l].sz / 2;
}

int DynForest::depth_parity(Vertex v) { return depth(v) & 1; }

void DynForest::set_flag(Vertex u, Vertex v, bool flag) {
  int e = edge_node(u, v);
  if (e < 0) throw NotFoundError("forest edge absent");
  splay(e);
  t_[e].flag = flag;
  pull(e);
}

bool DynForest::flag(Vertex u, Vertex v) {
  int e = edge_node(u, v);
  if (e < 0) throw NotFoundError("forest edge absent");
  return t_[e].flag;
}

std::optional<ForestEdge> DynForest::find_flagged_edge_on_path(Vertex u, Vertex v) {
  if (u == v) return std::nullopt;
  int r = root_of(u);
  int x = expose_path(u, v);
  std::optional<ForestEdge> res;
  if (t_[x].flag_or) {
    for (;;) {
      push(x);
      int l = t_[x].ch[0];
      if (l >= 0 && t_[l].flag_or) {
        x = l;
        continue;
      }
      if (t_[x].is_edge && t_[x].flag) break;
      x = t_[x].ch[1];
    }
    res = describe(x, t_[x].dir ? t_[x].b : t_[x].a);
    splay(x);
  }
  evert(r);
  return res;
}

std::vector<ForestEdge> DynForest::edges() const {
  std::vector<ForestEdge> out;
  out.reserve(edge_nodes_.size());
  for (const auto& [key, e] : edge_nodes_) out.push_back(ForestEdge{t_[e].a, t_[e].b, t_[e].tag});
  return out;
}

int DynForest::home_count(EdgeId e, Vertex from) const {
  auto it = by_tag_.find(e);
  if (it == by_tag_.end()) throw NotFoundError("edge not stored in this forest");
  return weight_of(it->second, from);
}

void DynForest::home_set(EdgeId e, Vertex from, int count) {
  auto it = by_tag_.find(e);
  if (it == by_tag_.end()) throw NotFoundError("edge not stored in this forest");
  const Node& nd = t_[it->second];
  set_weight(from, nd.a == from ? nd.b : nd.a, count);
}

}  // namespace dyno
