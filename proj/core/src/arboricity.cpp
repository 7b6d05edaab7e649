#include "dyno/arboricity.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace dyno {

namespace {

bool differs_by_two(const GraphState& g, Vertex a, Vertex b) {
  return std::abs(g.load(a) - g.load(b)) >= 2;
}

void erase_value(std::vector<EdgeId>& v, EdgeId e) {
  auto it = std::find(v.begin(), v.end(), e);
  if (it != v.end()) {
    *it = v.back();
    v.pop_back();
  }
}

}  // namespace

ArbEngine::ArbEngine(GraphState& g, ArbOptions opt)
    : g_(g),
      opt_(opt),
      ref_(g),
      split_(g.n()),
      pend_at_(g.n()),
      sadj_(g.n()),
      last_out_(g.n()) {
  const Params& p = g.params();
  if (p.gamma < 2 * p.delta_num + 2)
    throw ConfigError("gamma too small to invert pseudoforest cycles");
  ref_.set_track_rounding(false);
  ref_.set_lazy_nbr_lists(true);
  ref_.set_paranoid(opt.paranoid);
  ref_.set_hooks([this](EdgeId e) { before_enter_h(e); }, {});
  ref_.frac().set_provider([this](Vertex v, std::vector<Vertex>& out) { provide(v, out); });
  ref_.frac().set_load_hook([this](Vertex v) {
    for (auto& pt : parts_) pt->hl.touch(v);
  });
  split_.set_resolver([this](Vertex v, int i) { return resolve(v, i); });
}

ArbEngine::Part& ArbEngine::part(int i) {
  while (static_cast<int>(parts_.size()) <= i) {
    int k = static_cast<int>(parts_.size());
    parts_.push_back(std::make_unique<Part>(g_.n(), g_.gamma()));
    parts_.back()->hl.set_refresher([this, k](Vertex a, Vertex b) {
      parts_[k]->f.set_flag(a, b, differs_by_two(g_, a, b));
    });
  }
  return *parts_[i];
}

void ArbEngine::ensure(EdgeId e) {
  if (e >= static_cast<EdgeId>(kind_.size())) {
    std::size_t n = std::max<std::size_t>(e + 1, kind_.size() * 2);
    kind_.resize(n, Placement::kNone);
    epart_.resize(n, -1);
    ptail_.resize(n, kNoVertex);
    mtail_.resize(n, kNoVertex);
    queued_.resize(n, 0);
  }
}

Placement ArbEngine::placement(EdgeId e) const {
  return e < static_cast<EdgeId>(kind_.size()) ? kind_[e] : Placement::kNone;
}

int ArbEngine::partition(EdgeId e) const {
  return placement(e) == Placement::kNone ? -1 : epart_[e];
}

EdgeId ArbEngine::match_at(int i, Vertex v) const {
  if (i < 0 || i >= static_cast<int>(parts_.size())) return kNoEdge;
  return parts_[i]->m_at[v];
}

Vertex ArbEngine::structural_tail(EdgeId e) {
  switch (placement(e)) {
    case Placement::kForest: {
      Vertex a = g_.tail_end(e);
      auto fe = parts_[epart_[e]]->f.first_edge_on_root_path(a);
      return fe && fe->tag == e ? a : g_.head_end(e);
    }
    case Placement::kMatch:
      return mtail_[e];
    case Placement::kPending:
      return ptail_[e];
    default:
      return kNoVertex;
  }
}

EdgeId ArbEngine::resolve(Vertex v, int i) {
  if (i < static_cast<int>(parts_.size())) {
    Part& p = *parts_[i];
    if (auto fe = p.f.first_edge_on_root_path(v)) return fe->tag;
    if (p.m_at[v] != kNoEdge) return p.m_at[v];
  }
  for (EdgeId e : pend_at_[v])
    if (epart_[e] == i) return e;
  return kNoEdge;
}

void ArbEngine::out_nbrs(Vertex v, std::vector<Vertex>& out) {
  for (int i = 0; i < split_.out_degree(v); ++i) {
    EdgeId e = resolve(v, i);
    if (e != kNoEdge) out.push_back(g_.other(e, v));
  }
}

void ArbEngine::provide(Vertex v, std::vector<Vertex>& out) {
  out = last_out_[v];
  std::vector<Vertex> now;
  out_nbrs(v, now);
  out.insert(out.end(), now.begin(), now.end());
  last_out_[v] = std::move(now);
}

void ArbEngine::before_enter_h(EdgeId e) {
  ensure(e);
  if (kind_[e] == Placement::kNone) return;
  apply(split_.on_delete(e, structural_tail(e)));
}

void ArbEngine::surplus_add(EdgeId e) {
  sadj_[g_.tail_end(e)].push_back(e);
  sadj_[g_.head_end(e)].push_back(e);
}

void ArbEngine::surplus_del(EdgeId e) {
  erase_value(sadj_[g_.tail_end(e)], e);
  erase_value(sadj_[g_.head_end(e)], e);
}

void ArbEngine::unmatch(EdgeId e) {
  Part& p = *parts_[epart_[e]];
  p.m_at[mtail_[e]] = kNoEdge;
  surplus_del(e);
  mtail_[e] = kNoVertex;
  kind_[e] = Placement::kNone;
}

void ArbEngine::drop_pending(EdgeId e) {
  erase_value(pend_at_[ptail_[e]], e);
  ptail_[e] = kNoVertex;
  kind_[e] = Placement::kNone;
}

void ArbEngine::make_pending(EdgeId e, Vertex tail, int i) {
  if (kind_[e] == Placement::kPending) drop_pending(e);
  if (kind_[e] != Placement::kNone) throw ConsistencyError("edge still placed");
  kind_[e] = Placement::kPending;
  ptail_[e] = tail;
  epart_[e] = i;
  pend_at_[tail].push_back(e);
  if (!queued_[e]) {
    queued_[e] = 1;
    r_.push_back(e);
  }
}

void ArbEngine::remove_from_structure(EdgeId e) {
  Vertex a = g_.tail_end(e), b = g_.head_end(e);
  switch (kind_[e]) {
    case Placement::kForest: {
      Part& p = *parts_[epart_[e]];
      Vertex t = structural_tail(e);
      Vertex r = p.f.find_root(g_.other(e, t));
      g_.set_home(e, nullptr);
      p.f.cut(a, b);
      p.hl.cut(a, b);
      kind_[e] = Placement::kNone;
      EdgeId m = p.m_at[r];
      if (m != kNoEdge && !p.f.connected(r, g_.other(m, r))) {
        int i = epart_[m];
        unmatch(m);
        make_pending(m, r, i);
      }
      break;
    }
    case Placement::kMatch:
      unmatch(e);
      break;
    case Placement::kPending:
      drop_pending(e);
      break;
    default:
      return;
  }
  ref_.frac().reconcile_edge(a, b);
}

void ArbEngine::apply(const MoveLog& moves) {
  for (const Move& mv : moves) {
    ensure(mv.edge);
    remove_from_structure(mv.edge);
  }
  for (const Move& mv : moves) {
    if (mv.to < 0) {
      kind_[mv.edge] = Placement::kNone;
      epart_[mv.edge] = -1;
    } else {
      make_pending(mv.edge, mv.tail, mv.to);
    }
  }
}

void ArbEngine::place(EdgeId e) {
  int i = epart_[e];
  Vertex t = ptail_[e];
  Vertex h = g_.other(e, t);
  drop_pending(e);
  Part& p = part(i);
  if (p.f.find_root(t) != t || p.m_at[t] != kNoEdge)
    throw ConsistencyError("placement would give a vertex two out-edges in one pseudoforest");
  ++counters_.placements;
  // The counters are in sync with the neighbour lists right now; remember
  // the edge so a later access of t re-examines it.
  auto& lo = last_out_[t];
  if (std::find(lo.begin(), lo.end(), h) == lo.end()) lo.push_back(h);
  if (p.f.connected(t, h)) {
    kind_[e] = Placement::kMatch;
    mtail_[e] = t;
    p.m_at[t] = e;
    surplus_add(e);
    if (opt_.surplus) dirty_.push_back(t);
  } else {
    p.f.link(t, h, g_.count(e, t), e);
    g_.set_home(e, &p.f);
    p.hl.link(t, h);
    p.f.set_flag(t, h, differs_by_two(g_, t, h));
    kind_[e] = Placement::kForest;
  }
}

void ArbEngine::reprocess(const ReorientLog& touched) {
  for (EdgeId e : touched) {
    if (!g_.alive(e)) continue;
    ensure(e);
    if (ref_.in_h(e)) {
      if (kind_[e] != Placement::kNone) throw ConsistencyError("H edge left in a pseudoforest");
      continue;
    }
    Vertex want = ref_.count_tail(e);
    if (kind_[e] == Placement::kNone) {
      apply(split_.on_insert(e, want));
    } else {
      Vertex t = structural_tail(e);
      if (t != want) apply(split_.on_reorient(e, t, want));
    }
  }
}

std::vector<EdgeId> ArbEngine::invert_unicycle(int i, Vertex root) {
  Part& p = *parts_.at(i);
  EdgeId m = p.m_at[root];
  if (m == kNoEdge) throw NotFoundError("no unicycle rooted there");
  Vertex x = g_.other(m, root);
  const int shift = g_.params().hi_open();

  std::vector<EdgeId> bad;
  p.hl.clean_path(x, root);
  std::vector<ForestEdge> found;
  while (auto fe = p.f.find_flagged_edge_on_path(x, root)) {
    found.push_back(*fe);
    bad.push_back(fe->tag);
    p.f.set_flag(fe->from, fe->to, false);
  }
  for (const ForestEdge& fe : found) p.f.set_flag(fe.from, fe.to, true);

  if (opt_.paranoid) {
    std::vector<EdgeId> direct;
    for (Vertex w = x; w != root;) {
      auto fe = p.f.first_edge_on_root_path(w);
      if (differs_by_two(g_, fe->from, fe->to)) direct.push_back(fe->tag);
      w = fe->to;
    }
    std::vector<EdgeId> a = bad, b = direct;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw ConsistencyError("flag search disagrees with a direct cycle scan");
  }
  if (g_.load(x) - g_.load(root) >= 2) bad.push_back(m);

  p.f.add_weight(x, root, -shift);
  int cr = g_.count(m, root), cx = g_.count(m, x);
  g_.write_count(m, root, cr - shift);
  g_.write_count(m, x, cx + shift);
  ref_.frac().reconcile_edge(root, x);
  p.f.set_root(x);
  p.m_at[root] = kNoEdge;
  p.m_at[x] = m;
  mtail_[m] = x;
  ++counters_.inversions;
  return bad;
}

void ArbEngine::repair(const std::vector<EdgeId>& bad) {
  std::vector<EdgeId> todo;
  for (EdgeId e : bad) {
    if (!g_.alive(e) || std::find(todo.begin(), todo.end(), e) != todo.end()) continue;
    if (kind_[e] != Placement::kNone) apply(split_.on_delete(e, structural_tail(e)));
    todo.push_back(e);
  }
  FracOrient& fr = ref_.frac();
  ReorientLog all;
  std::set<EdgeId> seen;
  auto merge = [&](const ReorientLog& part) {
    for (EdgeId f : part)
      if (seen.insert(f).second) all.push_back(f);
  };
  for (EdgeId e : todo) {
    Vertex ends[2] = {g_.tail_end(e), g_.head_end(e)};
    for (int k = 0; k < 2; ++k) {
      Vertex a = ends[k], b = ends[1 - k];
      int c = g_.count(e, a);
      if (c == 0 || g_.load(a) - g_.load(b) < 2) continue;
      for (int j = 0; j < c; ++j) merge(fr.delete_copy(a, b));
      for (int j = 0; j < c; ++j) merge(fr.insert_copy(a, b));
      counters_.repair_pairs += c;
    }
    ++counters_.repaired_edges;
  }
  ReorientLog touched = ref_.process(all);
  for (EdgeId e : todo) touched.push_back(e);
  reprocess(touched);
}

std::vector<EdgeId> ArbEngine::line_path(const std::vector<EdgeId>& edges, EdgeId from,
                                         const std::function<bool(EdgeId)>& goal) const {
  std::map<EdgeId, EdgeId> prev;
  std::deque<EdgeId> q{from};
  prev[from] = kNoEdge;
  while (!q.empty()) {
    EdgeId e = q.front();
    q.pop_front();
    if (e != from && goal(e)) {
      std::vector<EdgeId> path;
      for (EdgeId x = e; x != kNoEdge; x = prev[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Vertex end : {g_.tail_end(e), g_.head_end(e)})
      for (EdgeId f : sadj_[end])
        if (!prev.count(f) && std::find(edges.begin(), edges.end(), f) != edges.end()) {
          prev[f] = e;
          q.push_back(f);
        }
  }
  return {};
}

bool ArbEngine::move1(EdgeId a, EdgeId b) {
  if (placement(a) != Placement::kMatch || placement(b) != Placement::kMatch) return false;
  Vertex v;
  if (g_.tail_end(a) == g_.tail_end(b) || g_.tail_end(a) == g_.head_end(b))
    v = g_.tail_end(a);
  else
    v = g_.head_end(a);
  for (EdgeId e : {a, b}) {
    if (mtail_[e] == v) continue;
    std::vector<EdgeId> bad = invert_unicycle(epart_[e], mtail_[e]);
    if (!bad.empty()) {
      repair(bad);
      return false;
    }
  }
  int i = epart_[a], j = epart_[b];
  unmatch(a);
  unmatch(b);
  split_.swap_parts(a, b);
  make_pending(a, v, j);
  make_pending(b, v, i);
  queued_[a] = queued_[b] = 0;
  r_.erase(std::remove_if(r_.begin(), r_.end(), [&](EdgeId x) { return x == a || x == b; }),
           r_.end());
  place(a);
  place(b);
  ++counters_.move1;
  return true;
}

void ArbEngine::replace_match(int i, EdgeId m) {
  Part& p = *parts_[i];
  Vertex v = mtail_[m];
  Vertex z = g_.other(m, v);
  p.f.set_root(z);
  auto fe = p.f.first_edge_on_root_path(v);
  p.f.set_root(v);
  EdgeId g = fe->tag;
  Vertex w = fe->to;
  unmatch(m);
  g_.set_home(g, nullptr);
  p.f.cut(w, v);
  p.hl.cut(w, v);
  p.f.link(v, z, g_.count(m, v), m);
  g_.set_home(m, &p.f);
  p.hl.link(v, z);
  p.f.set_flag(v, z, differs_by_two(g_, v, z));
  kind_[m] = Placement::kForest;
  kind_[g] = Placement::kMatch;
  mtail_[g] = w;
  p.m_at[w] = g;
  surplus_add(g);
  dirty_.push_back(w);
  dirty_.push_back(v);
}

void ArbEngine::move2_step(const std::vector<Vertex>& verts, const std::vector<EdgeId>& edges) {
  // Peel leaves to expose the cycle.
  std::map<Vertex, int> deg;
  for (EdgeId e : edges) {
    ++deg[g_.tail_end(e)];
    ++deg[g_.head_end(e)];
  }
  std::vector<Vertex> leaves;
  for (auto [x, d] : deg)
    if (d == 1) leaves.push_back(x);
  std::set<EdgeId> gone;
  while (!leaves.empty()) {
    Vertex x = leaves.back();
    leaves.pop_back();
    for (EdgeId e : sadj_[x]) {
      if (gone.count(e)) continue;
      gone.insert(e);
      Vertex y = g_.other(e, x);
      --deg[x];
      if (--deg[y] == 1) leaves.push_back(y);
    }
  }
  Vertex v = kNoVertex;
  for (auto [x, d] : deg)
    if (d >= 2) {
      v = x;
      break;
    }
  if (v == kNoVertex) throw ConsistencyError("cyclic surplus component without a cycle");

  // Among the pseudoforests whose forest part avoids v inside the
  // component, take the one whose matching edge is nearest to v.
  auto at_v = [&](EdgeId e) { return g_.tail_end(e) == v || g_.head_end(e) == v; };
  EdgeId f = kNoEdge;
  std::vector<EdgeId> route;
  for (EdgeId cand : edges) {
    int i = epart_[cand];
    bool free = true;
    for (Vertex u : verts) {
      if (u == v) continue;
      EdgeId uv = g_.find(u, v);
      if (uv != kNoEdge && placement(uv) == Placement::kForest && epart_[uv] == i) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    std::vector<EdgeId> path = at_v(cand) ? std::vector<EdgeId>{cand} : line_path(edges, cand, at_v);
    if (path.empty()) continue;
    if (f == kNoEdge || path.size() < route.size() ||
        (path.size() == route.size() && i < epart_[f])) {
      f = cand;
      route = path;
    }
  }
  if (f == kNoEdge) throw ConsistencyError("no pseudoforest avoids the cycle vertex");

  if (route.size() > 1) {
    move1(route[0], route[1]);
    return;
  }
  int i = epart_[f];
  EdgeId c1 = kNoEdge;
  for (EdgeId e : sadj_[v])
    if (e != f && !gone.count(e)) {
      c1 = e;
      break;
    }
  if (c1 == kNoEdge) throw ConsistencyError("cycle vertex lacks a second cycle edge");
  if (!move1(f, c1)) return;
  if (placement(c1) == Placement::kMatch && epart_[c1] == i) replace_match(i, c1);
  ++counters_.move2;
}

void ArbEngine::restore_surplus(Vertex v0) {
  if (!opt_.surplus) return;
  std::vector<Vertex> verts{v0};
  std::vector<EdgeId> edges;
  std::set<Vertex> vs{v0};
  std::set<EdgeId> es;
  for (std::size_t k = 0; k < verts.size(); ++k)
    for (EdgeId e : sadj_[verts[k]]) {
      if (es.insert(e).second) edges.push_back(e);
      Vertex y = g_.other(e, verts[k]);
      if (vs.insert(y).second) verts.push_back(y);
    }
  if (edges.empty()) return;
  counters_.max_component = std::max<long long>(counters_.max_component, edges.size());

  std::map<int, std::vector<EdgeId>> by_part;
  for (EdgeId e : edges) by_part[epart_[e]].push_back(e);
  std::vector<EdgeId> best;
  for (auto& [i, list] : by_part) {
    if (list.size() < 2) continue;
    for (std::size_t x = 0; x < list.size(); ++x)
      for (std::size_t y = 0; y < list.size(); ++y) {
        if (x == y) continue;
        EdgeId target = list[y];
        auto path = line_path(edges, list[x], [&](EdgeId e) { return e == target; });
        if (!path.empty() && (best.empty() || path.size() < best.size())) best = path;
      }
  }
  if (!best.empty()) {
    ++counters_.surplus_steps;
    move1(best[best.size() - 2], best.back());
    dirty_.push_back(v0);
    return;
  }
  if (edges.size() >= verts.size()) {
    ++counters_.surplus_steps;
    move2_step(verts, edges);
    dirty_.push_back(v0);
  }
}

void ArbEngine::settle() {
  long long steps = 0;
  const long long cap = 1000000;
  while (true) {
    if (++steps > cap) throw ConsistencyError("pseudoforest maintenance did not converge");
    if (!r_.empty()) {
      EdgeId e = r_.front();
      r_.pop_front();
      queued_[e] = 0;
      if (g_.alive(e) && kind_[e] == Placement::kPending) place(e);
      continue;
    }
    if (!dirty_.empty()) {
      Vertex v = dirty_.back();
      dirty_.pop_back();
      restore_surplus(v);
      continue;
    }
    break;
  }
}

void ArbEngine::insert_edge(Vertex u, Vertex v) {
  ReorientLog touched = ref_.insert_edge(u, v);
  reprocess(touched);
  settle();
  if (opt_.paranoid) check();
}

void ArbEngine::delete_edge(Vertex u, Vertex v) {
  if (u == v) throw SelfLoopError("self-loop deletion");
  EdgeId e = g_.find(u, v);
  if (e == kNoEdge) throw NotFoundError("edge absent");
  ensure(e);
  if (kind_[e] != Placement::kNone) apply(split_.on_delete(e, structural_tail(e)));
  ReorientLog touched = ref_.delete_edge(u, v);
  reprocess(touched);
  settle();
  if (opt_.paranoid) check();
}

std::vector<std::vector<EdgeId>> ArbEngine::forests() const {
  std::vector<std::vector<EdgeId>> out(parts_.size() + 1);
  for (EdgeId e : g_.edge_ids()) {
    Placement k = placement(e);
    if (k == Placement::kForest) out[epart_[e]].push_back(e);
    if (k == Placement::kMatch) out.back().push_back(e);
  }
  return out;
}

std::vector<EdgeId> ArbEngine::surplus_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e : g_.edge_ids())
    if (placement(e) == Placement::kMatch) out.push_back(e);
  return out;
}

void ArbEngine::check() {
  ref_.check(false);
  if (!r_.empty()) throw ConsistencyError("placement queue not drained");
  std::vector<std::pair<EdgeId, Vertex>> oriented;
  std::vector<int> forest_edges(parts_.size(), 0);
  std::vector<std::map<Vertex, int>> m_deg(parts_.size());
  for (EdgeId e : g_.edge_ids()) {
    Placement k = placement(e);
    if (ref_.in_h(e)) {
      if (k != Placement::kNone) throw ConsistencyError("H edge also in a pseudoforest");
      continue;
    }
    if (k != Placement::kForest && k != Placement::kMatch)
      throw ConsistencyError("edge outside H and outside every pseudoforest");
    if (split_.partition_of(e) != epart_[e]) throw ConsistencyError("partition index out of sync");
    Vertex t = structural_tail(e);
    if (t != ref_.count_tail(e)) throw ConsistencyError("pseudoforest not faithful to rounding");
    oriented.emplace_back(e, t);
    Part& p = *parts_[epart_[e]];
    Vertex a = g_.tail_end(e), b = g_.head_end(e);
    if (k == Placement::kForest) {
      ++forest_edges[epart_[e]];
      if (!p.f.has_edge(a, b) || !p.hl.has_edge(a, b))
        throw ConsistencyError("forest edge missing from its forest");
      if (g_.home(e) != &p.f) throw ConsistencyError("forest edge counters homed elsewhere");
      if (opt_.paranoid && p.hl.is_clean(a, b) &&
          p.f.flag(a, b) != differs_by_two(g_, a, b))
        throw ConsistencyError("clean validity bit is stale");
    } else {
      if (p.m_at[mtail_[e]] != e) throw ConsistencyError("matching edge not indexed at its tail");
      if (p.f.find_root(mtail_[e]) != mtail_[e])
        throw ConsistencyError("matching edge does not leave the root");
      if (!p.f.connected(a, b)) throw ConsistencyError("matching edge does not close a cycle");
      if (++m_deg[epart_[e]][a] > 1 || ++m_deg[epart_[e]][b] > 1)
        throw ConsistencyError("M_i is not a matching");
    }
  }
  split_.check(oriented);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i]->f.num_edges() != forest_edges[i])
      throw ConsistencyError("forest holds stray edges");
    parts_[i]->hl.check();
  }
  if (opt_.surplus) {
    std::vector<Vertex> uf(g_.n());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](Vertex x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::vector<EdgeId> sm = surplus_edges();
    for (EdgeId e : sm) {
      Vertex a = find(g_.tail_end(e)), b = find(g_.head_end(e));
      if (a == b) throw ConsistencyError("surplus graph has a cycle");
      uf[a] = b;
    }
    std::set<std::pair<Vertex, int>> colours;
    for (EdgeId e : sm)
      if (!colours.insert({find(g_.tail_end(e)), epart_[e]}).second)
        throw ConsistencyError("surplus component not colourful");
  }
}

}  // namespace dyno
