#include "dyno/frac_orient.hpp"

#include <algorithm>
#include <string>

namespace dyno {

FracOrient::FracOrient(GraphState& g) : g_(g), out_(g.n()), in_(g.n()) {}

void FracOrient::ensure(EdgeId e) {
  if (e >= static_cast<EdgeId>(present_.size())) {
    std::size_t n = std::max<std::size_t>(e + 1, present_.size() * 2);
    present_.resize(n, {0, 0});
    key_.resize(n, {0, 0});
    seen_.resize(n, 0);
  }
}

void FracOrient::begin_log() {
  log_.clear();
  ++epoch_;
}

void FracOrient::note(EdgeId e) {
  ensure(e);
  if (seen_[e] != epoch_) {
    seen_[e] = epoch_;
    log_.push_back(e);
  }
}

bool FracOrient::listed(EdgeId e, Vertex u) const {
  if (e >= static_cast<EdgeId>(present_.size())) return false;
  return present_[e][g_.tail_end(e) == u ? 0 : 1] != 0;
}

void FracOrient::link_nbr(EdgeId e, Vertex u, Vertex v) {
  ensure(e);
  int d = g_.tail_end(e) == u ? 0 : 1;
  if (present_[e][d]) return;
  present_[e][d] = 1;
  key_[e][d] = g_.load(u);
  out_[u].emplace(v, e);
  in_[v].insert({key_[e][d], u});
}

void FracOrient::unlink_nbr(EdgeId e, Vertex u, Vertex v) {
  ensure(e);
  int d = g_.tail_end(e) == u ? 0 : 1;
  if (!present_[e][d]) return;
  present_[e][d] = 0;
  out_[u].erase(v);
  in_[v].erase({key_[e][d], u});
}

void FracOrient::add(EdgeId e, Vertex u, Vertex v) {
  g_.write_count(e, u, g_.count(e, u) + 1);
  link_nbr(e, u, v);
  note(e);
}

void FracOrient::remove(EdgeId e, Vertex u, Vertex v) {
  int c = g_.count(e, u);
  if (c <= 0) throw NotFoundError("no copy in that direction");
  if (c == 1) unlink_nbr(e, u, v);
  g_.write_count(e, u, c - 1);
  note(e);
}

void FracOrient::reorient(EdgeId e, Vertex u, Vertex v) {
  int cu = g_.count(e, u);
  int cv = g_.count(e, v);
  if (cu <= 0) throw NotFoundError("no copy in that direction");
  // A forest home keeps one number per edge, so the other side follows.
  g_.write_count(e, u, cu - 1);
  if (!g_.home(e)) g_.write_count(e, v, cv + 1);
  if (cu == 1) unlink_nbr(e, u, v);
  link_nbr(e, v, u);
  note(e);
  ++counters_.reorientations;
}

void FracOrient::increment(Vertex u) {
  g_.add_load(u, 1);
  for (auto [v, e] : out_[u]) {
    int d = g_.tail_end(e) == u ? 0 : 1;
    in_[v].erase({key_[e][d], u});
    key_[e][d] = g_.load(u);
    in_[v].insert({key_[e][d], u});
  }
  if (load_hook_) load_hook_(u);
}

void FracOrient::decrement(Vertex u) {
  g_.add_load(u, -1);
  for (auto [v, e] : out_[u]) {
    int d = g_.tail_end(e) == u ? 0 : 1;
    in_[v].erase({key_[e][d], u});
    key_[e][d] = g_.load(u);
    in_[v].insert({key_[e][d], u});
  }
  if (load_hook_) load_hook_(u);
}

std::optional<Vertex> FracOrient::tight_out_nbr(Vertex u) const {
  for (auto [w, e] : out_[u])
    if (2 * (g_.load(w) - g_.load(u)) <= -g_.params().eta_num) return w;
  return std::nullopt;
}

std::optional<Vertex> FracOrient::in_heap_max(Vertex v) const {
  if (in_[v].empty()) return std::nullopt;
  return in_[v].rbegin()->second;
}

std::optional<Vertex> FracOrient::tight_in_nbr(Vertex u) const {
  if (in_[u].empty()) return std::nullopt;
  auto [key, w] = *in_[u].rbegin();
  if (2 * (g_.load(u) - key) <= -g_.params().eta_num) return w;
  return std::nullopt;
}

std::vector<Vertex> FracOrient::in_nbrs(Vertex v) const {
  std::vector<Vertex> r;
  for (auto [k, u] : in_[v]) r.push_back(u);
  std::sort(r.begin(), r.end());
  return r;
}

void FracOrient::reconcile_edge(Vertex u, Vertex v) {
  EdgeId e = g_.find(u, v);
  if (e == kNoEdge) return;
  for (int i = 0; i < 2; ++i) {
    if (g_.count(e, u) == 0)
      unlink_nbr(e, u, v);
    else
      link_nbr(e, u, v);
    std::swap(u, v);
  }
}

void FracOrient::update_nbrs(Vertex v) {
  if (provider_) {
    scratch_.clear();
    provider_(v, scratch_);
    for (Vertex x : scratch_) reconcile_edge(v, x);
  }
  if (paranoid_) check_vertex(v);
}

ReorientLog FracOrient::insert_copy(Vertex u, Vertex v) {
  begin_log();
  EdgeId e = g_.find(u, v);
  if (u == v) throw SelfLoopError("self-loop copy");
  if (e == kNoEdge) throw NotFoundError("bundle absent");
  Vertex w;
  if (g_.load(u) <= g_.load(v)) {
    add(e, u, v);
    w = u;
  } else {
    add(e, v, u);
    w = v;
  }
  update_nbrs(w);
  long long chain = 0;
  while (auto next = tight_out_nbr(w)) {
    Vertex w2 = *next;
    reorient(g_.find(w, w2), w, w2);
    w = w2;
    update_nbrs(w);
    ++chain;
  }
  increment(w);
  ++counters_.copy_inserts;
  counters_.longest_chain = std::max(counters_.longest_chain, chain);
  return log_;
}

ReorientLog FracOrient::delete_copy(Vertex u, Vertex v) {
  begin_log();
  if (u == v) throw SelfLoopError("self-loop copy");
  EdgeId e = g_.find(u, v);
  if (e == kNoEdge) throw NotFoundError("bundle absent");
  remove(e, u, v);
  Vertex w = u;
  update_nbrs(w);
  long long chain = 0;
  while (auto next = tight_in_nbr(w)) {
    Vertex w2 = *next;
    reorient(g_.find(w2, w), w2, w);
    w = w2;
    update_nbrs(w);
    ++chain;
  }
  decrement(w);
  ++counters_.copy_deletes;
  counters_.longest_chain = std::max(counters_.longest_chain, chain);
  return log_;
}

ReorientLog FracOrient::gamma_insert(Vertex u, Vertex v) {
  g_.add_edge(u, v);
  ReorientLog all;
  std::vector<char> mark;
  auto merge = [&](const ReorientLog& part) {
    for (EdgeId e : part) {
      if (e >= static_cast<EdgeId>(mark.size())) mark.resize(e + 1, 0);
      if (!mark[e]) {
        mark[e] = 1;
        all.push_back(e);
      }
    }
  };
  for (int i = 0; i < g_.gamma(); ++i) merge(insert_copy(u, v));
  return all;
}

ReorientLog FracOrient::gamma_delete(Vertex u, Vertex v) {
  EdgeId e = g_.find(u, v);
  if (e == kNoEdge) throw NotFoundError("edge absent");
  ReorientLog all;
  std::vector<char> mark;
  auto merge = [&](const ReorientLog& part) {
    for (EdgeId f : part) {
      if (f >= static_cast<EdgeId>(mark.size())) mark.resize(f + 1, 0);
      if (!mark[f]) {
        mark[f] = 1;
        all.push_back(f);
      }
    }
  };
  for (int i = 0; i < g_.gamma(); ++i) {
    if (g_.count(e, u) > 0)
      merge(delete_copy(u, v));
    else
      merge(delete_copy(v, u));
  }
  unlink_nbr(e, u, v);
  unlink_nbr(e, v, u);
  g_.remove_edge(e);
  return all;
}

void FracOrient::check_vertex(Vertex v) const {
  std::map<Vertex, EdgeId> want_out;
  std::set<std::pair<int, Vertex>> want_in;
  for (EdgeId e : g_.edge_ids()) {
    Vertex a = g_.tail_end(e), b = g_.head_end(e);
    if (a != v && b != v) continue;
    Vertex x = a == v ? b : a;
    if (g_.count(e, v) > 0) want_out.emplace(x, e);
    if (g_.count(e, x) > 0) want_in.insert({g_.load(x), x});
  }
  if (want_out != out_[v])
    throw ConsistencyError("stale out-neighbour set at vertex " + std::to_string(v));
  if (want_in != in_[v])
    throw ConsistencyError("stale in-neighbour heap at vertex " + std::to_string(v));
}

void FracOrient::check_all() const {
  for (Vertex v = 0; v < g_.n(); ++v) check_vertex(v);
}

}  // namespace dyno
