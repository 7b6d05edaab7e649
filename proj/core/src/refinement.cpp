#include "dyno/refinement.hpp"

#include <algorithm>
#include <deque>

namespace dyno {

Refinement::Refinement(GraphState& g)
    : g_(g), frac_(g), h_(g.n(), g.gamma()), hl_(g.n()), round_out_(g.n()) {}

void Refinement::ensure(EdgeId e) {
  if (e >= static_cast<EdgeId>(in_h_.size())) {
    std::size_t n = std::max<std::size_t>(e + 1, in_h_.size() * 2);
    in_h_.resize(n, 0);
    tail_.resize(n, kNoVertex);
  }
}

bool Refinement::in_open(EdgeId e) const {
  int c = g_.count(e, g_.tail_end(e));
  const Params& p = g_.params();
  return c > p.lo_open() && c < p.hi_open();
}

bool Refinement::in_closed(EdgeId e) const {
  int c = g_.count(e, g_.tail_end(e));
  const Params& p = g_.params();
  return c >= p.lo_closed() && c <= p.hi_closed();
}

void Refinement::enter_h(EdgeId e) {
  if (before_enter_) before_enter_(e);
  ensure(e);
  Vertex u = g_.tail_end(e), v = g_.head_end(e);
  unround(e);
  h_.link(u, v, g_.count(e, u), e);
  g_.set_home(e, &h_);
  hl_.link(u, v);
  in_h_[e] = 1;
  changed_.push_back(e);
  ++counters_.links;
}

void Refinement::leave_h(EdgeId e) {
  Vertex u = g_.tail_end(e), v = g_.head_end(e);
  g_.set_home(e, nullptr);
  h_.cut(u, v);
  hl_.cut(u, v);
  in_h_[e] = 0;
  changed_.push_back(e);
  ++counters_.cuts;
  round_edge(e);
  if (after_leave_) after_leave_(e);
}

void Refinement::unround(EdgeId e) {
  ensure(e);
  Vertex t = tail_[e];
  if (t == kNoVertex) return;
  round_out_[t].erase(g_.other(e, t));
  tail_[e] = kNoVertex;
}

void Refinement::round_edge(EdgeId e) {
  ensure(e);
  if (!g_.alive(e) || in_h_[e] || !track_rounding_) {
    unround(e);
    return;
  }
  Vertex t = count_tail(e);
  if (g_.count(e, t) * 2 == g_.gamma()) ++counters_.round_ties;
  if (tail_[e] == t) return;
  unround(e);
  tail_[e] = t;
  round_out_[t].insert(g_.other(e, t));
}

void Refinement::handle_s_edge(EdgeId e) {
  Vertex u = g_.tail_end(e), v = g_.head_end(e);
  if (!h_.connected(u, v)) {
    enter_h(e);
    return;
  }
  const Params& p = g_.params();
  const int gam = p.gamma;
  // Cycle u .. v -> u; forward weights are X^w for the endpoint w met first.
  int xc = g_.count(e, v);
  int terms[4] = {h_.min_weight(u, v), gam - h_.max_weight(u, v), xc, gam - xc};
  int arg = static_cast<int>(std::min_element(terms, terms + 4) - terms);
  int l = terms[arg];

  std::vector<int> before;
  if (paranoid_) {
    before.assign(g_.n(), 0);
    for (EdgeId f : g_.edge_ids()) {
      before[g_.tail_end(f)] += g_.count(f, g_.tail_end(f));
      before[g_.head_end(f)] += g_.count(f, g_.head_end(f));
    }
  }

  if (l <= p.lo_open()) {
    if (arg >= 2) throw ConsistencyError("closing edge outside the open interval");
    ForestEdge fe = h_.find_extreme_edge(u, v, arg == 0 ? DynForest::Extreme::kMin
                                                        : DynForest::Extreme::kMax);
    leave_h(fe.tag);
    enter_h(e);
    ++counters_.plain_removals;
    return;
  }

  int shift = l - p.lo_open() + p.mu_num;
  int sign = (arg == 0 || arg == 2) ? -1 : 1;
  std::optional<ForestEdge> fe;
  if (arg < 2)
    fe = h_.find_extreme_edge(u, v, arg == 0 ? DynForest::Extreme::kMin
                                             : DynForest::Extreme::kMax);
  h_.add_weight(u, v, sign * shift);
  g_.write_count(e, v, xc + sign * shift);
  g_.write_count(e, u, gam - xc - sign * shift);
  ++counters_.inversions;

  if (paranoid_) {
    std::vector<int> after(g_.n(), 0);
    for (EdgeId f : g_.edge_ids()) {
      after[g_.tail_end(f)] += g_.count(f, g_.tail_end(f));
      after[g_.head_end(f)] += g_.count(f, g_.head_end(f));
    }
    if (after != before) throw ConsistencyError("cycle inversion changed a load");
  }

  if (fe) {
    leave_h(fe->tag);
    enter_h(e);
  } else {
    changed_.push_back(e);
  }
}

ReorientLog Refinement::process(const ReorientLog& q) {
  changed_.clear();
  std::deque<EdgeId> work(q.begin(), q.end());
  counters_.max_q = std::max<long long>(counters_.max_q, work.size());
  std::vector<EdgeId> s;
  while (!work.empty()) {
    EdgeId g;
    if (fifo_) {
      g = work.front();
      work.pop_front();
    } else {
      g = work.back();
      work.pop_back();
    }
    if (!g_.alive(g)) continue;
    if (in_h(g)) {
      if (!in_open(g)) leave_h(g);
    } else if (in_open(g)) {
      s.push_back(g);
    }
  }
  counters_.max_s = std::max<long long>(counters_.max_s, s.size());
  std::deque<EdgeId> sq(s.begin(), s.end());
  while (!sq.empty()) {
    EdgeId h;
    if (fifo_) {
      h = sq.front();
      sq.pop_front();
    } else {
      h = sq.back();
      sq.pop_back();
    }
    if (!g_.alive(h) || in_h(h) || !in_open(h)) continue;
    handle_s_edge(h);
  }

  ReorientLog out;
  std::set<EdgeId> seen;
  for (EdgeId e : q)
    if (seen.insert(e).second) out.push_back(e);
  for (EdgeId e : changed_)
    if (seen.insert(e).second) out.push_back(e);
  for (EdgeId e : out)
    if (g_.alive(e)) round_edge(e);
  return out;
}

ReorientLog Refinement::insert_edge(Vertex u, Vertex v) {
  ReorientLog log = frac_.gamma_insert(u, v);
  ReorientLog out = process(log);
  if (paranoid_) check(!lazy_nbrs_);
  return out;
}

ReorientLog Refinement::delete_edge(Vertex u, Vertex v) {
  if (u == v) throw SelfLoopError("self-loop deletion");
  EdgeId e = g_.find(u, v);
  if (e == kNoEdge) throw NotFoundError("edge absent");
  bool was_h = in_h(e);
  if (was_h) leave_h(e);
  unround(e);
  ReorientLog log = frac_.gamma_delete(u, v);
  ReorientLog out = process(log);
  if (was_h && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  if (paranoid_) check(!lazy_nbrs_);
  return out;
}

std::vector<Vertex> Refinement::rounded_out_nbrs(Vertex v) const {
  std::vector<Vertex> r(round_out_[v].begin(), round_out_[v].end());
  for (Vertex w : hl_.explicit_out_edges(v)) r.push_back(w);
  return r;
}

int Refinement::rounded_out_degree(Vertex v) const {
  return static_cast<int>(round_out_[v].size()) + hl_.out_degree(v);
}

Vertex Refinement::rounded_tail(EdgeId e) const {
  if (in_h(e)) {
    HLEdge he = hl_.edge(g_.tail_end(e), g_.head_end(e));
    return he.tail;
  }
  return e < static_cast<EdgeId>(tail_.size()) ? tail_[e] : kNoVertex;
}

Vertex Refinement::count_tail(EdgeId e) const {
  Vertex u = g_.tail_end(e), v = g_.head_end(e);
  int cu = g_.count(e, u), cv = g_.count(e, v);
  if (cu != cv) return cu > cv ? u : v;
  return std::max(u, v);
}

std::vector<EdgeId> Refinement::h_edges() const {
  std::vector<EdgeId> r;
  for (EdgeId e : g_.edge_ids())
    if (in_h(e)) r.push_back(e);
  return r;
}

void Refinement::check(bool with_nbr_lists) const {
  const int gam = g_.gamma();
  std::vector<int> load(g_.n(), 0);
  std::size_t h_count = 0;
  std::vector<std::size_t> outdeg(g_.n(), 0);
  for (EdgeId e : g_.edge_ids()) {
    Vertex u = g_.tail_end(e), v = g_.head_end(e);
    int cu = g_.count(e, u), cv = g_.count(e, v);
    if (cu + cv != gam) throw ConsistencyError("bundle does not sum to gamma");
    load[u] += cu;
    load[v] += cv;
    if (in_open(e) && !in_h(e)) throw ConsistencyError("evenly split edge missing from H");
    if (in_h(e)) {
      ++h_count;
      if (!in_closed(e)) throw ConsistencyError("H edge outside the closed interval");
      if (!h_.has_edge(u, v) || !hl_.has_edge(u, v))
        throw ConsistencyError("H membership out of sync");
    } else if (track_rounding_) {
      Vertex t = tail_[e];
      if (t == kNoVertex) throw ConsistencyError("edge outside H without rounding");
      int ct = g_.count(e, t), co = g_.count(e, g_.other(e, t));
      if (ct < co || (ct == co && t != std::max(u, v)))
        throw ConsistencyError("rounded direction disagrees with counters");
      ++outdeg[t];
    }
  }
  for (Vertex v = 0; v < g_.n(); ++v) {
    if (load[v] != g_.load(v)) throw ConsistencyError("load differs from counter sum");
    if (track_rounding_ && outdeg[v] != round_out_[v].size()) throw ConsistencyError("stale rounded out-set");
  }
  for (EdgeId e : g_.edge_ids()) {
    Vertex u = g_.tail_end(e), v = g_.head_end(e);
    if (g_.count(e, u) > 0 && g_.load(u) - g_.load(v) > 1)
      throw ConsistencyError("1-invalid copy");
    if (g_.count(e, v) > 0 && g_.load(v) - g_.load(u) > 1)
      throw ConsistencyError("1-invalid copy");
  }
  if (static_cast<std::size_t>(h_.num_edges()) != h_count || hl_.num_edges() != h_count)
    throw ConsistencyError("H forest holds stray edges");
  hl_.check();
  if (with_nbr_lists) frac_.check_all();
}

}  // namespace dyno
