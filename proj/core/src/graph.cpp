#include "dyno/graph.hpp"

#include <algorithm>
#include <cmath>

namespace dyno {

void Params::validate() const {
  if (n_cap <= 0) throw ConfigError("n_cap must be positive");
  if (gamma < 2) throw ConfigError("gamma must be at least 2");
  if (!(mu_num > 0 && mu_num < delta_num))
    throw ConfigError("need 0 < mu < delta");
  if (delta_num < 2) throw ConfigError("delta numerator must be at least 2");
  if (gamma <= delta_num) throw ConfigError("delta must be below 1");
  if (!(epsilon > 0.0 && epsilon < 1.0 + 1e-12))
    throw ConfigError("epsilon must lie in (0,1]");
  if (alpha_max && *alpha_max <= 0) throw ConfigError("alpha_max must be positive");
  if (eta_num != 1) throw ConfigError("eta is fixed to 1");
}

Params Params::from_recipe(int n_cap, double epsilon, int gamma_cap,
                           std::optional<int> alpha_max) {
  Params p;
  p.n_cap = n_cap;
  p.epsilon = epsilon;
  double eps1 = epsilon / 20.0;
  double lg = std::log2(std::max(2, n_cap));
  double g = std::ceil(lg / (eps1 * eps1));
  p.gamma = static_cast<int>(std::clamp(g, 3.0, static_cast<double>(std::max(3, gamma_cap))));
  p.delta_num = 2;
  p.mu_num = 1;
  p.alpha_max = alpha_max;
  p.validate();
  return p;
}

GraphState::GraphState(const Params& params) : params_(params) {
  params_.validate();
  load_.assign(params_.n_cap, 0);
}

void GraphState::check_vertex(Vertex v) const {
  if (v < 0 || v >= params_.n_cap) throw ConfigError("vertex id out of range");
}

EdgeId GraphState::find(Vertex u, Vertex v) const {
  auto it = index_.find(pair_key(u, v));
  return it == index_.end() ? kNoEdge : it->second;
}

std::optional<EdgeBundle> GraphState::get_bundle(Vertex u, Vertex v) const {
  if (u == v) throw SelfLoopError("self-loop query");
  check_vertex(u);
  check_vertex(v);
  EdgeId e = find(u, v);
  if (e == kNoEdge) return std::nullopt;
  return EdgeBundle{u, v, count(e, u), count(e, v)};
}

void GraphState::set_bundle(Vertex u, Vertex v, int count_u, int count_v) {
  if (u == v) throw SelfLoopError("self-loop bundle");
  EdgeId e = find(u, v);
  if (e == kNoEdge) throw NotFoundError("bundle absent");
  if (count_u < 0 || count_v < 0 || count_u + count_v != params_.gamma)
    throw ConsistencyError("bundle counts must be non-negative and sum to gamma");
  load_[u] += count_u - count(e, u);
  load_[v] += count_v - count(e, v);
  write_count(e, u, count_u);
  write_count(e, v, count_v);
}

EdgeId GraphState::add_edge(Vertex u, Vertex v) {
  if (u == v) throw SelfLoopError("self-loop insertion");
  check_vertex(u);
  check_vertex(v);
  if (find(u, v) != kNoEdge) throw DuplicateEdgeError("edge already present");
  EdgeId e;
  if (!free_.empty()) {
    e = free_.back();
    free_.pop_back();
  } else {
    e = static_cast<EdgeId>(edges_.size());
    edges_.emplace_back();
  }
  Rec& r = edges_[e];
  r = Rec{u, v, 0, 0, true, static_cast<int>(ids_.size()), nullptr};
  ids_.push_back(e);
  index_.emplace(pair_key(u, v), e);
  return e;
}

void GraphState::remove_edge(EdgeId e) {
  if (!alive(e)) throw NotFoundError("edge absent");
  Rec& r = edges_[e];
  if (r.home) set_home(e, nullptr);
  load_[r.u] -= r.cu;
  load_[r.v] -= r.cv;
  index_.erase(pair_key(r.u, r.v));
  EdgeId last = ids_.back();
  ids_[r.pos] = last;
  edges_[last].pos = r.pos;
  ids_.pop_back();
  r.alive = false;
  free_.push_back(e);
}

int GraphState::count(EdgeId e, Vertex from) const {
  const Rec& r = edges_[e];
  if (r.home) return r.home->home_count(e, from);
  return from == r.u ? r.cu : r.cv;
}

void GraphState::write_count(EdgeId e, Vertex from, int c) {
  Rec& r = edges_[e];
  if (c < 0 || c > params_.gamma) throw ConsistencyError("count out of range");
  if (r.home) {
    r.home->home_set(e, from, c);
    return;
  }
  (from == r.u ? r.cu : r.cv) = c;
}

void GraphState::set_home(EdgeId e, BundleHome* h) {
  Rec& r = edges_[e];
  if (r.home) {
    r.cu = r.home->home_count(e, r.u);
    r.cv = r.home->home_count(e, r.v);
  }
  r.home = h;
}

int GraphState::max_load() const {
  int m = 0;
  for (int x : load_) m = std::max(m, x);
  return m;
}

}  // namespace dyno
