#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "dyno/oracles.hpp"

namespace dyno::tool {

namespace {

struct ModeName {
  Mode mode;
  const char* name;
};
constexpr ModeName kModes[] = {{Mode::kOrient, "orient"},
                               {Mode::kArb, "arb"},
                               {Mode::kBf, "bf"},
                               {Mode::kColourForest, "colour-forest"},
                               {Mode::kColourPseudo, "colour-pseudo"}};

const char* op_letter(OpKind k) {
  switch (k) {
    case OpKind::kAdd:
      return "a";
    case OpKind::kDel:
      return "d";
    case OpKind::kColour:
      return "c";
    case OpKind::kOutdeg:
      return "o";
    case OpKind::kCheckpoint:
      return "k";
  }
  return "?";
}

void fnv(std::uint64_t& h, long long x) {
  for (int k = 0; k < 8; ++k) {
    h ^= static_cast<std::uint64_t>(x >> (8 * k)) & 0xff;
    h *= 1099511628211ULL;
  }
}

}  // namespace

Mode mode_from_name(const std::string& name) {
  for (const ModeName& m : kModes)
    if (name == m.name) return m.mode;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string mode_name(Mode m) {
  for (const ModeName& x : kModes)
    if (x.mode == m) return x.name;
  return "?";
}

int infer_n(const std::vector<TraceOp>& ops) {
  int n = 0;
  for (const TraceOp& op : ops) n = std::max({n, op.u + 1, op.v + 1});
  return n;
}

Session::Session(const RunConfig& cfg) : cfg_(cfg) {
  if (cfg_.n < 2) throw ConfigError("need at least two vertices");
  if (cfg_.mode == Mode::kBf) {
    if (cfg_.alpha_max < 1) throw ConfigError("bf mode needs --alpha-max");
    bf_ = std::make_unique<BfEngine>(cfg_.n, cfg_.alpha_max);
    return;
  }
  Params p = Params::from_recipe(cfg_.n, cfg_.epsilon, cfg_.gamma_cap);
  if (cfg_.gamma > 0) p.gamma = cfg_.gamma;
  if (cfg_.alpha_max > 0) p.alpha_max = cfg_.alpha_max;
  cfg_.gamma = p.gamma;
  g_ = std::make_unique<GraphState>(p);
  if (cfg_.mode == Mode::kOrient) {
    ref_ = std::make_unique<Refinement>(*g_);
    ref_->set_paranoid(cfg_.paranoid);
    return;
  }
  arb_ = std::make_unique<ArbEngine>(*g_, ArbOptions{true, cfg_.paranoid});
  ColourMode cm = cfg_.mode == Mode::kColourPseudo ? ColourMode::kPseudoforest : ColourMode::kForest;
  colour_ = std::make_unique<Colouring>(*arb_, cm);
}

void Session::apply(const TraceOp& op) {
  if (op.kind == OpKind::kAdd) {
    if (bf_)
      bf_->insert_edge(op.u, op.v);
    else if (arb_)
      arb_->insert_edge(op.u, op.v);
    else
      ref_->insert_edge(op.u, op.v);
  } else if (op.kind == OpKind::kDel) {
    if (bf_)
      bf_->delete_edge(op.u, op.v);
    else if (arb_)
      arb_->delete_edge(op.u, op.v);
    else
      ref_->delete_edge(op.u, op.v);
  }
}

long long Session::query(const TraceOp& op) {
  if (op.u < 0 || op.u >= cfg_.n) throw NotFoundError("vertex out of range");
  if (op.kind == OpKind::kOutdeg) return out_degree(op.u);
  if (op.kind != OpKind::kColour) throw ConfigError("not a query");
  if (!colour_) throw ConfigError("colour queries need an arb or colour mode");
  return colour_->colour(op.u).code;
}

int Session::out_degree(Vertex v) const {
  if (bf_) return bf_->out_degree(v);
  if (arb_) return arb_->split().out_degree(v) + arb_->refinement().h_orient().out_degree(v);
  return ref_->rounded_out_degree(v);
}

int Session::max_out_degree() const {
  int m = 0;
  for (Vertex v = 0; v < cfg_.n; ++v) m = std::max(m, out_degree(v));
  return m;
}

std::int64_t Session::colour_count() const { return colour_ ? colour_->colour_count() : 0; }

std::vector<std::pair<Vertex, Vertex>> Session::edge_list() const {
  EdgeList es;
  if (bf_) {
    for (EdgeId e : bf_->edge_ids()) es.emplace_back(bf_->tail(e), bf_->head(e));
  } else {
    for (EdgeId e : g_->edge_ids()) es.emplace_back(g_->tail_end(e), g_->head_end(e));
  }
  return es;
}

int Session::reference_alpha() const {
  if (cfg_.alpha_max > 0) return cfg_.alpha_max;
  EdgeList es = edge_list();
  if (es.empty()) return 0;
  try {
    return exact_arboricity(es);
  } catch (const SizeError&) {
    return -1;
  }
}

std::vector<Violation> Session::verify() {
  std::vector<Violation> out;
  auto fail = [&](const std::string& what, const std::string& detail) {
    out.push_back({-1, what, detail});
  };
  auto guarded = [&](const std::string& what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      fail(what, e.what());
    }
  };

  if (bf_) {
    guarded("bf-structure", [&] { bf_->check(); });
    EdgeList arcs = edge_list();
    if (!is_acyclic(arcs)) fail("acyclic-orientation", "directed cycle found");
    for (Vertex v = 0; v < cfg_.n; ++v)
      if (bf_->out_degree(v) > bf_->bound())
        fail("out-degree-bound", "vertex " + std::to_string(v) + " has out-degree " +
                                     std::to_string(bf_->out_degree(v)));
    for (int i = 0; i < bf_->split().partitions_used(); ++i)
      if (!is_forest(bf_->partition_edges(i)))
        fail("partition-forest", "partition " + std::to_string(i) + " has a cycle");
    return out;
  }

  const Refinement& ref = arb_ ? arb_->refinement() : *ref_;
  if (arb_)
    guarded("engine-consistency", [&] { arb_->check(); });
  else
    guarded("engine-consistency", [&] { ref_->check(); });

  auto bad = check_eta_valid(*g_, 1);
  if (!bad.empty())
    fail("edge-validity", std::to_string(bad.size()) + " copies with load gap above 1, first " +
                              std::to_string(bad[0].tail) + "->" + std::to_string(bad[0].head));
  EdgeList h;
  const int gam = g_->gamma();
  const Params& p = g_->params();
  for (EdgeId e : g_->edge_ids()) {
    int c = g_->count(e, g_->tail_end(e));
    if (ref.in_h(e)) {
      h.emplace_back(g_->tail_end(e), g_->head_end(e));
      if (c < p.lo_closed() || c > p.hi_closed())
        fail("refinement-closed", "edge " + std::to_string(e) + " split " + std::to_string(c) +
                                      "/" + std::to_string(gam - c));
    } else if (c > p.lo_open() && c < p.hi_open()) {
      fail("refinement-open", "edge " + std::to_string(e) + " split " + std::to_string(c) + "/" +
                                  std::to_string(gam - c) + " is outside H");
    }
  }
  if (!is_forest(h)) fail("h-acyclic", "H has a cycle");

  int alpha = reference_alpha();
  int bound = alpha < 0 ? -1 : static_cast<int>(std::floor((1 + cfg_.epsilon) * alpha)) + 2;
  if (bound >= 0 && max_out_degree() > bound)
    fail("out-degree-bound",
         "max out-degree " + std::to_string(max_out_degree()) + " above " + std::to_string(bound));

  if (!arb_) return out;

  std::multiset<EdgeId> covered;
  int sets = h.empty() ? 0 : 1;
  for (const auto& f : arb_->forests()) {
    EdgeList fe;
    for (EdgeId e : f) fe.emplace_back(g_->tail_end(e), g_->head_end(e));
    if (!is_forest(fe)) fail("forest-shape", "a reported forest has a cycle");
    covered.insert(f.begin(), f.end());
    sets += !f.empty();
  }
  for (EdgeId e : ref.h_edges()) covered.insert(e);
  auto ids = g_->edge_ids();
  if (covered != std::multiset<EdgeId>(ids.begin(), ids.end()))
    fail("forest-cover", "forests plus H do not partition the edge set");
  if (bound >= 0 && sets > bound)
    fail("forest-count", std::to_string(sets) + " forests, bound " + std::to_string(bound));

  std::vector<std::int64_t> colours(cfg_.n);
  for (Vertex v = 0; v < cfg_.n; ++v) colours[v] = colour_->colour(v).code;
  if (!is_proper(colours, edge_list())) fail("proper-colouring", "an edge joins equal colours");
  return out;
}

Totals Session::totals() const {
  Totals t;
  if (bf_) {
    t.reorientations = bf_->counters().reorientations;
    t.moves = bf_->split().total_moves();
    return t;
  }
  const Refinement& ref = arb_ ? arb_->refinement() : *ref_;
  t.reorientations = ref.frac().counters().reorientations;
  if (arb_) {
    const ArbCounters& c = arb_->counters();
    t.repairs = c.repair_pairs;
    t.moves = arb_->total_moves();
    t.surplus_ops = c.move1 + c.move2 + c.surplus_steps;
  }
  return t;
}

std::uint64_t Session::state_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  std::vector<std::tuple<Vertex, Vertex, int>> rows;
  if (bf_) {
    for (EdgeId e : bf_->edge_ids()) rows.emplace_back(bf_->tail(e), bf_->head(e), 0);
  } else {
    for (EdgeId e : g_->edge_ids()) {
      Vertex a = std::min(g_->tail_end(e), g_->head_end(e));
      Vertex b = std::max(g_->tail_end(e), g_->head_end(e));
      rows.emplace_back(a, b, g_->count(e, a));
    }
  }
  std::sort(rows.begin(), rows.end());
  for (auto [a, b, c] : rows) {
    fnv(h, a);
    fnv(h, b);
    fnv(h, c);
  }
  for (Vertex v = 0; v < cfg_.n; ++v) fnv(h, out_degree(v));
  return h;
}

RunResult run_trace(RunConfig cfg, const std::vector<TraceOp>& ops) {
  if (cfg.n == 0) cfg.n = infer_n(ops);
  Session s(cfg);
  nlohmann::json queries = nlohmann::json::array();
  nlohmann::json violations = nlohmann::json::array();
  long long adds = 0, dels = 0, checks = 0;
  auto record = [&](long long index, std::vector<Violation> found) {
    for (Violation& v : found)
      violations.push_back({{"op_index", index}, {"invariant", v.invariant}, {"detail", v.detail}});
  };
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const TraceOp& op = ops[k];
    long long index = static_cast<long long>(k);
    try {
      if (op.kind == OpKind::kAdd || op.kind == OpKind::kDel) {
        s.apply(op);
        (op.kind == OpKind::kAdd ? adds : dels) += 1;
      } else if (op.kind == OpKind::kColour || op.kind == OpKind::kOutdeg) {
        long long value = s.query(op);
        queries.push_back({{"op_index", index},
                           {"kind", op.kind == OpKind::kColour ? "colour" : "outdeg"},
                           {"vertex", op.u},
                           {"value", value}});
      }
    } catch (const ConsistencyError& e) {
      record(index, {{index, "engine-consistency", e.what()}});
      break;
    }
    bool due = op.kind == OpKind::kCheckpoint ||
               (cfg.verify_every > 0 && (k + 1) % static_cast<std::size_t>(cfg.verify_every) == 0);
    if (due) {
      ++checks;
      std::vector<Violation> found = s.verify();
      record(index, std::move(found));
    }
  }

  Totals t = s.totals();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(s.state_hash()));
  nlohmann::json report = {
      {"mode", mode_name(cfg.mode)},
      {"n", cfg.n},
      {"gamma", s.config().gamma},
      {"epsilon", cfg.epsilon},
      {"alpha_max", cfg.alpha_max},
      {"seed", cfg.seed},
      {"ops", ops.size()},
      {"adds", adds},
      {"deletes", dels},
      {"checks", checks},
      {"max_out_degree", s.max_out_degree()},
      {"colour_count", s.colour_count()},
      {"counters",
       {{"reorientations", t.reorientations},
        {"repairs", t.repairs},
        {"moves", t.moves},
        {"surplus_ops", t.surplus_ops}}},
      {"queries", queries},
      {"violations", violations},
      {"state_hash", hash},
      {"ok", violations.empty()},
  };
  return {report, violations.empty() ? 0 : 1};
}

void bench_trace(RunConfig cfg, const std::vector<TraceOp>& ops, std::ostream& out) {
  out << kBenchHeader << '\n';
  if (ops.empty()) return;
  if (cfg.n == 0) cfg.n = infer_n(ops);
  Session s(cfg);
  using Clock = std::chrono::steady_clock;
  char micros[32];
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const TraceOp& op = ops[k];
    auto t0 = Clock::now();
    if (op.kind == OpKind::kAdd || op.kind == OpKind::kDel)
      s.apply(op);
    else if (op.kind != OpKind::kCheckpoint)
      s.query(op);
    auto t1 = Clock::now();
    Totals t = s.totals();
    std::snprintf(micros, sizeof micros, "%.3f",
                  std::chrono::duration<double, std::micro>(t1 - t0).count());
    out << k << ',' << op_letter(op.kind) << ',' << micros << ',' << t.reorientations << ','
        << t.repairs << ',' << t.moves << ',' << t.surplus_ops << '\n';
  }
}

}  // namespace dyno::tool
