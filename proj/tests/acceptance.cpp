// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dyno/acyclic_bf.hpp"
#include "dyno/arboricity.hpp"
#include "dyno/colouring.hpp"
#include "dyno/dyn_forest.hpp"
#include "dyno/oracles.hpp"
#include "dyno/refinement.hpp"
#include "dyno/trace.hpp"
#include "support/gen.hpp"

using namespace dyno;

namespace {

// Pinned limits.
constexpr int kForestOps = 10000;
constexpr int kForestVertices = 200;
constexpr double kForestSeconds = 5.0;

constexpr int kSmallTraces = 200;
constexpr int kSmallN = 12;
constexpr int kSmallSteps = 300;
constexpr double kEpsilons[] = {0.5, 1.0};
constexpr int kGammas[] = {8, 16};
constexpr double kOrientSeconds = 60.0;
constexpr double kArbSeconds = 120.0;

constexpr int kBfTraces = 200;
constexpr int kBfN = 100;
constexpr int kBfSteps = 2000;
constexpr double kBfSeconds = 60.0;

constexpr int kScaleSizes[] = {100, 1000, 10000};
constexpr int kScaleStepsPerVertex = 4;
constexpr int kScaleGamma = 16;
constexpr double kScaleRatio = 4.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Tally {
  long long checks = 0;
  long long violations = 0;
  std::string first;
  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) fail(what);
  }
};

// Lines are held back so they come out in criterion order.
std::map<int, std::string> g_lines;

bool report(int id, const std::string& name, bool pass, const std::string& detail) {
  g_lines[id] = std::string(pass ? "PASS " : "FAIL ") + std::to_string(id) + " " + name + ": " + detail;
  return pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string tally_text(const Tally& t) {
  std::string s = fmt("%lld checks, %lld violations", t.checks, t.violations);
  if (t.violations) s += " (first: " + t.first + ")";
  return s;
}

// --- 1. dynamic forest against the naive mirror -----------------------------

bool criterion_forest() {
  const int n = kForestVertices, gamma = 16;
  testgen::Rng rng(2024);
  DynForest f(n, gamma);
  NaiveForest m(n, gamma);
  std::vector<std::pair<Vertex, Vertex>> edges;
  Tally t;
  auto t0 = Clock::now();
  for (int step = 0; step < kForestOps; ++step) {
    Vertex u = rng.below(n), v = rng.below(n);
    int op = rng.below(12);
    if (op == 0 && !edges.empty()) {
      int k = rng.below(static_cast<int>(edges.size()));
      auto [x, y] = edges[k];
      edges.erase(edges.begin() + k);
      f.cut(x, y);
      m.cut(x, y);
      continue;
    }
    if (u == v) {
      t.expect(f.find_root(u) == m.find_root(u), "find_root");
      continue;
    }
    bool conn = m.connected(u, v);
    t.expect(f.connected(u, v) == conn, "connected");
    if (!conn) {
      if (op < 8) {
        int w = rng.below(gamma + 1);
        f.link(u, v, w);
        m.link(u, v, w);
        edges.emplace_back(u, v);
      }
    } else if (op < 4) {
      int x = rng.below(5) - 2;
      bool ok = true;
      try {
        m.add_weight(u, v, x);
      } catch (const WeightRangeError&) {
        ok = false;
      }
      bool fok = true;
      try {
        f.add_weight(u, v, x);
      } catch (const WeightRangeError&) {
        fok = false;
      }
      t.expect(ok == fok, "add_weight range");
    } else if (op < 6) {
      t.expect(f.min_weight(u, v) == m.min_weight(u, v), "min_weight");
      t.expect(f.max_weight(u, v) == m.max_weight(u, v), "max_weight");
      auto which = op == 4 ? DynForest::Extreme::kMin : DynForest::Extreme::kMax;
      ForestEdge a = f.find_extreme_edge(u, v, which), b = m.find_extreme_edge(u, v, which);
      t.expect(a.from == b.from && a.to == b.to, "find_extreme_edge");
    } else if (op < 7) {
      f.set_root(u);
      m.set_root(u);
    } else if (op < 9) {
      t.expect(f.depth_parity(u) == m.depth_parity(u), "depth_parity");
      t.expect(f.find_root(v) == m.find_root(v), "find_root");
    } else {
      auto p = m.find_flagged_edge_on_path(u, v);
      auto q = f.find_flagged_edge_on_path(u, v);
      t.expect(p.has_value() == q.has_value() && (!p || (p->from == q->from && p->to == q->to)),
               "find_flagged_edge_on_path");
      if (!edges.empty()) {
        auto [x, y] = edges[rng.below(static_cast<int>(edges.size()))];
        bool flag = rng.chance(50);
        f.set_flag(x, y, flag);
        m.set_flag(x, y, flag);
      }
    }
  }
  for (auto [x, y] : edges) t.expect(f.weight(x, y) == m.weight(x, y), "weight");
  double s = seconds_since(t0);
  return report(1, "dynamic-forest mirror", t.violations == 0 && s < kForestSeconds,
                fmt("%d ops on %d vertices, ", kForestOps, n) + tally_text(t) +
                    fmt(", %.2f s (limit %.0f s)", s, kForestSeconds));
}

// --- shared small traces ----------------------------------------------------

struct SmallTrace {
  int alpha_max;
  std::vector<TraceOp> ops;
  std::vector<int> alpha;  // exact arboricity after each op
};

std::vector<SmallTrace> small_traces() {
  std::vector<SmallTrace> out;
  for (int t = 0; t < kSmallTraces; ++t) {
    SmallTrace st;
    st.alpha_max = 1 + t % 3;
    st.ops = generate_trace(GenKind::kRandom, kSmallN, kSmallSteps, 1000 + t, st.alpha_max);
    std::set<std::pair<int, int>> es;
    for (const TraceOp& op : st.ops) {
      auto key = std::minmax(op.u, op.v);
      if (op.kind == OpKind::kAdd)
        es.insert(key);
      else
        es.erase(key);
      st.alpha.push_back(es.empty() ? 0 : exact_arboricity(EdgeList(es.begin(), es.end())));
    }
    out.push_back(std::move(st));
  }
  return out;
}

int bound_for(double eps, int alpha) { return static_cast<int>(std::floor((1 + eps) * alpha)) + 2; }

EdgeList ends(const GraphState& g, const std::vector<EdgeId>& es) {
  EdgeList out;
  for (EdgeId e : es) out.emplace_back(g.tail_end(e), g.head_end(e));
  return out;
}

// --- 2 and 3. rounded orientation, validity and refinement ------------------

bool criteria_orient(const std::vector<SmallTrace>& traces) {
  Tally bound, inv;
  long long inversions = 0;
  auto t0 = Clock::now();
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const SmallTrace& st = traces[t];
    for (double eps : kEpsilons) {
      for (int gamma : kGammas) {
        GraphState g(testgen::small_params(kSmallN, gamma, eps));
        Refinement r(g);
        r.set_paranoid(true);
        const Params& p = g.params();
        for (std::size_t k = 0; k < st.ops.size(); ++k) {
          const TraceOp& op = st.ops[k];
          std::string where = fmt("trace %zu eps %.1f gamma %d op %zu", t, eps, gamma, k);
          try {
            if (op.kind == OpKind::kAdd)
              r.insert_edge(op.u, op.v);
            else
              r.delete_edge(op.u, op.v);
          } catch (const ConsistencyError& e) {
            inv.fail(where + ": " + e.what());
            continue;
          }
          int b = bound_for(eps, st.alpha[k]);
          for (Vertex v = 0; v < kSmallN; ++v)
            bound.expect(r.rounded_out_degree(v) <= b, where + " out-degree");

          inv.expect(check_eta_valid(g, 1).empty(), where + " 1-validity");
          EdgeList h;
          std::vector<int> sum(kSmallN, 0);
          for (EdgeId e : g.edge_ids()) {
            Vertex a = g.tail_end(e), c = g.head_end(e);
            int ca = g.count(e, a);
            sum[a] += ca;
            sum[c] += g.count(e, c);
            if (r.in_h(e)) {
              h.emplace_back(a, c);
              inv.expect(ca >= p.lo_closed() && ca <= p.hi_closed(), where + " closed interval");
            } else {
              inv.expect(!(ca > p.lo_open() && ca < p.hi_open()), where + " open interval");
            }
          }
          inv.expect(is_forest(h), where + " H acyclic");
          // Stored loads only move at chain ends; a load-changing inversion
          // would leave them out of step with the counters.
          for (Vertex v = 0; v < kSmallN; ++v) inv.expect(sum[v] == g.load(v), where + " load");
        }
        inversions += r.counters().inversions;
      }
    }
  }
  double s = seconds_since(t0);
  bool a = report(2, "orientation bound", bound.violations == 0 && s < kOrientSeconds,
                  fmt("%d traces x 4 settings, ", kSmallTraces) + tally_text(bound) +
                      fmt(", %.1f s (limit %.0f s)", s, kOrientSeconds));
  bool b = report(3, "validity and refinement", inv.violations == 0,
                  tally_text(inv) + fmt(", %lld cycle inversions", inversions));
  return a && b;
}

// --- 4, 6 and 7. decomposition, colouring and amortized counters ------------

struct Surplus {
  bool acyclic = true;
  bool colourful = true;
};

Surplus surplus_shape(ArbEngine& a) {
  GraphState& g = a.graph();
  std::vector<Vertex> up(g.n());
  for (Vertex v = 0; v < g.n(); ++v) up[v] = v;
  auto find = [&](Vertex v) {
    while (up[v] != v) v = up[v] = up[up[v]];
    return v;
  };
  Surplus s;
  std::vector<EdgeId> m = a.surplus_edges();
  for (EdgeId e : m) {
    Vertex x = find(g.tail_end(e)), y = find(g.head_end(e));
    if (x == y) s.acyclic = false;
    up[x] = y;
  }
  std::set<std::pair<Vertex, int>> seen;
  for (EdgeId e : m)
    if (!seen.insert({find(g.tail_end(e)), a.partition(e)}).second) s.colourful = false;
  return s;
}

std::int64_t product(const std::vector<int>& r) {
  std::int64_t p = 1;
  for (int x : r) p *= x;
  return p;
}

// Amortized counters, reported together under criterion 7.
struct Soft {
  Tally arb, bf;
  double worst_repair = 0, worst_moves = 0, worst_bf = 0;
};

bool criteria_arb(const std::vector<SmallTrace>& traces, Soft& soft) {
  Tally dec, col;
  auto t0 = Clock::now();
  double colour_time = 0;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const SmallTrace& st = traces[t];
    for (double eps : kEpsilons) {
      for (int gamma : kGammas) {
        GraphState g(testgen::small_params(kSmallN, gamma, eps));
        ArbEngine a(g);
        Colouring cf(a, ColourMode::kForest), cp(a, ColourMode::kPseudoforest);
        const int top = static_cast<int>(std::floor((1 + eps) * st.alpha_max));
        long long ins = 0, dels = 0;
        for (std::size_t k = 0; k < st.ops.size(); ++k) {
          const TraceOp& op = st.ops[k];
          std::string where = fmt("trace %zu eps %.1f gamma %d op %zu", t, eps, gamma, k);
          try {
            if (op.kind == OpKind::kAdd) {
              a.insert_edge(op.u, op.v);
              ++ins;
            } else {
              a.delete_edge(op.u, op.v);
              ++dels;
            }
          } catch (const Error& e) {
            dec.fail(where + ": " + e.what());
            continue;
          }
          std::multiset<EdgeId> covered;
          int sets = 0;
          for (const auto& f : a.forests()) {
            dec.expect(is_forest(ends(g, f)), where + " forest shape");
            covered.insert(f.begin(), f.end());
            sets += !f.empty();
          }
          std::vector<EdgeId> h = a.refinement().h_edges();
          dec.expect(is_forest(ends(g, h)), where + " H shape");
          covered.insert(h.begin(), h.end());
          sets += !h.empty();
          auto ids = g.edge_ids();
          dec.expect(covered == std::multiset<EdgeId>(ids.begin(), ids.end()), where + " cover");
          dec.expect(sets <= bound_for(eps, st.alpha[k]), where + " forest count");
          Surplus s = surplus_shape(a);
          dec.expect(s.acyclic, where + " surplus acyclic");
          dec.expect(s.colourful, where + " surplus colourful");

          auto tc = Clock::now();
          EdgeList es = ends(g, ids);
          for (Colouring* c : {&cf, &cp}) {
            std::vector<std::int64_t> colour(kSmallN);
            for (Vertex v = 0; v < kSmallN; ++v) colour[v] = c->colour(v).code;
            col.expect(is_proper(colour, es), where + " proper");
            col.expect(c->colour_count() == product(c->radices()), where + " radix product");
          }
          col.expect(cf.colour_count() <= (std::int64_t{4} << top), where + " forest colour count");
          col.expect(cp.colour_count() <= 2 * static_cast<std::int64_t>(std::pow(3, top)),
                     where + " pseudoforest colour count");
          colour_time += seconds_since(tc);
        }
        double dplus = (1 + eps) * st.alpha_max * gamma + std::log(kSmallN) / std::log(1 + eps);
        double repair_cap = 4.0 * gamma * dplus * (dplus * ins + dels);
        double move_cap = 8.0 * gamma * dplus * dplus * dplus * (ins + dels);
        double rp = static_cast<double>(a.counters().repair_pairs);
        double mv = static_cast<double>(a.total_moves());
        soft.arb.expect(rp <= repair_cap, fmt("trace %zu repair pairs %.0f > %.0f", t, rp, repair_cap));
        soft.arb.expect(mv <= move_cap, fmt("trace %zu moves %.0f > %.0f", t, mv, move_cap));
        soft.worst_repair = std::max(soft.worst_repair, rp / repair_cap);
        soft.worst_moves = std::max(soft.worst_moves, mv / move_cap);
      }
    }
  }
  double s = seconds_since(t0);
  bool a = report(4, "arboricity decomposition", dec.violations == 0 && s < kArbSeconds,
                  tally_text(dec) + fmt(", %.1f s with colouring %.1f s (limit %.0f s)", s,
                                        colour_time, kArbSeconds));
  bool b = report(6, "implicit colouring", col.violations == 0, tally_text(col));
  return a && b;
}

// --- 5. acyclic orientation with bounded out-degree --------------------------

bool criterion_bf(Soft& soft) {
  Tally t;
  auto t0 = Clock::now();
  double oracle_time = 0;
  for (int k = 0; k < kBfTraces; ++k) {
    const int am = 1 + k % 3;
    auto ops = generate_trace(GenKind::kRandom, kBfN, kBfSteps, 5000 + k, am);
    BfEngine bf(kBfN, am);
    long long ins = 0;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const TraceOp& op = ops[j];
      std::string where = fmt("trace %d op %zu", k, j);
      if (op.kind == OpKind::kAdd) {
        bf.insert_edge(op.u, op.v);
        ++ins;
      } else {
        bf.delete_edge(op.u, op.v);
      }
      EdgeList arcs;
      for (EdgeId e : bf.edge_ids()) arcs.emplace_back(bf.tail(e), bf.head(e));
      t.expect(is_acyclic(arcs), where + " acyclic");
      int worst = 0;
      for (Vertex v = 0; v < kBfN; ++v) worst = std::max(worst, bf.out_degree(v));
      t.expect(worst <= 2 * (am + 1), where + " out-degree");
      for (int i = 0; i < bf.split().partitions_used(); ++i)
        t.expect(is_forest(bf.partition_edges(i)), where + " partition forest");
    }
    auto to = Clock::now();
    const int delta = am + 1, d = bf.bound();
    long long r = offline_reorientations(kBfN, delta, ops);
    oracle_time += seconds_since(to);
    double cap = static_cast<double>(delta * ins + r) * (d + 1) / (d + 1 - 2 * delta);
    double got = static_cast<double>(bf.counters().reorientations);
    soft.bf.expect(got <= cap, fmt("trace %d reorientations %.0f > %.0f", k, got, cap));
    soft.worst_bf = std::max(soft.worst_bf, got / cap);
  }
  double s = seconds_since(t0) - oracle_time;
  return report(5, "acyclic bounded orientation", t.violations == 0 && s < kBfSeconds,
                fmt("%d traces, n=%d, %d ops, ", kBfTraces, kBfN, kBfSteps) + tally_text(t) +
                    fmt(", %.1f s (limit %.0f s)", s, kBfSeconds));
}

bool criterion_soft(const Soft& soft) {
  bool ok = soft.arb.violations == 0 && soft.bf.violations == 0;
  std::string detail =
      fmt("repair pairs at most %.4f of cap, moves at most %.6f of cap, BF reorientations at "
          "most %.3f of cap",
          soft.worst_repair, soft.worst_moves, soft.worst_bf);
  if (soft.arb.violations) detail += "; " + soft.arb.first;
  if (soft.bf.violations) detail += "; " + soft.bf.first;
  return report(7, "amortized counters", ok, detail);
}

// --- 8. per-update time against n --------------------------------------------

bool criterion_scaling() {
  std::vector<double> medians;
  for (int n : kScaleSizes) {
    auto ops = generate_trace(GenKind::kPlanarLike, n, kScaleStepsPerVertex * n, 8, 3);
    GraphState g(testgen::small_params(n, kScaleGamma));
    Refinement r(g);
    std::vector<double> micros;
    micros.reserve(ops.size());
    for (const TraceOp& op : ops) {
      auto t0 = Clock::now();
      if (op.kind == OpKind::kAdd)
        r.insert_edge(op.u, op.v);
      else
        r.delete_edge(op.u, op.v);
      micros.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t0).count());
    }
    std::nth_element(micros.begin(), micros.begin() + micros.size() / 2, micros.end());
    medians.push_back(micros[micros.size() / 2]);
  }
  bool ok = true;
  std::string detail = "median us per update";
  for (std::size_t k = 0; k < medians.size(); ++k) {
    detail += fmt(" n=%d: %.2f", kScaleSizes[k], medians[k]);
    if (k > 0) {
      double ratio = medians[k] / std::max(medians[k - 1], 1e-3);
      detail += fmt(" (x%.2f)", ratio);
      ok = ok && ratio < kScaleRatio;
    }
  }
  return report(8, "scaling", ok, detail + fmt(", ratio limit %.0f", kScaleRatio));
}

}  // namespace

int main() {
  bool ok = criterion_forest();
  std::vector<SmallTrace> traces = small_traces();
  ok = criteria_orient(traces) && ok;
  Soft soft;
  bool arb_ok = criteria_arb(traces, soft);
  ok = criterion_bf(soft) && ok;
  ok = arb_ok && ok;
  ok = criterion_soft(soft) && ok;
  ok = criterion_scaling() && ok;
  for (const auto& [id, line] : g_lines) std::printf("%s\n", line.c_str());
  return ok ? 0 : 1;
}
