#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dyno/acyclic_bf.hpp"
#include "dyno/arboricity.hpp"
#include "dyno/colouring.hpp"
#include "dyno/dyn_forest.hpp"
#include "dyno/refinement.hpp"
#include "dyno/trace.hpp"

using namespace dyno;

namespace {

Params params_for(int n, int gamma) {
  Params p;
  p.n_cap = n;
  p.gamma = gamma;
  return p;
}

template <class Engine>
void replay(Engine& e, const std::vector<TraceOp>& ops) {
  for (const TraceOp& op : ops) {
    if (op.kind == OpKind::kAdd)
      e.insert_edge(op.u, op.v);
    else if (op.kind == OpKind::kDel)
      e.delete_edge(op.u, op.v);
  }
}

// Link a random tree, then run path queries and paired weight updates.
void BM_DynForestPathOps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  for (auto _ : state) {
    DynForest f(n, 16);
    for (int k = 1; k < n; ++k) f.link(static_cast<Vertex>(rng() % k), k, 8);
    for (int q = 0; q < n; ++q) {
      Vertex u = rng() % n, v = rng() % n;
      if (u == v) continue;
      benchmark::DoNotOptimize(f.min_weight(u, v));
      f.add_weight(u, v, 1);
      f.add_weight(u, v, -1);
    }
  }
  state.SetItemsProcessed(state.iterations() * 4 * (n - 1));
}
BENCHMARK(BM_DynForestPathOps)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_RefinementPlanarChurn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto ops = generate_trace(GenKind::kPlanarLike, n, 4 * n, 11, 3);
  for (auto _ : state) {
    GraphState g(params_for(n, 16));
    Refinement r(g);
    replay(r, ops);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(ops.size()));
}
BENCHMARK(BM_RefinementPlanarChurn)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ArbRandomChurn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto ops = generate_trace(GenKind::kRandom, n, 4 * n, 12, 2);
  for (auto _ : state) {
    GraphState g(params_for(n, 16));
    ArbEngine arb(g);
    replay(arb, ops);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(ops.size()));
}
BENCHMARK(BM_ArbRandomChurn)->Arg(100)->Arg(1000);

void BM_ColourQueries(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto ops = generate_trace(GenKind::kRandom, n, 4 * n, 13, 2);
  GraphState g(params_for(n, 16));
  ArbEngine arb(g);
  replay(arb, ops);
  Colouring col(arb, ColourMode::kForest);
  Vertex v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(col.colour(v));
    v = (v + 1) % n;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ColourQueries)->Arg(1000);

void BM_BfRandomChurn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto ops = generate_trace(GenKind::kRandom, n, 20 * n, 14, 2);
  for (auto _ : state) {
    BfEngine bf(n, 2);
    replay(bf, ops);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(ops.size()));
}
BENCHMARK(BM_BfRandomChurn)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
