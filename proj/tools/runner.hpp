#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dyno/acyclic_bf.hpp"
#include "dyno/arboricity.hpp"
#include "dyno/colouring.hpp"
#include "dyno/refinement.hpp"
#include "dyno/trace.hpp"
#include "json.hpp"

namespace dyno::tool {

enum class Mode { kOrient, kArb, kBf, kColourForest, kColourPseudo };

Mode mode_from_name(const std::string& name);
std::string mode_name(Mode m);

struct RunConfig {
  Mode mode = Mode::kOrient;
  int n = 0;  // 0: one past the largest id in the trace
  double epsilon = 0.5;
  int gamma = 0;  // 0: recipe value, capped at gamma_cap
  int gamma_cap = 64;
  int alpha_max = 0;  // 0: unknown; bounds fall back to the exact oracle on small graphs
  std::uint64_t seed = 0;
  int verify_every = 0;
  bool paranoid = false;
};

struct Violation {
  long long op_index = -1;
  std::string invariant;
  std::string detail;
};

struct Totals {
  long long reorientations = 0;
  long long repairs = 0;
  long long moves = 0;
  long long surplus_ops = 0;
};

// One engine of the selected mode plus the checks that go with it.
class Session {
 public:
  explicit Session(const RunConfig& cfg);

  const RunConfig& config() const { return cfg_; }
  const GraphState* graph() const { return g_.get(); }

  void apply(const TraceOp& op);
  // Colour code or out-degree of op.u.
  long long query(const TraceOp& op);
  // Runs every check for the mode; empty when all hold.
  std::vector<Violation> verify();

  Totals totals() const;
  int max_out_degree() const;
  int out_degree(Vertex v) const;
  std::int64_t colour_count() const;
  std::uint64_t state_hash() const;

 private:
  bool uses_arb() const { return arb_ != nullptr; }
  int reference_alpha() const;
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  RunConfig cfg_;
  std::unique_ptr<GraphState> g_;
  std::unique_ptr<Refinement> ref_;
  std::unique_ptr<ArbEngine> arb_;
  std::unique_ptr<Colouring> colour_;
  std::unique_ptr<BfEngine> bf_;
};

// Largest vertex id in the trace plus one.
int infer_n(const std::vector<TraceOp>& ops);

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 clean, 1 violation
};

// Throws ConfigError for settings the engine rejects and NotFoundError /
// DuplicateEdgeError for traces that break the simple-graph rules.
RunResult run_trace(RunConfig cfg, const std::vector<TraceOp>& ops);

inline constexpr const char* kBenchHeader =
    "op_index,op,micros,reorientations,repairs,moves,surplus_ops";

// One CSV row per op with the cumulative counters after it.
void bench_trace(RunConfig cfg, const std::vector<TraceOp>& ops, std::ostream& out);

}  // namespace dyno::tool
