#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "runner.hpp"

using namespace dyno;
using namespace dyno::tool;

namespace {

std::vector<TraceOp> read_trace(const std::string& path, int n) {
  if (path == "-") return parse_trace(std::cin, n);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file '" + path + "'");
  return parse_trace(in, n);
}

void add_engine_flags(CLI::App* cmd, RunConfig& cfg, std::string& mode, std::string& trace) {
  cmd->add_option("--mode", mode, "orient | arb | bf | colour-forest | colour-pseudo")
      ->check(CLI::IsMember({"orient", "arb", "bf", "colour-forest", "colour-pseudo"}));
  cmd->add_option("--trace", trace, "Trace file, - for stdin")->capture_default_str();
  cmd->add_option("--n", cfg.n, "Vertex count (default: inferred from the trace)");
  cmd->add_option("--epsilon", cfg.epsilon, "Approximation slack")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  cmd->add_option("--gamma", cfg.gamma, "Copies per edge (default: recipe value)");
  cmd->add_option("--gamma-cap", cfg.gamma_cap, "Cap for the recipe gamma")->capture_default_str();
  cmd->add_option("--alpha-max", cfg.alpha_max, "Arboricity promised by the trace");
  cmd->add_option("--seed", cfg.seed, "Recorded in the report")->capture_default_str();
  cmd->add_option("--verify-every", cfg.verify_every, "Run every check after each k-th op")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--paranoid", cfg.paranoid, "Cross-check internal structures on every step");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic low out-degree orientations, forest decompositions and colourings"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "orient", trace = "-";
  CLI::App* run = app.add_subcommand("run", "Replay a trace and print a JSON report");
  add_engine_flags(run, cfg, mode, trace);
  bool pretty = false;
  run->add_flag("--pretty", pretty, "Indent the JSON report");

  RunConfig bcfg;
  std::string bmode = "orient", btrace = "-";
  CLI::App* bench = app.add_subcommand("bench", "Replay a trace and print per-op CSV timings");
  add_engine_flags(bench, bcfg, bmode, btrace);

  std::string kind = "random", out_path;
  int gn = 100, steps = 1000, galpha = 2;
  std::uint64_t gseed = 1;
  CLI::App* gen = app.add_subcommand("gen", "Generate a trace");
  gen->add_option("--kind", kind, "random | forest-only | planar-like | adversarial-path")
      ->check(CLI::IsMember({"random", "forest-only", "planar-like", "adversarial-path"}))
      ->capture_default_str();
  gen->add_option("--n", gn, "Vertex count")->capture_default_str();
  gen->add_option("--steps", steps, "Number of ops")->capture_default_str();
  gen->add_option("--seed", gseed, "Random seed")->capture_default_str();
  gen->add_option("--alpha-max", galpha, "Arboricity cap for the random kind")
      ->capture_default_str();
  gen->add_option("-o,--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      std::string text = print_trace(generate_trace(gen_kind_from_name(kind), gn, steps, gseed, galpha));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write '" + out_path + "'");
        out << text;
      }
      return 0;
    }
    if (*run) {
      cfg.mode = mode_from_name(mode);
      RunResult r = run_trace(cfg, read_trace(trace, cfg.n));
      std::cout << r.report.dump(pretty ? 2 : -1) << '\n';
      return r.exit_code;
    }
    bcfg.mode = mode_from_name(bmode);
    bench_trace(bcfg, read_trace(btrace, bcfg.n), std::cout);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "violation: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
