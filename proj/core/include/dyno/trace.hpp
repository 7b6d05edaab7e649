#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "dyno/common.hpp"

namespace dyno {

enum class OpKind : unsigned char { kAdd, kDel, kColour, kOutdeg, kCheckpoint };

struct TraceOp {
  OpKind kind = OpKind::kCheckpoint;
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;  // unused by the single-vertex queries
  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

struct ParseError : Error {
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

// One op per line: "a u v", "d u v", "c v", "o v", "k"; '#' starts a comment.
// With n > 0, ids must be below n and adds/deletes must keep the graph simple.
std::vector<TraceOp> parse_trace(std::istream& in, int n = 0);
std::vector<TraceOp> parse_trace(const std::string& text, int n = 0);
std::string print_trace(const std::vector<TraceOp>& ops);

enum class GenKind { kRandom, kForestOnly, kPlanarLike, kAdversarialPath };

// Throws ConfigError on an unknown name.
GenKind gen_kind_from_name(const std::string& name);
std::string gen_kind_name(GenKind kind);

// Emits `steps` add/delete ops. kRandom keeps an explicit decomposition into
// alpha_max forests, so the arboricity never exceeds alpha_max.
std::vector<TraceOp> generate_trace(GenKind kind, int n, int steps, std::uint64_t seed,
                                    int alpha_max);

}  // namespace dyno
