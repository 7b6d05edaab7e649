#include "dyno/trace.hpp"

#include <charconv>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dyno {

namespace {

bool read_id(const std::string& tok, Vertex& out) {
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && p == end && out >= 0;
}

class EdgeSet {
 public:
  bool has(Vertex u, Vertex v) const { return pos_.count(pair_key(u, v)) > 0; }
  std::size_t size() const { return list_.size(); }
  std::pair<Vertex, Vertex> at(std::size_t i) const { return list_[i]; }
  void add(Vertex u, Vertex v) {
    pos_[pair_key(u, v)] = list_.size();
    list_.emplace_back(u, v);
  }
  void erase(Vertex u, Vertex v) {
    auto it = pos_.find(pair_key(u, v));
    std::size_t i = it->second;
    pos_.erase(it);
    if (i + 1 != list_.size()) {
      list_[i] = list_.back();
      pos_[pair_key(list_[i].first, list_[i].second)] = i;
    }
    list_.pop_back();
  }

 private:
  std::vector<std::pair<Vertex, Vertex>> list_;
  std::unordered_map<std::uint64_t, std::size_t> pos_;
};

// alpha forests stored as adjacency sets; an edge is accepted only if some
// forest can take it without closing a cycle.
class ForestCover {
 public:
  ForestCover(int n, int k) : adj_(k, std::vector<std::unordered_set<Vertex>>(n)), seen_(n, 0) {}

  bool try_add(Vertex u, Vertex v) {
    for (std::size_t i = 0; i < adj_.size(); ++i)
      if (!connected(i, u, v)) {
        adj_[i][u].insert(v);
        adj_[i][v].insert(u);
        where_[pair_key(u, v)] = static_cast<int>(i);
        return true;
      }
    return false;
  }
  void erase(Vertex u, Vertex v) {
    auto it = where_.find(pair_key(u, v));
    adj_[it->second][u].erase(v);
    adj_[it->second][v].erase(u);
    where_.erase(it);
  }

 private:
  bool connected(std::size_t i, Vertex u, Vertex v) {
    ++stamp_;
    std::vector<Vertex> stack{u};
    seen_[u] = stamp_;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      if (x == v) return true;
      for (Vertex y : adj_[i][x])
        if (seen_[y] != stamp_) {
          seen_[y] = stamp_;
          stack.push_back(y);
        }
    }
    return false;
  }

  std::vector<std::vector<std::unordered_set<Vertex>>> adj_;
  std::unordered_map<std::uint64_t, int> where_;
  std::vector<int> seen_;
  int stamp_ = 0;
};

std::vector<TraceOp> gen_covered(int n, int steps, std::mt19937_64& rng, int forests) {
  std::vector<TraceOp> ops;
  EdgeSet present;
  ForestCover cover(n, forests);
  while (static_cast<int>(ops.size()) < steps) {
    bool added = false;
    if (present.size() == 0 || rng() % 100 < 60) {
      for (int attempt = 0; attempt < 20 && !added; ++attempt) {
        Vertex u = static_cast<Vertex>(rng() % n), v = static_cast<Vertex>(rng() % n);
        if (u == v || present.has(u, v) || !cover.try_add(u, v)) continue;
        present.add(u, v);
        ops.push_back({OpKind::kAdd, u, v});
        added = true;
      }
    }
    if (added || present.size() == 0) continue;
    auto [u, v] = present.at(rng() % present.size());
    present.erase(u, v);
    cover.erase(u, v);
    ops.push_back({OpKind::kDel, u, v});
  }
  return ops;
}

// Grid with one diagonal per cell: a planar triangulation of the square.
std::vector<TraceOp> gen_planar(int n, int steps, std::mt19937_64& rng) {
  int w = 1;
  while (w * w < n) ++w;
  std::vector<TraceOp> ops;
  EdgeSet present;
  const std::size_t target = static_cast<std::size_t>(n) * 3 / 2;
  while (static_cast<int>(ops.size()) < steps) {
    bool added = false;
    if (present.size() == 0 || (present.size() < target && rng() % 100 < 60)) {
      for (int attempt = 0; attempt < 20 && !added; ++attempt) {
        Vertex x = static_cast<Vertex>(rng() % n);
        int r = x / w, c = x % w;
        int dir = static_cast<int>(rng() % 3);
        int r2 = r + (dir != 0), c2 = c + (dir != 1);
        if (c2 >= w) continue;
        Vertex y = r2 * w + c2;
        if (y >= n || present.has(x, y)) continue;
        present.add(x, y);
        ops.push_back({OpKind::kAdd, x, y});
        added = true;
      }
    }
    if (added || present.size() == 0) continue;
    auto [u, v] = present.at(rng() % present.size());
    present.erase(u, v);
    ops.push_back({OpKind::kDel, u, v});
  }
  return ops;
}

// Two paths, then an edge between their ends added and removed again,
// cycling through the four end pairs.
std::vector<TraceOp> gen_path(int n, int steps) {
  if (n < 4) throw ConfigError("adversarial-path needs n >= 4");
  int k = n / 2;
  std::vector<TraceOp> ops;
  for (Vertex x = 0; x + 1 < k; ++x) ops.push_back({OpKind::kAdd, x, x + 1});
  for (Vertex x = k; x + 1 < n; ++x) ops.push_back({OpKind::kAdd, x, x + 1});
  const Vertex a_end[2] = {0, k - 1};
  const Vertex b_end[2] = {k, n - 1};
  for (int j = 0; static_cast<int>(ops.size()) < steps; ++j) {
    Vertex u = a_end[j % 2], v = b_end[(j / 2) % 2];
    ops.push_back({OpKind::kAdd, u, v});
    ops.push_back({OpKind::kDel, u, v});
  }
  ops.resize(steps);
  return ops;
}

}  // namespace

std::vector<TraceOp> parse_trace(std::istream& in, int n) {
  std::vector<TraceOp> ops;
  std::unordered_set<std::uint64_t> present;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& cmd = tok[0];
    std::size_t want;
    TraceOp op;
    if (cmd == "a") {
      op.kind = OpKind::kAdd, want = 3;
    } else if (cmd == "d") {
      op.kind = OpKind::kDel, want = 3;
    } else if (cmd == "c") {
      op.kind = OpKind::kColour, want = 2;
    } else if (cmd == "o") {
      op.kind = OpKind::kOutdeg, want = 2;
    } else if (cmd == "k") {
      op.kind = OpKind::kCheckpoint, want = 1;
    } else {
      throw ParseError(lineno, "unknown op '" + cmd + "'");
    }
    if (tok.size() != want)
      throw ParseError(lineno, "'" + cmd + "' takes " + std::to_string(want - 1) + " argument(s)");
    if (want >= 2 && !read_id(tok[1], op.u)) throw ParseError(lineno, "bad vertex id '" + tok[1] + "'");
    if (want == 3 && !read_id(tok[2], op.v)) throw ParseError(lineno, "bad vertex id '" + tok[2] + "'");
    if (n > 0 && (op.u >= n || op.v >= n))
      throw ParseError(lineno, "vertex id out of range (n = " + std::to_string(n) + ")");
    if (want == 3) {
      if (op.u == op.v) throw ParseError(lineno, "self-loop");
      std::uint64_t key = pair_key(op.u, op.v);
      if (op.kind == OpKind::kAdd && !present.insert(key).second)
        throw ParseError(lineno, "edge already present");
      if (op.kind == OpKind::kDel && present.erase(key) == 0)
        throw ParseError(lineno, "edge not present");
    }
    ops.push_back(op);
  }
  return ops;
}

std::vector<TraceOp> parse_trace(const std::string& text, int n) {
  std::istringstream in(text);
  return parse_trace(in, n);
}

std::string print_trace(const std::vector<TraceOp>& ops) {
  std::string out;
  for (const TraceOp& op : ops) {
    switch (op.kind) {
      case OpKind::kAdd:
        out += "a " + std::to_string(op.u) + " " + std::to_string(op.v);
        break;
      case OpKind::kDel:
        out += "d " + std::to_string(op.u) + " " + std::to_string(op.v);
        break;
      case OpKind::kColour:
        out += "c " + std::to_string(op.u);
        break;
      case OpKind::kOutdeg:
        out += "o " + std::to_string(op.u);
        break;
      case OpKind::kCheckpoint:
        out += "k";
        break;
    }
    out += '\n';
  }
  return out;
}

GenKind gen_kind_from_name(const std::string& name) {
  if (name == "random") return GenKind::kRandom;
  if (name == "forest-only") return GenKind::kForestOnly;
  if (name == "planar-like") return GenKind::kPlanarLike;
  if (name == "adversarial-path") return GenKind::kAdversarialPath;
  throw ConfigError("unknown trace kind '" + name + "'");
}

std::string gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::kRandom:
      return "random";
    case GenKind::kForestOnly:
      return "forest-only";
    case GenKind::kPlanarLike:
      return "planar-like";
    case GenKind::kAdversarialPath:
      return "adversarial-path";
  }
  return "?";
}

std::vector<TraceOp> generate_trace(GenKind kind, int n, int steps, std::uint64_t seed,
                                    int alpha_max) {
  if (n < 2) throw ConfigError("need at least two vertices");
  if (steps < 0) throw ConfigError("negative step count");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case GenKind::kRandom:
      if (alpha_max < 1) throw ConfigError("alpha_max must be positive");
      return gen_covered(n, steps, rng, alpha_max);
    case GenKind::kForestOnly:
      return gen_covered(n, steps, rng, 1);
    case GenKind::kPlanarLike:
      return gen_planar(n, steps, rng);
    case GenKind::kAdversarialPath:
      return gen_path(n, steps);
  }
  return {};
}

}  // namespace dyno
