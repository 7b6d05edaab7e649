#pragma once

#include <cstdint>
#include <vector>

#include "dyno/arboricity.hpp"

namespace dyno {

enum class ColourMode { kForest, kPseudoforest };

// Mixed-radix colour: digit k has base radix[k]; code = sum digit_k * prod
// of the radices before k.
struct ColourCode {
  std::vector<int> digits;
  std::vector<int> radices;
  std::int64_t code = 0;
  friend bool operator==(const ColourCode&, const ColourCode&) = default;
};

// Colours computed on demand from the decomposition kept by an ArbEngine.
// Forest mode: a parity digit for each F_i, for G[M] and for H.
// Pseudoforest mode: a base-3 digit for each pseudoforest (2 at the tail of
// its matching edge, parity elsewhere), then the parity digit for H.
// Digits run in partition order with H last.
class Colouring {
 public:
  Colouring(ArbEngine& arb, ColourMode mode) : arb_(arb), mode_(mode) {}

  ColourMode mode() const { return mode_; }
  ColourCode colour(Vertex v);
  std::int64_t colour_count() const;
  std::vector<int> radices() const;

  long long forest_queries() const { return forest_queries_; }

 private:
  int surplus_parity(Vertex v) const;

  ArbEngine& arb_;
  ColourMode mode_;
  long long forest_queries_ = 0;
};

}  // namespace dyno
