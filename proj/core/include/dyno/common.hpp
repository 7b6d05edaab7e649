#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dyno {

using Vertex = int;
using EdgeId = int;

inline constexpr EdgeId kNoEdge = -1;
inline constexpr Vertex kNoVertex = -1;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct SelfLoopError : Error {
  using Error::Error;
};
struct DuplicateEdgeError : Error {
  using Error::Error;
};
struct NotFoundError : Error {
  using Error::Error;
};
struct ConsistencyError : Error {
  using Error::Error;
};
struct CycleError : Error {
  using Error::Error;
};
struct NotConnectedError : Error {
  using Error::Error;
};
struct WeightRangeError : Error {
  using Error::Error;
};
struct SizeError : Error {
  using Error::Error;
};

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace dyno
