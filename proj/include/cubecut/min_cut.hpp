#pragma once

// Global minimum cut of a cube component.

#include <cstdint>

#include "cubecut/bitcube.hpp"

namespace cubecut {

struct MinCutResult {
  std::uint64_t value = 0;
  VertexSet side;  // one shore of a minimizing cut
};

// Stoer-Wagner (deterministic, exact). Cap: |V| <= 512.
inline constexpr std::uint64_t kMinCutMaxVertices = 512;
MinCutResult stoer_wagner_min_cut(const CubeParams& params);

// Enumerates every proper cut with the lowest vertex outside A. Cap: |V| <= 20.
inline constexpr std::uint64_t kExhaustiveCutMaxVertices = 20;
MinCutResult exhaustive_min_cut(const CubeParams& params);

}  // namespace cubecut
