#pragma once

// Solvers for the orthogonal balanced-cut problem
//
//   minimize   sum_i |E'(A_i, V \ A_i)|
//   subject to |A_i| = |V|/2 for all i, |A_i xor A_j| = |V|/2 for i != j,
//
// over d cuts of one cube component, plus matching of the recovered cuts to
// coordinate cuts.
//
// A cut and its complement have the same size and the same orthogonality
// relations, so every cut is stored in canonical form: the side that excludes
// the component's lowest vertex. Families list their cuts in ascending
// lex_less order, and among optimal families the solvers return the
// lexicographically smallest such list.

#include <cstdint>
#include <string_view>
#include <vector>

#include "cubecut/bitcube.hpp"
#include "cubecut/fourier.hpp"
#include "cubecut/sample.hpp"

namespace cubecut {

enum class Strategy { Exhaustive, BranchBound, LocalSearch };
enum class TieBreak { CanonicalLex };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);  // exhaustive | bb | local

struct LocalSearchConfig {
  int restarts = 0;
  int max_passes = 10000;
};

struct SolverConfig {
  Strategy strategy = Strategy::BranchBound;
  TieBreak tie_break = TieBreak::CanonicalLex;
  LocalSearchConfig local_search;
};

// Exhaustive search enumerates every feasible family; it is limited to
// components with at most 8 vertices (35 canonical balanced cuts).
inline constexpr std::uint64_t kExhaustiveMaxVertices = 8;
// Branch-and-bound scores every balanced cut; it is limited to
// C(|V|, |V|/2) <= 12870, i.e. components with at most 16 vertices.
inline constexpr std::uint64_t kBranchBoundMaxBalancedCuts = 12870;

struct CutFamily {
  std::vector<VertexSet> cuts;

  // d cuts, all balanced, pairwise orthogonal.
  bool is_feasible() const;
};

VertexSet canonical_cut(const VertexSet& a);
// Canonicalizes every cut and sorts them.
CutFamily canonical_family(std::vector<VertexSet> cuts);
// The d coordinate cuts of the component, canonicalized.
CutFamily coordinate_family(const CubeParams& params);

struct CutMatch {
  CoordinateCutId nearest;
  std::uint64_t distance = 0;
};

struct MatchingReport {
  std::vector<CutMatch> per_cut;
  bool matching_ok = false;  // the nearest coordinates are pairwise distinct
  std::uint64_t max_distance = 0;
  double mean_distance = 0.0;
};

MatchingReport match_to_coordinates(const CutFamily& family);

struct RecoveryResult {
  CutFamily family;
  std::uint64_t objective = 0;
  MatchingReport matching;
  SolverConfig config;
  SampleParams sample;

  // Every cut at distance 0 from a distinct coordinate cut.
  bool exact_recovery() const { return matching.matching_ok && matching.max_distance == 0; }
};

std::uint64_t family_objective(const SampledGraph& g, const CutFamily& family);

RecoveryResult solve_exact(const SampledGraph& g, const SolverConfig& config);
RecoveryResult solve_local(const SampledGraph& g, const SolverConfig& config);
// Dispatches on config.strategy.
RecoveryResult solve(const SampledGraph& g, const SolverConfig& config);

}  // namespace cubecut
