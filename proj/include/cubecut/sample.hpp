#pragma once

// Independent Bernoulli edge subsampling.
//
// Edge e (canonical index i) is retained iff uniform(seed, i) < p, where
//
//   uniform(seed, i) = mix64(seed ^ mix64(i + 0x9E3779B97F4A7C15)) >> 11, scaled by 2^-53
//   mix64(z)         = the SplitMix64 finalizer
//                      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                      z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                      z =  z ^ (z >> 31)
//
// Every decision depends only on (seed, index), so a sample is identical for
// any iteration order or worker count, and for a fixed seed the retained sets
// are nested in p.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cubecut/bitcube.hpp"

namespace cubecut {

std::uint64_t mix64(std::uint64_t z);
// Uniform in [0, 1) with 53 random bits.
double edge_uniform(std::uint64_t seed, std::uint64_t edge_index);
// Seed for stream `index` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SampleParams {
  double p = 1.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument unless 0 <= p <= 1
};

class SampledGraph {
 public:
  SampledGraph(const CubeParams& params, const SampleParams& sample, EdgeSet retained);

  const CubeParams& params() const { return params_; }
  const SampleParams& sample() const { return sample_; }
  const EdgeSet& retained() const { return retained_; }
  std::uint64_t retained_count() const { return retained_.size(); }

  // Retained edges in canonical order.
  std::vector<Edge> retained_edges() const;

 private:
  CubeParams params_;
  SampleParams sample_;
  EdgeSet retained_;
};

SampledGraph subsample(const CubeParams& params, const SampleParams& sample);

std::uint64_t sampled_cut_size(const SampledGraph& g, const VertexSet& a);
std::uint64_t isolated_vertex_count(const SampledGraph& g);

// Sampled degree of every vertex of the ambient cube (0 off-component).
std::vector<std::uint32_t> sampled_degrees(const SampledGraph& g);

// Local view restricted to the retained edges (|V| <= 64).
SmallGraph small_graph(const SampledGraph& g);

// Compressed sparse adjacency over the retained edges, indexed by vertex.
struct SampledAdjacency {
  std::vector<std::uint64_t> offsets;  // size 2^d + 1
  std::vector<Vertex> targets;

  std::span<const Vertex> of(Vertex v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
};

SampledAdjacency sampled_adjacency(const SampledGraph& g);

// Text format, one field per line group:
//
//   cubecut-sample 1
//   d <d> k <k> component <full|even|odd>
//   p <hex float> seed <seed>
//   retained <count>
//   <edge index> ...   (count indices, ascending, one per line)
void write_sample(std::ostream& out, const SampledGraph& g);
SampledGraph read_sample(std::istream& in);

}  // namespace cubecut
