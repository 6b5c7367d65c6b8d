#include "cubecut/sample.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace cubecut {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double edge_uniform(std::uint64_t seed, std::uint64_t edge_index) {
  const std::uint64_t bits = mix64(seed ^ mix64(edge_index + 0x9E3779B97F4A7C15ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) + 0x9E3779B97F4A7C15ULL * (index + 1));
}

void SampleParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("retention probability p=" + std::to_string(p) +
                                " outside [0, 1]");
  }
}

SampledGraph::SampledGraph(const CubeParams& params, const SampleParams& sample, EdgeSet retained)
    : params_(params), sample_(sample), retained_(std::move(retained)) {
  sample_.validate();
  if (!(retained_.params() == params_)) {
    throw std::invalid_argument("retained edge set belongs to a different cube");
  }
}

std::vector<Edge> SampledGraph::retained_edges() const { return retained_.to_edges(); }

SampledGraph subsample(const CubeParams& params, const SampleParams& sample) {
  sample.validate();
  require_materializable(params, "subsample");
  EdgeSet retained(params);
  const std::uint64_t m = params.edge_count();
  for (std::uint64_t i = 0; i < m; ++i) {
    if (edge_uniform(sample.seed, i) < sample.p) retained.insert(i);
  }
  return SampledGraph(params, sample, std::move(retained));
}

std::uint64_t sampled_cut_size(const SampledGraph& g, const VertexSet& a) {
  if (!(a.params() == g.params())) {
    throw std::invalid_argument("sampled_cut_size: vertex set belongs to a different cube");
  }
  std::uint64_t count = 0;
  for_each_edge(g.params(), [&](const Edge& e, std::uint64_t idx) {
    if (a.contains(e.u) != a.contains(e.v) && g.retained().contains(idx)) ++count;
  });
  return count;
}

std::vector<std::uint32_t> sampled_degrees(const SampledGraph& g) {
  std::vector<std::uint32_t> deg(std::size_t{1} << g.params().d(), 0);
  for_each_edge(g.params(), [&](const Edge& e, std::uint64_t idx) {
    if (g.retained().contains(idx)) {
      ++deg[e.u];
      ++deg[e.v];
    }
  });
  return deg;
}

std::uint64_t isolated_vertex_count(const SampledGraph& g) {
  const auto deg = sampled_degrees(g);
  std::uint64_t isolated = 0;
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (g.params().contains(v) && deg[v] == 0) ++isolated;
  }
  return isolated;
}

SmallGraph small_graph(const SampledGraph& g) {
  SmallGraph out = small_graph(g.params());
  std::fill(out.adjacency.begin(), out.adjacency.end(), 0);
  std::vector<int> local(std::size_t{1} << g.params().d(), -1);
  for (std::size_t i = 0; i < out.vertices.size(); ++i) local[out.vertices[i]] = static_cast<int>(i);
  for_each_edge(g.params(), [&](const Edge& e, std::uint64_t idx) {
    if (!g.retained().contains(idx)) return;
    const auto lu = static_cast<std::size_t>(local[e.u]);
    const auto lv = static_cast<std::size_t>(local[e.v]);
    out.adjacency[lu] |= std::uint64_t{1} << lv;
    out.adjacency[lv] |= std::uint64_t{1} << lu;
  });
  return out;
}

SampledAdjacency sampled_adjacency(const SampledGraph& g) {
  const std::size_t n = std::size_t{1} << g.params().d();
  const auto deg = sampled_degrees(g);
  SampledAdjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) adj.offsets[v + 1] = adj.offsets[v] + deg[v];
  adj.targets.resize(adj.offsets[n]);
  std::vector<std::uint64_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for_each_edge(g.params(), [&](const Edge& e, std::uint64_t idx) {
    if (!g.retained().contains(idx)) return;
    adj.targets[fill[e.u]++] = e.v;
    adj.targets[fill[e.v]++] = e.u;
  });
  return adj;
}

void write_sample(std::ostream& out, const SampledGraph& g) {
  char pbuf[64];
  std::snprintf(pbuf, sizeof pbuf, "%a", g.sample().p);
  out << "cubecut-sample 1\n"
      << "d " << g.params().d() << " k " << g.params().k() << " component "
      << to_string(g.params().component()) << "\n"
      << "p " << pbuf << " seed " << g.sample().seed << "\n"
      << "retained " << g.retained_count() << "\n";
  for (std::uint64_t idx : g.retained().indices()) out << idx << "\n";
}

namespace {

void expect_token(std::istream& in, const std::string& want) {
  std::string tok;
  if (!(in >> tok) || tok != want) {
    throw std::invalid_argument("read_sample: expected '" + want + "', got '" + tok + "'");
  }
}

}  // namespace

SampledGraph read_sample(std::istream& in) {
  expect_token(in, "cubecut-sample");
  int version = 0;
  if (!(in >> version) || version != 1) throw std::invalid_argument("read_sample: bad version");
  int d = 0;
  int k = 0;
  std::string component;
  std::string p_text;
  SampleParams sample;
  expect_token(in, "d");
  in >> d;
  expect_token(in, "k");
  in >> k;
  expect_token(in, "component");
  in >> component;
  expect_token(in, "p");
  in >> p_text;
  expect_token(in, "seed");
  in >> sample.seed;
  if (!in) throw std::invalid_argument("read_sample: malformed header");
  char* end = nullptr;
  sample.p = std::strtod(p_text.c_str(), &end);
  if (end == p_text.c_str() || *end != '\0') {
    throw std::invalid_argument("read_sample: malformed p '" + p_text + "'");
  }
  const CubeParams params(d, k, parse_component(component));
  std::uint64_t count = 0;
  expect_token(in, "retained");
  if (!(in >> count)) throw std::invalid_argument("read_sample: missing retained count");
  EdgeSet retained(params);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t idx = 0;
    if (!(in >> idx)) throw std::invalid_argument("read_sample: truncated edge list");
    if (idx >= params.edge_count()) {
      throw std::invalid_argument("read_sample: edge index " + std::to_string(idx) +
                                  " out of range");
    }
    retained.insert(idx);
  }
  if (retained.size() != count) throw std::invalid_argument("read_sample: duplicate edge index");
  return SampledGraph(params, sample, std::move(retained));
}

}  // namespace cubecut
