#include "cubecut/min_cut.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/one_bit_color_map.hpp>
#include <boost/graph/stoer_wagner_min_cut.hpp>
#include <boost/property_map/property_map.hpp>

#include <bit>
#include <string>
#include <vector>

namespace cubecut {

namespace {

using WeightedGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                          boost::property<boost::edge_weight_t, std::uint64_t>>;

void require_at_most(const CubeParams& params, std::uint64_t cap, const char* what) {
  if (params.vertex_count() > cap) {
    throw ScaleError(std::string(what) + ": component has " + std::to_string(params.vertex_count()) +
                     " vertices; the cap is " + std::to_string(cap));
  }
}

}  // namespace

MinCutResult stoer_wagner_min_cut(const CubeParams& params) {
  require_at_most(params, kMinCutMaxVertices, "stoer_wagner_min_cut");
  const std::vector<Vertex> verts = component_vertices(params);
  std::vector<std::size_t> local(std::size_t{1} << params.d(), 0);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = i;

  WeightedGraph g(verts.size());
  for_each_edge(params, [&](const Edge& e, std::uint64_t) {
    boost::add_edge(local[e.u], local[e.v], std::uint64_t{1}, g);
  });
  auto parity = boost::make_one_bit_color_map(boost::num_vertices(g), boost::get(boost::vertex_index, g));
  const std::uint64_t value =
      boost::stoer_wagner_min_cut(g, boost::get(boost::edge_weight, g), boost::parity_map(parity));

  MinCutResult out{value, VertexSet(params)};
  const bool side_of_first = boost::get(parity, 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (boost::get(parity, i) != side_of_first) out.side.insert(verts[i]);
  }
  return out;
}

MinCutResult exhaustive_min_cut(const CubeParams& params) {
  require_at_most(params, kExhaustiveCutMaxVertices, "exhaustive_min_cut");
  const std::vector<Vertex> verts = component_vertices(params);
  std::vector<std::uint32_t> local(std::size_t{1} << params.d(), 0);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> adjacency(verts.size(), 0);
  for_each_edge(params, [&](const Edge& e, std::uint64_t) {
    adjacency[local[e.u]] |= 1u << local[e.v];
    adjacency[local[e.v]] |= 1u << local[e.u];
  });

  const std::uint32_t n = static_cast<std::uint32_t>(verts.size());
  std::uint64_t best = ~std::uint64_t{0};
  std::uint32_t best_mask = 0;
  // Local vertex 0 stays outside A; masks range over the other n-1 vertices.
  for (std::uint32_t m = 1; m < (1u << (n - 1)); ++m) {
    const std::uint32_t mask = m << 1;
    std::uint64_t c = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      c += static_cast<std::uint64_t>(std::popcount(adjacency[std::countr_zero(rest)] & ~mask));
    }
    if (c < best) {
      best = c;
      best_mask = mask;
    }
  }
  MinCutResult out{best, VertexSet(params)};
  for (std::uint32_t i = 0; i < n; ++i) {
    if (best_mask >> i & 1u) out.side.insert(verts[i]);
  }
  return out;
}

}  // namespace cubecut
