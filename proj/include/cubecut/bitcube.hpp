#pragma once

// Matrix-free k-distance hypercubes Q_{d,k} and their parity components.
//
// Vertex encoding: a vertex of {0,1}^d is an unsigned index whose bit (j-1)
// holds coordinate x_j, so x_1 is the least significant bit. Coordinates are
// 1-based in every public interface (coordinate_cut(params, 1, b) is the cut
// on the lowest bit). Sets of vertices are always sized 2^d; membership is
// additionally restricted to the declared component.
//
// Edges are canonical pairs (u, v) with u < v. The canonical edge order is
// lexicographic in (u, v) and an edge's index is its rank in that order.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cubecut/binomial.hpp"

namespace cubecut {

using Vertex = std::uint32_t;

// Largest dimension for which a 2^d vertex bitset is materialized.
inline constexpr int kMaxMaterializedDim = 24;

// Raised when a request is valid but beyond a documented scale cap.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Component { Full, Even, Odd };

std::string_view to_string(Component c);
Component parse_component(std::string_view name);

class CubeParams {
 public:
  // Throws std::invalid_argument unless 1 <= k <= d <= 31 and the component
  // matches the parity of k (Full iff k odd).
  CubeParams(int d, int k, Component component = Component::Full);

  int d() const { return d_; }
  int k() const { return k_; }
  Component component() const { return component_; }

  std::uint64_t vertex_count() const;
  std::uint64_t degree() const { return binomial(d_, k_); }
  std::uint64_t edge_count() const { return vertex_count() * degree() / 2; }
  // Edges at each vertex that cross any fixed coordinate cut: C(d-1, k-1).
  std::uint64_t coordinate_crossing_degree() const { return binomial(d_ - 1, k_ - 1); }

  bool contains(std::uint64_t v) const;
  // Lowest-index vertex of the component (0, or 1 for the odd component).
  Vertex first_vertex() const { return component_ == Component::Odd ? 1u : 0u; }

  friend bool operator==(const CubeParams&, const CubeParams&) = default;

 private:
  int d_;
  int k_;
  Component component_;
};

// Throws ScaleError when 2^d vertices cannot be materialized.
void require_materializable(const CubeParams& params, std::string_view what);

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// All k-subset masks of [d], ascending.
std::vector<std::uint32_t> k_subset_masks(int d, int k);

// Vertices of the component, ascending.
std::vector<Vertex> component_vertices(const CubeParams& params);

// The C(d,k) vertices at Hamming distance k from v, ascending.
std::vector<Vertex> neighbors(const CubeParams& params, Vertex v);

// Calls fn(edge, index) for every edge of the component in canonical order.
void for_each_edge(const CubeParams& params,
                   const std::function<void(const Edge&, std::uint64_t)>& fn);

std::vector<Edge> edges(const CubeParams& params);

class VertexSet {
 public:
  explicit VertexSet(const CubeParams& params);

  static VertexSet whole(const CubeParams& params);
  static VertexSet from_vertices(const CubeParams& params, std::span<const Vertex> vertices);

  const CubeParams& params() const { return params_; }

  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void insert(Vertex v);
  void erase(Vertex v);
  void flip(Vertex v);

  std::uint64_t size() const;
  bool empty() const { return size() == 0; }

  VertexSet complement() const;
  VertexSet operator^(const VertexSet& other) const;
  VertexSet operator&(const VertexSet& other) const;

  std::vector<Vertex> to_vector() const;
  std::span<const std::uint64_t> words() const { return words_; }

  // Total order on sets of equal params: compares the bitsets as unsigned
  // integers (vertex 2^d - 1 most significant).
  friend bool lex_less(const VertexSet& a, const VertexSet& b);
  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.params_ == b.params_ && a.words_ == b.words_;
  }

 private:
  void require_member(Vertex v) const;
  void require_same_params(const VertexSet& other) const;

  CubeParams params_;
  std::vector<std::uint64_t> words_;
};

// Bitset over canonical edge indices of one component.
class EdgeSet {
 public:
  explicit EdgeSet(const CubeParams& params);

  const CubeParams& params() const { return params_; }
  bool contains(std::uint64_t index) const { return (words_[index >> 6] >> (index & 63)) & 1u; }
  void insert(std::uint64_t index) { words_[index >> 6] |= std::uint64_t{1} << (index & 63); }
  std::uint64_t size() const;
  EdgeSet operator^(const EdgeSet& other) const;
  std::vector<std::uint64_t> indices() const;
  std::vector<Edge> to_edges() const;
  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  CubeParams params_;
  std::vector<std::uint64_t> words_;
};

// S_{j,b} intersected with the component; j is 1-based.
VertexSet coordinate_cut(const CubeParams& params, int j, int b);

std::uint64_t cut_size(const VertexSet& a);
EdgeSet boundary(const VertexSet& a);

std::uint64_t hamming_distance(const VertexSet& a, const VertexSet& b);
bool is_balanced(const VertexSet& a);
bool are_orthogonal(const VertexSet& a, const VertexSet& b);

// Component-local view for |V| <= 64: local index i is the i-th vertex of
// the component in ascending order; sets are 64-bit masks.
struct SmallGraph {
  std::vector<Vertex> vertices;
  std::vector<std::uint64_t> adjacency;

  std::size_t size() const { return vertices.size(); }
  std::uint64_t all() const {
    return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
  }
  std::uint64_t cut(std::uint64_t mask) const;
};

SmallGraph small_graph(const CubeParams& params);

// Calls fn(mask) for every n-bit mask with n/2 bits set and bit 0 clear, in
// ascending order: one representative per balanced cut of an n-vertex graph.
void for_each_canonical_balanced(std::size_t n, const std::function<void(std::uint64_t)>& fn);
std::uint64_t to_local(const SmallGraph& g, const VertexSet& a);
VertexSet from_local(const CubeParams& params, const SmallGraph& g, std::uint64_t mask);

}  // namespace cubecut
