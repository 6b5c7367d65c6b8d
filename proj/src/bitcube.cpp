#include "cubecut/bitcube.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace cubecut {

std::string_view to_string(Component c) {
  switch (c) {
    case Component::Full: return "full";
    case Component::Even: return "even";
    case Component::Odd: return "odd";
  }
  return "full";
}

Component parse_component(std::string_view name) {
  if (name == "full") return Component::Full;
  if (name == "even") return Component::Even;
  if (name == "odd") return Component::Odd;
  throw std::invalid_argument("unknown component '" + std::string(name) +
                              "' (expected full, even or odd)");
}

CubeParams::CubeParams(int d, int k, Component component) : d_(d), k_(k), component_(component) {
  if (d < 1 || d > 31) {
    throw std::invalid_argument("cube dimension d=" + std::to_string(d) + " outside [1, 31]");
  }
  if (k < 1 || k > d) {
    throw std::invalid_argument("distance k=" + std::to_string(k) + " outside [1, d=" +
                                std::to_string(d) + "]");
  }
  const bool odd_k = (k % 2) == 1;
  if (odd_k && component != Component::Full) {
    throw std::invalid_argument("odd k requires the full cube (component=full)");
  }
  if (!odd_k && component == Component::Full) {
    throw std::invalid_argument("even k disconnects the cube; choose component=even or odd");
  }
}

std::uint64_t CubeParams::vertex_count() const {
  const std::uint64_t n = std::uint64_t{1} << d_;
  return component_ == Component::Full ? n : n / 2;
}

bool CubeParams::contains(std::uint64_t v) const {
  if (v >> d_) return false;
  switch (component_) {
    case Component::Full: return true;
    case Component::Even: return std::popcount(v) % 2 == 0;
    case Component::Odd: return std::popcount(v) % 2 == 1;
  }
  return false;
}

void require_materializable(const CubeParams& params, std::string_view what) {
  if (params.d() > kMaxMaterializedDim) {
    throw ScaleError(std::string(what) + ": d=" + std::to_string(params.d()) +
                     " exceeds the materialization cap d <= " +
                     std::to_string(kMaxMaterializedDim));
  }
}

std::vector<std::uint32_t> k_subset_masks(int d, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > d) return out;
  if (k == 0) return {0u};
  out.reserve(binomial(d, k));
  const std::uint64_t limit = std::uint64_t{1} << d;
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  while (m < limit) {
    out.push_back(static_cast<std::uint32_t>(m));
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

std::vector<Vertex> component_vertices(const CubeParams& params) {
  require_materializable(params, "component_vertices");
  std::vector<Vertex> out;
  out.reserve(params.vertex_count());
  const std::uint64_t n = std::uint64_t{1} << params.d();
  for (std::uint64_t v = 0; v < n; ++v) {
    if (params.contains(v)) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Vertex> neighbors(const CubeParams& params, Vertex v) {
  if (!params.contains(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the component");
  }
  std::vector<Vertex> out;
  for (std::uint32_t m : k_subset_masks(params.d(), params.k())) out.push_back(v ^ m);
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_edge(const CubeParams& params,
                   const std::function<void(const Edge&, std::uint64_t)>& fn) {
  require_materializable(params, "for_each_edge");
  const auto masks = k_subset_masks(params.d(), params.k());
  const std::uint64_t n = std::uint64_t{1} << params.d();
  std::vector<Vertex> upper;
  upper.reserve(masks.size());
  std::uint64_t index = 0;
  for (std::uint64_t u64 = 0; u64 < n; ++u64) {
    if (!params.contains(u64)) continue;
    const auto u = static_cast<Vertex>(u64);
    upper.clear();
    for (std::uint32_t m : masks) {
      const Vertex v = u ^ m;
      if (v > u) upper.push_back(v);
    }
    std::sort(upper.begin(), upper.end());
    for (Vertex v : upper) fn(Edge{u, v}, index++);
  }
}

std::vector<Edge> edges(const CubeParams& params) {
  std::vector<Edge> out;
  out.reserve(params.edge_count());
  for_each_edge(params, [&](const Edge& e, std::uint64_t) { out.push_back(e); });
  return out;
}

// ---------------------------------------------------------------------------
// VertexSet

namespace {

std::size_t word_count_for(std::uint64_t bits) { return static_cast<std::size_t>((bits + 63) / 64); }

std::vector<std::uint64_t> component_words(const CubeParams& params) {
  std::vector<std::uint64_t> words(word_count_for(std::uint64_t{1} << params.d()), 0);
  const std::uint64_t n = std::uint64_t{1} << params.d();
  for (std::uint64_t v = 0; v < n; ++v) {
    if (params.contains(v)) words[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  return words;
}

}  // namespace

VertexSet::VertexSet(const CubeParams& params) : params_(params) {
  require_materializable(params, "VertexSet");
  words_.assign(word_count_for(std::uint64_t{1} << params.d()), 0);
}

VertexSet VertexSet::whole(const CubeParams& params) {
  VertexSet s(params);
  s.words_ = component_words(params);
  return s;
}

VertexSet VertexSet::from_vertices(const CubeParams& params, std::span<const Vertex> vertices) {
  VertexSet s(params);
  for (Vertex v : vertices) s.insert(v);
  return s;
}

void VertexSet::require_member(Vertex v) const {
  if (!params_.contains(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the component");
  }
}

void VertexSet::require_same_params(const VertexSet& other) const {
  if (!(params_ == other.params_)) {
    throw std::invalid_argument("vertex sets belong to different cubes or components");
  }
}

void VertexSet::insert(Vertex v) {
  require_member(v);
  words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
  require_member(v);
  words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void VertexSet::flip(Vertex v) {
  require_member(v);
  words_[v >> 6] ^= std::uint64_t{1} << (v & 63);
}

std::uint64_t VertexSet::size() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

VertexSet VertexSet::complement() const {
  VertexSet out = whole(params_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~words_[i];
  return out;
}

VertexSet VertexSet::operator^(const VertexSet& other) const {
  require_same_params(other);
  VertexSet out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= other.words_[i];
  return out;
}

VertexSet VertexSet::operator&(const VertexSet& other) const {
  require_same_params(other);
  VertexSet out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  return out;
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

bool lex_less(const VertexSet& a, const VertexSet& b) {
  a.require_same_params(b);
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// EdgeSet

EdgeSet::EdgeSet(const CubeParams& params) : params_(params) {
  require_materializable(params, "EdgeSet");
  words_.assign(word_count_for(params.edge_count()), 0);
}

std::uint64_t EdgeSet::size() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

EdgeSet EdgeSet::operator^(const EdgeSet& other) const {
  if (!(params_ == other.params_)) {
    throw std::invalid_argument("edge sets belong to different cubes or components");
  }
  EdgeSet out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= other.words_[i];
  return out;
}

std::vector<std::uint64_t> EdgeSet::indices() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::uint64_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<Edge> EdgeSet::to_edges() const {
  std::vector<Edge> out;
  for_each_edge(params_, [&](const Edge& e, std::uint64_t idx) {
    if (contains(idx)) out.push_back(e);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Cuts

VertexSet coordinate_cut(const CubeParams& params, int j, int b) {
  if (j < 1 || j > params.d()) {
    throw std::invalid_argument("coordinate j=" + std::to_string(j) + " outside [1, d=" +
                                std::to_string(params.d()) + "]");
  }
  if (b != 0 && b != 1) throw std::invalid_argument("coordinate cut bit must be 0 or 1");
  VertexSet s(params);
  const std::uint64_t n = std::uint64_t{1} << params.d();
  const std::uint64_t bit = std::uint64_t{1} << (j - 1);
  for (std::uint64_t v = 0; v < n; ++v) {
    if (params.contains(v) && ((v & bit) != 0) == (b == 1)) s.insert(static_cast<Vertex>(v));
  }
  return s;
}

std::uint64_t cut_size(const VertexSet& a) {
  const auto masks = k_subset_masks(a.params().d(), a.params().k());
  std::uint64_t count = 0;
  for (Vertex u : a.to_vector()) {
    for (std::uint32_t m : masks) {
      if (!a.contains(u ^ m)) ++count;
    }
  }
  return count;
}

EdgeSet boundary(const VertexSet& a) {
  EdgeSet out(a.params());
  for_each_edge(a.params(), [&](const Edge& e, std::uint64_t idx) {
    if (a.contains(e.u) != a.contains(e.v)) out.insert(idx);
  });
  return out;
}

std::uint64_t hamming_distance(const VertexSet& a, const VertexSet& b) { return (a ^ b).size(); }

bool is_balanced(const VertexSet& a) { return 2 * a.size() == a.params().vertex_count(); }

bool are_orthogonal(const VertexSet& a, const VertexSet& b) {
  return 2 * hamming_distance(a, b) == a.params().vertex_count();
}

// ---------------------------------------------------------------------------
// SmallGraph

std::uint64_t SmallGraph::cut(std::uint64_t mask) const {
  std::uint64_t count = 0;
  std::uint64_t rest = mask;
  while (rest) {
    const int i = std::countr_zero(rest);
    rest &= rest - 1;
    count += static_cast<std::uint64_t>(std::popcount(adjacency[static_cast<std::size_t>(i)] & ~mask));
  }
  return count;
}

SmallGraph small_graph(const CubeParams& params) {
  if (params.vertex_count() > 64) {
    throw ScaleError("small_graph: component has " + std::to_string(params.vertex_count()) +
                     " vertices; the local view holds at most 64");
  }
  SmallGraph g;
  g.vertices = component_vertices(params);
  g.adjacency.assign(g.vertices.size(), 0);
  std::vector<int> local(std::size_t{1} << params.d(), -1);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) local[g.vertices[i]] = static_cast<int>(i);
  for_each_edge(params, [&](const Edge& e, std::uint64_t) {
    const auto lu = static_cast<std::size_t>(local[e.u]);
    const auto lv = static_cast<std::size_t>(local[e.v]);
    g.adjacency[lu] |= std::uint64_t{1} << lv;
    g.adjacency[lv] |= std::uint64_t{1} << lu;
  });
  return g;
}

std::uint64_t to_local(const SmallGraph& g, const VertexSet& a) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (a.contains(g.vertices[i])) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

VertexSet from_local(const CubeParams& params, const SmallGraph& g, std::uint64_t mask) {
  VertexSet s(params);
  while (mask) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    s.insert(g.vertices[static_cast<std::size_t>(i)]);
  }
  return s;
}

void for_each_canonical_balanced(std::size_t n, const std::function<void(std::uint64_t)>& fn) {
  if (n < 2 || n > 64 || n % 2 != 0) {
    throw std::invalid_argument("for_each_canonical_balanced: n must be even and in [2, 64]");
  }
  const int half = static_cast<int>(n / 2);
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  std::uint64_t m = (std::uint64_t{1} << half) - 1;
  // Gosper's hack over the upper n-1 bits.
  while (m < limit) {
    fn(m << 1);
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

}  // namespace cubecut
