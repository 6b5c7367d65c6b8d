#include "cubecut/recover.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace cubecut {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Exhaustive: return "exhaustive";
    case Strategy::BranchBound: return "bb";
    case Strategy::LocalSearch: return "local";
  }
  return "bb";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "exhaustive") return Strategy::Exhaustive;
  if (name == "bb" || name == "exact" || name == "branch-bound") return Strategy::BranchBound;
  if (name == "local") return Strategy::LocalSearch;
  throw std::invalid_argument("unknown solver '" + std::string(name) +
                              "' (expected exhaustive, bb or local)");
}

bool CutFamily::is_feasible() const {
  if (cuts.empty()) return false;
  const CubeParams& params = cuts.front().params();
  if (cuts.size() != static_cast<std::size_t>(params.d())) return false;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!(cuts[i].params() == params) || !is_balanced(cuts[i])) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (!are_orthogonal(cuts[i], cuts[j])) return false;
    }
  }
  return true;
}

VertexSet canonical_cut(const VertexSet& a) {
  return a.contains(a.params().first_vertex()) ? a.complement() : a;
}

CutFamily canonical_family(std::vector<VertexSet> cuts) {
  for (auto& c : cuts) c = canonical_cut(c);
  std::sort(cuts.begin(), cuts.end(), [](const VertexSet& x, const VertexSet& y) { return lex_less(x, y); });
  return CutFamily{std::move(cuts)};
}

CutFamily coordinate_family(const CubeParams& params) {
  std::vector<VertexSet> cuts;
  for (int j = 1; j <= params.d(); ++j) cuts.push_back(coordinate_cut(params, j, 0));
  return canonical_family(std::move(cuts));
}

MatchingReport match_to_coordinates(const CutFamily& family) {
  MatchingReport rep;
  std::vector<int> seen;
  std::uint64_t total = 0;
  rep.matching_ok = true;
  for (const VertexSet& cut : family.cuts) {
    const NearestCoordinate n = nearest_coordinate_cut(cut);
    rep.per_cut.push_back(CutMatch{n.cut, n.distance});
    if (std::find(seen.begin(), seen.end(), n.cut.j) != seen.end()) rep.matching_ok = false;
    seen.push_back(n.cut.j);
    rep.max_distance = std::max(rep.max_distance, n.distance);
    total += n.distance;
  }
  rep.mean_distance = family.cuts.empty()
                          ? 0.0
                          : static_cast<double>(total) / static_cast<double>(family.cuts.size());
  return rep;
}

std::uint64_t family_objective(const SampledGraph& g, const CutFamily& family) {
  std::uint64_t total = 0;
  for (const VertexSet& cut : family.cuts) total += sampled_cut_size(g, cut);
  return total;
}

namespace {

RecoveryResult finish(const SampledGraph& g, const SolverConfig& config, CutFamily family) {
  if (!family.is_feasible()) throw std::logic_error("solver produced an infeasible family");
  RecoveryResult out;
  out.family = canonical_family(std::move(family.cuts));
  out.objective = family_objective(g, out.family);
  out.matching = match_to_coordinates(out.family);
  out.config = config;
  out.sample = g.sample();
  return out;
}

// ---------------------------------------------------------------------------
// Exact search over canonical balanced cuts of a component with |V| <= 16.

struct ScoredCut {
  std::uint64_t mask;
  std::uint64_t score;
};

std::vector<ScoredCut> score_balanced_cuts(const SmallGraph& g) {
  std::vector<ScoredCut> out;
  for_each_canonical_balanced(g.size(), [&](std::uint64_t mask) { out.push_back(ScoredCut{mask, g.cut(mask)}); });
  return out;
}

class ExactSearch {
 public:
  ExactSearch(std::vector<ScoredCut> cuts, int family_size, int half)
      : cuts_(std::move(cuts)), family_size_(family_size), half_(half) {}

  bool orthogonal(std::size_t a, std::size_t b) const {
    return std::popcount(cuts_[a].mask ^ cuts_[b].mask) == half_;
  }

  // Enumerates every feasible family in lex order and keeps the first one of
  // minimum objective.
  std::vector<std::uint64_t> exhaustive() {
    std::vector<std::size_t> all(cuts_.size());
    std::iota(all.begin(), all.end(), 0);
    std::sort(all.begin(), all.end(), [&](std::size_t a, std::size_t b) { return cuts_[a].mask < cuts_[b].mask; });
    have_best_ = false;
    chosen_.clear();
    exhaustive_dfs(all, 0);
    return masks_of(best_family_);
  }

  // Optimal value by branch-and-bound over cuts in (score, mask) order, then
  // the lex-smallest family attaining it.
  std::vector<std::uint64_t> branch_and_bound(std::uint64_t upper_bound) {
    std::vector<std::size_t> by_score(cuts_.size());
    std::iota(by_score.begin(), by_score.end(), 0);
    std::sort(by_score.begin(), by_score.end(), [&](std::size_t a, std::size_t b) {
      return cuts_[a].score != cuts_[b].score ? cuts_[a].score < cuts_[b].score
                                              : cuts_[a].mask < cuts_[b].mask;
    });
    optimum_ = upper_bound;
    value_dfs(by_score, family_size_, 0);

    // Any member c of an optimal family has score(c) + (d-1 smallest scores) <= optimum.
    std::uint64_t others = 0;
    for (int i = 0; i + 1 < family_size_ && i < static_cast<int>(by_score.size()); ++i) {
      others += cuts_[by_score[static_cast<std::size_t>(i)]].score;
    }
    std::vector<std::size_t> eligible;
    for (std::size_t i : by_score) {
      if (cuts_[i].score + others <= optimum_) eligible.push_back(i);
    }
    std::vector<std::size_t> eligible_by_mask = eligible;
    std::sort(eligible_by_mask.begin(), eligible_by_mask.end(),
              [&](std::size_t a, std::size_t b) { return cuts_[a].mask < cuts_[b].mask; });
    chosen_.clear();
    if (!lex_search(eligible_by_mask, eligible, family_size_, 0)) {
      throw std::logic_error("branch-and-bound lost the optimal family");
    }
    return masks_of(best_family_);
  }

  std::uint64_t optimum() const { return optimum_; }

 private:
  std::vector<std::uint64_t> masks_of(const std::vector<std::size_t>& idx) const {
    std::vector<std::uint64_t> out;
    for (std::size_t i : idx) out.push_back(cuts_[i].mask);
    return out;
  }

  std::vector<std::size_t> filter_orthogonal(const std::vector<std::size_t>& cands, std::size_t from,
                                             std::size_t pivot) const {
    std::vector<std::size_t> next;
    next.reserve(cands.size() - from);
    for (std::size_t q = from; q < cands.size(); ++q) {
      if (orthogonal(cands[q], pivot)) next.push_back(cands[q]);
    }
    return next;
  }

  void exhaustive_dfs(const std::vector<std::size_t>& cands, std::uint64_t partial) {
    if (static_cast<int>(chosen_.size()) == family_size_) {
      if (!have_best_ || partial < optimum_) {
        have_best_ = true;
        optimum_ = partial;
        best_family_ = chosen_;
      }
      return;
    }
    for (std::size_t pos = 0; pos < cands.size(); ++pos) {
      const std::size_t c = cands[pos];
      chosen_.push_back(c);
      exhaustive_dfs(filter_orthogonal(cands, pos + 1, c), partial + cuts_[c].score);
      chosen_.pop_back();
    }
  }

  // cands sorted by score: the r cheapest from any position bound the rest.
  void value_dfs(const std::vector<std::size_t>& cands, int remaining, std::uint64_t partial) {
    if (remaining == 0) {
      optimum_ = std::min(optimum_, partial);
      return;
    }
    const auto r = static_cast<std::size_t>(remaining);
    for (std::size_t pos = 0; pos + r <= cands.size(); ++pos) {
      std::uint64_t bound = partial;
      for (std::size_t q = pos; q < pos + r; ++q) bound += cuts_[cands[q]].score;
      if (bound >= optimum_) break;
      const std::size_t c = cands[pos];
      if (remaining == 1) {
        optimum_ = std::min(optimum_, partial + cuts_[c].score);
        break;
      }
      value_dfs(filter_orthogonal(cands, pos + 1, c), remaining - 1, partial + cuts_[c].score);
    }
  }

  // True if `remaining` pairwise orthogonal cuts of cands (sorted by score)
  // have total score <= budget.
  bool completes(const std::vector<std::size_t>& cands, int remaining, std::uint64_t budget) const {
    if (remaining == 0) return true;
    const auto r = static_cast<std::size_t>(remaining);
    for (std::size_t pos = 0; pos + r <= cands.size(); ++pos) {
      std::uint64_t bound = 0;
      for (std::size_t q = pos; q < pos + r; ++q) bound += cuts_[cands[q]].score;
      if (bound > budget) return false;
      const std::size_t c = cands[pos];
      if (remaining == 1) return true;
      if (completes(filter_orthogonal(cands, pos + 1, c), remaining - 1, budget - cuts_[c].score)) return true;
    }
    return false;
  }

  // Picks members in ascending mask order, accepting a cut only if an optimal
  // completion exists among later orthogonal cuts, so the first family built
  // is the lex-smallest optimal one. Indices ascend with masks, which lets
  // one filter serve both orders.
  bool lex_search(const std::vector<std::size_t>& by_mask, const std::vector<std::size_t>& by_score,
                  int remaining, std::uint64_t partial) {
    if (remaining == 0) {
      if (partial != optimum_) return false;
      best_family_ = chosen_;
      return true;
    }
    std::uint64_t floor = 0;  // the remaining-1 smallest scores available
    for (std::size_t q = 0; q + 1 < static_cast<std::size_t>(remaining) && q < by_score.size(); ++q) {
      floor += cuts_[by_score[q]].score;
    }
    for (std::size_t pos = 0; pos < by_mask.size(); ++pos) {
      const std::size_t c = by_mask[pos];
      const std::uint64_t with_c = partial + cuts_[c].score;
      if (with_c + floor > optimum_) continue;
      std::vector<std::size_t> next_by_score;
      if (remaining > 1) {
        for (std::size_t x : by_score) {
          if (x > c && orthogonal(x, c)) next_by_score.push_back(x);
        }
        if (!completes(next_by_score, remaining - 1, optimum_ - with_c)) continue;
      } else if (with_c != optimum_) {
        continue;
      }
      chosen_.push_back(c);
      if (lex_search(filter_orthogonal(by_mask, pos + 1, c), next_by_score, remaining - 1, with_c)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::vector<ScoredCut> cuts_;
  int family_size_;
  int half_;
  std::uint64_t optimum_ = 0;
  bool have_best_ = false;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_family_;
};

}  // namespace

RecoveryResult solve_exact(const SampledGraph& g, const SolverConfig& config) {
  const CubeParams& params = g.params();
  const std::uint64_t n = params.vertex_count();
  if (config.strategy == Strategy::Exhaustive) {
    if (n > kExhaustiveMaxVertices) {
      throw ScaleError("exhaustive solver: component has " + std::to_string(n) +
                       " vertices; the cap is " + std::to_string(kExhaustiveMaxVertices));
    }
  } else if (config.strategy == Strategy::BranchBound) {
    if (n > 64 || binomial(static_cast<int>(n), static_cast<int>(n / 2)) > kBranchBoundMaxBalancedCuts) {
      throw ScaleError("branch-and-bound solver: C(|V|, |V|/2) exceeds the cap of " +
                       std::to_string(kBranchBoundMaxBalancedCuts) + " balanced cuts (|V| = " +
                       std::to_string(n) + ")");
    }
  } else {
    throw std::invalid_argument("solve_exact requires the exhaustive or bb strategy");
  }

  const SmallGraph local = small_graph(g);
  ExactSearch search(score_balanced_cuts(local), params.d(), static_cast<int>(n / 2));
  std::vector<std::uint64_t> masks;
  if (config.strategy == Strategy::Exhaustive) {
    masks = search.exhaustive();
  } else {
    std::uint64_t upper = 0;
    for (const VertexSet& c : coordinate_family(params).cuts) upper += local.cut(to_local(local, c));
    // +1 so that the coordinate family itself can be found as the optimum.
    masks = search.branch_and_bound(upper + 1);
  }
  std::vector<VertexSet> cuts;
  for (std::uint64_t m : masks) cuts.push_back(from_local(params, local, m));
  RecoveryResult out = finish(g, config, CutFamily{std::move(cuts)});
  if (out.objective != search.optimum()) throw std::logic_error("exact solver objective mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Local search over membership signatures: bit i of sig[v] records v in A_i.
// A swap (u out of A_i, v into A_i) keeps every cut balanced, and keeps A_i
// orthogonal to all A_j exactly when sig[u] and sig[v] agree off bit i.

namespace {

class LocalSearch {
 public:
  LocalSearch(const SampledGraph& g, int max_passes)
      : params_(g.params()),
        adj_(sampled_adjacency(g)),
        vertices_(component_vertices(g.params())),
        max_passes_(max_passes) {}

  std::vector<std::uint32_t> initial() const {
    std::vector<std::uint32_t> sig(std::size_t{1} << params_.d(), 0);
    const CutFamily start = coordinate_family(params_);
    for (std::size_t i = 0; i < start.cuts.size(); ++i) {
      for (Vertex v : start.cuts[i].to_vector()) sig[v] |= std::uint32_t{1} << i;
    }
    return sig;
  }

  std::uint64_t objective(const std::vector<std::uint32_t>& sig) const {
    std::uint64_t total = 0;
    for (Vertex u : vertices_) {
      for (Vertex v : adj_.of(u)) {
        if (u < v) total += static_cast<std::uint64_t>(std::popcount(sig[u] ^ sig[v]));
      }
    }
    return total;
  }

  void descend(std::vector<std::uint32_t>& sig) const {
    for (int pass = 0; pass < max_passes_; ++pass) {
      bool improved = false;
      for (int i = 0; i < params_.d(); ++i) {
        while (improve_once(sig, i)) improved = true;
      }
      if (!improved) return;
    }
  }

  // Applies one random orthogonality-preserving swap; false if none exists
  // for the drawn cut and vertex.
  bool random_swap(std::vector<std::uint32_t>& sig, std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> pick_cut(0, params_.d() - 1);
    std::uniform_int_distribution<std::size_t> pick_vertex(0, vertices_.size() - 1);
    const std::uint32_t bit = std::uint32_t{1} << pick_cut(rng);
    const Vertex u = vertices_[pick_vertex(rng)];
    std::vector<Vertex> partners;
    for (Vertex v : vertices_) {
      if ((sig[u] ^ sig[v]) == bit) partners.push_back(v);
    }
    if (partners.empty()) return false;
    std::uniform_int_distribution<std::size_t> pick_partner(0, partners.size() - 1);
    const Vertex v = partners[pick_partner(rng)];
    sig[u] ^= bit;
    sig[v] ^= bit;
    return true;
  }

 private:
  bool adjacent(Vertex u, Vertex v) const {
    const auto nb = adj_.of(u);
    return std::find(nb.begin(), nb.end(), v) != nb.end();
  }

  bool improve_once(std::vector<std::uint32_t>& sig, int i) const {
    const std::uint32_t bit = std::uint32_t{1} << i;
    // delta[x]: change in |E'(A_i)| when x alone changes side.
    std::vector<std::int64_t> delta(sig.size(), 0);
    std::vector<std::pair<std::uint32_t, Vertex>> keyed;
    keyed.reserve(vertices_.size());
    for (Vertex x : vertices_) {
      std::int64_t d = 0;
      for (Vertex y : adj_.of(x)) d += ((sig[x] ^ sig[y]) & bit) ? -1 : 1;
      delta[x] = d;
      keyed.emplace_back(sig[x] & ~bit, x);
    }
    std::sort(keyed.begin(), keyed.end());

    std::int64_t best = 0;
    Vertex best_u = 0;
    Vertex best_v = 0;
    for (std::size_t lo = 0; lo < keyed.size();) {
      std::size_t hi = lo;
      while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
      for (std::size_t a = lo; a < hi; ++a) {
        const Vertex u = keyed[a].second;
        if (!(sig[u] & bit)) continue;
        for (std::size_t b = lo; b < hi; ++b) {
          const Vertex v = keyed[b].second;
          if (sig[v] & bit) continue;
          // The edge u-v, if present, crosses A_i before and after the swap.
          const std::int64_t gain = delta[u] + delta[v] + (adjacent(u, v) ? 2 : 0);
          if (gain < best || (gain == best && gain < 0 && std::pair(u, v) < std::pair(best_u, best_v))) {
            best = gain;
            best_u = u;
            best_v = v;
          }
        }
      }
      lo = hi;
    }
    if (best >= 0) return false;
    sig[best_u] ^= bit;
    sig[best_v] ^= bit;
    return true;
  }

 public:
  CutFamily to_family(const std::vector<std::uint32_t>& sig) const {
    std::vector<VertexSet> cuts(static_cast<std::size_t>(params_.d()), VertexSet(params_));
    for (Vertex v : vertices_) {
      for (int i = 0; i < params_.d(); ++i) {
        if (sig[v] & (std::uint32_t{1} << i)) cuts[static_cast<std::size_t>(i)].insert(v);
      }
    }
    return CutFamily{std::move(cuts)};
  }

  std::size_t vertex_count() const { return vertices_.size(); }

 private:
  CubeParams params_;
  SampledAdjacency adj_;
  std::vector<Vertex> vertices_;
  int max_passes_;
};

}  // namespace

RecoveryResult solve_local(const SampledGraph& g, const SolverConfig& config) {
  if (config.strategy != Strategy::LocalSearch) {
    throw std::invalid_argument("solve_local requires the local strategy");
  }
  require_materializable(g.params(), "solve_local");
  const LocalSearch search(g, config.local_search.max_passes);
  std::vector<std::uint32_t> best = search.initial();
  search.descend(best);
  std::uint64_t best_value = search.objective(best);

  const std::size_t kicks = std::max<std::size_t>(1, search.vertex_count() / 32);
  for (int r = 1; r <= config.local_search.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(g.sample().seed, static_cast<std::uint64_t>(r)));
    std::vector<std::uint32_t> trial = best;
    for (std::size_t s = 0; s < kicks; ++s) search.random_swap(trial, rng);
    search.descend(trial);
    const std::uint64_t value = search.objective(trial);
    if (value < best_value) {
      best_value = value;
      best = std::move(trial);
    }
  }
  RecoveryResult out = finish(g, config, search.to_family(best));
  if (out.objective != best_value) throw std::logic_error("local search objective mismatch");
  return out;
}

RecoveryResult solve(const SampledGraph& g, const SolverConfig& config) {
  return config.strategy == Strategy::LocalSearch ? solve_local(g, config) : solve_exact(g, config);
}

}  // namespace cubecut
