#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "cubecut/bitcube.hpp"
#include "cubecut/recover.hpp"
#include "cubecut/sample.hpp"

using namespace cubecut;

namespace {

SolverConfig config(Strategy s) {
  SolverConfig c;
  c.strategy = s;
  return c;
}

// Independent oracle for tiny components (|V| <= 8, d <= 4): enumerate every
// family of d distinct canonical balanced cuts as ambient-cube bitmasks.
struct BruteForce {
  std::uint64_t optimum = ~std::uint64_t{0};
  std::vector<std::uint32_t> best;  // ascending masks, lexicographically least optimum
  std::uint64_t optimal_families = 0;
};

BruteForce brute_force(const SampledGraph& g) {
  const CubeParams& p = g.params();
  const std::vector<Vertex> verts = component_vertices(p);
  const std::size_t n = verts.size();
  std::vector<std::uint32_t> cuts;
  for (std::uint32_t local = 0; local < (1u << n); ++local) {
    if (std::popcount(local) != static_cast<int>(n / 2) || (local & 1u)) continue;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (local >> i & 1u) mask |= 1u << verts[i];
    }
    cuts.push_back(mask);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> score(cuts.size(), 0);
  const std::vector<Edge> kept = g.retained_edges();
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    for (const Edge& e : kept) score[c] += ((cuts[c] >> e.u) ^ (cuts[c] >> e.v)) & 1u;
  }

  BruteForce out;
  const int d = p.d();
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t total) -> void {
    if (static_cast<int>(pick.size()) == d) {
      std::vector<std::uint32_t> fam;
      for (std::size_t i : pick) fam.push_back(cuts[i]);
      if (total < out.optimum) {
        out.optimum = total;
        out.best = fam;
        out.optimal_families = 1;
      } else if (total == out.optimum) {
        ++out.optimal_families;
        out.best = std::min(out.best, fam);
      }
      return;
    }
    for (std::size_t c = start; c < cuts.size(); ++c) {
      bool ok = true;
      for (std::size_t i : pick) ok = ok && std::popcount(cuts[i] ^ cuts[c]) == static_cast<int>(n / 2);
      if (!ok) continue;
      pick.push_back(c);
      self(self, c + 1, total + score[c]);
      pick.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<std::uint32_t> masks(const CutFamily& f) {
  std::vector<std::uint32_t> out;
  for (const VertexSet& c : f.cuts) {
    std::uint32_t m = 0;
    for (Vertex v : c.to_vector()) m |= 1u << v;
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST(ParseStrategy, Names) {
  EXPECT_EQ(parse_strategy("exhaustive"), Strategy::Exhaustive);
  EXPECT_EQ(parse_strategy("bb"), Strategy::BranchBound);
  EXPECT_EQ(parse_strategy("local"), Strategy::LocalSearch);
  EXPECT_THROW(parse_strategy("sdp"), std::invalid_argument);
  EXPECT_EQ(to_string(Strategy::LocalSearch), "local");
}

TEST(SolveExact, SpecExamples) {
  for (Strategy s : {Strategy::Exhaustive, Strategy::BranchBound}) {
    const RecoveryResult r3 = solve_exact(subsample(CubeParams(3, 1), {1.0, 0}), config(s));
    EXPECT_EQ(r3.objective, 12u);
    EXPECT_EQ(masks(r3.family), masks(coordinate_family(CubeParams(3, 1))));
    EXPECT_TRUE(r3.exact_recovery());

    const RecoveryResult r2 = solve_exact(subsample(CubeParams(2, 1), {1.0, 0}), config(s));
    EXPECT_EQ(r2.objective, 4u);
    EXPECT_TRUE(r2.exact_recovery());
  }
  const RecoveryResult zero = solve_exact(subsample(CubeParams(4, 1), {0.0, 0}), config(Strategy::BranchBound));
  EXPECT_EQ(zero.objective, 0u);
  EXPECT_TRUE(zero.family.is_feasible());
  // With all scores zero the lex-least feasible family is the answer; check
  // no lex-smaller feasible first cut exists.
  const CutFamily& fam = zero.family;
  std::vector<std::uint32_t> m = masks(fam);
  EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
  for (std::uint32_t v : m) EXPECT_EQ(v & 1u, 0u);
  EXPECT_EQ(m.front(), 0x1FEu);  // smallest canonical balanced mask of Q_4
}

TEST(SolveExact, MatchesBruteForceOracle) {
  const std::vector<CubeParams> cubes{CubeParams(2, 1), CubeParams(3, 1), CubeParams(3, 2, Component::Even),
                                      CubeParams(3, 2, Component::Odd), CubeParams(4, 2, Component::Even),
                                      CubeParams(4, 2, Component::Odd), CubeParams(3, 3)};
  for (const CubeParams& p : cubes) {
    for (double keep : {0.2, 0.5, 0.8, 1.0}) {
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const SampledGraph g = subsample(p, {keep, derive_seed(seed, 3)});
        const BruteForce oracle = brute_force(g);
        for (Strategy s : {Strategy::Exhaustive, Strategy::BranchBound}) {
          const RecoveryResult r = solve_exact(g, config(s));
          ASSERT_EQ(r.objective, oracle.optimum) << p.d() << ' ' << p.k() << ' ' << keep << ' ' << seed;
          ASSERT_EQ(masks(r.family), oracle.best) << p.d() << ' ' << p.k() << ' ' << keep << ' ' << seed;
          ASSERT_EQ(r.objective, family_objective(g, r.family));
        }
      }
    }
  }
}

TEST(SolveExact, UniqueOptimumAtFullRetention) {
  // Brute force on the small cubes.
  for (const CubeParams& p : {CubeParams(2, 1), CubeParams(3, 1)}) {
    const BruteForce oracle = brute_force(subsample(p, {1.0, 0}));
    EXPECT_EQ(oracle.optimal_families, 1u);
    EXPECT_EQ(oracle.best, masks(coordinate_family(p)));
  }
  // A (4,2) component is K_8 minus a perfect matching: every cut splitting all
  // four antipodal pairs is minimum, and two orthogonal families tie. The
  // coordinate family is optimal but not the lex-least optimum.
  for (const CubeParams& p : {CubeParams(4, 2, Component::Even), CubeParams(4, 2, Component::Odd)}) {
    const SampledGraph g = subsample(p, {1.0, 0});
    const BruteForce oracle = brute_force(g);
    EXPECT_EQ(oracle.optimal_families, 2u);
    EXPECT_EQ(oracle.optimum, 48u);
    EXPECT_EQ(family_objective(g, coordinate_family(p)), 48u);
    EXPECT_NE(oracle.best, masks(coordinate_family(p)));
    EXPECT_FALSE(solve_exact(g, config(Strategy::BranchBound)).exact_recovery());
  }
  // |V| = 16: exactly d balanced cuts reach the minimum balanced cut size, so
  // a family reaching d times that size is unique.
  for (const CubeParams& p : {CubeParams(4, 1), CubeParams(5, 2, Component::Even), CubeParams(5, 2, Component::Odd)}) {
    const std::vector<Vertex> verts = component_vertices(p);
    const std::vector<Edge> all = edges(p);
    std::uint64_t best = ~std::uint64_t{0};
    int at_best = 0;
    for (std::uint32_t local = 0; local < (1u << 16); ++local) {
      if (std::popcount(local) != 8 || (local & 1u)) continue;
      std::uint64_t side = 0;
      for (int i = 0; i < 16; ++i) {
        if (local >> i & 1u) side |= std::uint64_t{1} << verts[static_cast<std::size_t>(i)];
      }
      std::uint64_t size = 0;
      for (const Edge& e : all) size += ((side >> e.u) ^ (side >> e.v)) & 1u;
      if (size < best) {
        best = size;
        at_best = 0;
      }
      at_best += size == best;
    }
    EXPECT_EQ(at_best, p.d());
    EXPECT_EQ(best, p.coordinate_crossing_degree() * 8);
    const RecoveryResult r = solve_exact(subsample(p, {1.0, 0}), config(Strategy::BranchBound));
    EXPECT_EQ(r.objective, static_cast<std::uint64_t>(p.d()) * best);
    EXPECT_TRUE(r.exact_recovery());
  }
}

TEST(SolveExact, TwistedOptimumForFourThree) {
  // Q_{4,3} is isomorphic to Q_4 through x -> x xor 1111 on odd weights, so
  // its sparsest balanced cuts are not coordinate cuts.
  const CubeParams p(4, 3);
  const RecoveryResult r = solve_exact(subsample(p, {1.0, 0}), config(Strategy::BranchBound));
  EXPECT_EQ(r.objective, 32u);
  EXPECT_EQ(family_objective(subsample(p, {1.0, 0}), coordinate_family(p)), 96u);
  EXPECT_FALSE(r.exact_recovery());
}

TEST(SolveExact, BranchBoundAgreesWithExhaustive) {
  for (const CubeParams& p : {CubeParams(3, 1), CubeParams(4, 2, Component::Even), CubeParams(3, 3)}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const SampledGraph g = subsample(p, {0.5, seed});
      const RecoveryResult a = solve_exact(g, config(Strategy::Exhaustive));
      const RecoveryResult b = solve_exact(g, config(Strategy::BranchBound));
      ASSERT_EQ(a.objective, b.objective);
      ASSERT_EQ(masks(a.family), masks(b.family));
    }
  }
}

TEST(SolveExact, ScaleCapsAndStrategy) {
  EXPECT_THROW(solve_exact(subsample(CubeParams(4, 1), {1.0, 0}), config(Strategy::Exhaustive)), ScaleError);
  EXPECT_THROW(solve_exact(subsample(CubeParams(5, 1), {1.0, 0}), config(Strategy::BranchBound)), ScaleError);
  EXPECT_THROW(solve_exact(subsample(CubeParams(6, 2, Component::Even), {1.0, 0}), config(Strategy::BranchBound)),
               ScaleError);
  EXPECT_THROW(solve_exact(subsample(CubeParams(3, 1), {1.0, 0}), config(Strategy::LocalSearch)),
               std::invalid_argument);
  EXPECT_THROW(solve_local(subsample(CubeParams(3, 1), {1.0, 0}), config(Strategy::BranchBound)),
               std::invalid_argument);
}

TEST(SolveLocal, OrderingAtDimensionFour) {
  const CubeParams p(4, 1);
  const CutFamily coords = coordinate_family(p);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SampledGraph g = subsample(p, {0.6, derive_seed(11, seed)});
    SolverConfig local = config(Strategy::LocalSearch);
    local.local_search.restarts = 4;
    const RecoveryResult l = solve(g, local);
    const RecoveryResult b = solve(g, config(Strategy::BranchBound));
    EXPECT_LE(b.objective, l.objective);
    EXPECT_LE(l.objective, family_objective(g, coords));
    EXPECT_TRUE(l.family.is_feasible());
  }
}

TEST(SolveLocal, CoordinateFamilyIsLocallyOptimalAtFullRetention) {
  for (int d : {4, 6, 10, 14}) {
    const CubeParams p(d, 1);
    const RecoveryResult r = solve_local(subsample(p, {1.0, 0}), config(Strategy::LocalSearch));
    EXPECT_EQ(masks(r.family), masks(coordinate_family(p))) << d;
  }
  // Direct evaluation of every orthogonality-preserving swap at d = 6.
  const CubeParams p(6, 1);
  const CutFamily f = coordinate_family(p);
  const std::vector<Vertex> verts = component_vertices(p);
  for (std::size_t i = 0; i < f.cuts.size(); ++i) {
    const std::uint64_t base = cut_size(f.cuts[i]);
    for (Vertex u : verts) {
      if (!f.cuts[i].contains(u)) continue;
      for (Vertex v : verts) {
        if (f.cuts[i].contains(v)) continue;
        bool same_elsewhere = true;
        for (std::size_t j = 0; j < f.cuts.size(); ++j) {
          if (j != i) same_elsewhere = same_elsewhere && f.cuts[j].contains(u) == f.cuts[j].contains(v);
        }
        if (!same_elsewhere) continue;
        VertexSet swapped = f.cuts[i];
        swapped.erase(u);
        swapped.insert(v);
        ASSERT_GE(cut_size(swapped), base);
      }
    }
  }
}

TEST(SolveLocal, ZeroRetentionKeepsInitialFamily) {
  const CubeParams p(8, 1);
  const RecoveryResult r = solve_local(subsample(p, {0.0, 0}), config(Strategy::LocalSearch));
  EXPECT_EQ(r.objective, 0u);
  EXPECT_EQ(masks(r.family), masks(coordinate_family(p)));
}

TEST(SolveLocal, NeverWorseThanCoordinates) {
  const CubeParams p(10, 1);
  const CutFamily coords = coordinate_family(p);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SampledGraph g = subsample(p, {0.9, derive_seed(2024, seed)});
    SolverConfig c = config(Strategy::LocalSearch);
    c.local_search.restarts = 2;
    const RecoveryResult r = solve_local(g, c);
    ASSERT_LE(r.objective, family_objective(g, coords));
    ASSERT_TRUE(r.family.is_feasible());
  }
}

TEST(SolveLocal, Deterministic) {
  const SampledGraph g = subsample(CubeParams(7, 2, Component::Even), {0.5, 77});
  SolverConfig c = config(Strategy::LocalSearch);
  c.local_search.restarts = 5;
  const RecoveryResult a = solve_local(g, c);
  const RecoveryResult b = solve_local(g, c);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(masks(a.family), masks(b.family));
}

TEST(Matching, SpecExamples) {
  const CubeParams p(4, 1);
  const MatchingReport ok = match_to_coordinates(coordinate_family(p));
  EXPECT_TRUE(ok.matching_ok);
  EXPECT_EQ(ok.max_distance, 0u);
  EXPECT_DOUBLE_EQ(ok.mean_distance, 0.0);
  ASSERT_EQ(ok.per_cut.size(), 4u);

  // Two cuts nearest coordinate 1.
  VertexSet near1 = coordinate_cut(p, 1, 1);
  near1.erase(1);
  near1.insert(2);
  const CutFamily dup{{coordinate_cut(p, 1, 1), near1, coordinate_cut(p, 3, 1), coordinate_cut(p, 4, 1)}};
  const MatchingReport bad = match_to_coordinates(dup);
  EXPECT_FALSE(bad.matching_ok);
  EXPECT_EQ(bad.max_distance, 2u);
  EXPECT_DOUBLE_EQ(bad.mean_distance, 0.5);
}

TEST(Matching, DistancesAtHighRetention) {
  const CubeParams p(4, 1);
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RecoveryResult r = solve_exact(subsample(p, {0.9, derive_seed(4, seed)}), config(Strategy::BranchBound));
    ASSERT_TRUE(r.family.is_feasible());
    std::uint64_t worst = 0;
    for (std::size_t i = 0; i < r.family.cuts.size(); ++i) {
      const CutMatch& m = r.matching.per_cut[i];
      ASSERT_EQ(m.distance, hamming_distance(r.family.cuts[i], coordinate_cut(p, m.nearest.j, m.nearest.b)));
      for (int j = 1; j <= 4; ++j) {
        for (int b = 0; b <= 1; ++b) ASSERT_LE(m.distance, hamming_distance(r.family.cuts[i], coordinate_cut(p, j, b)));
      }
      worst = std::max(worst, m.distance);
    }
    EXPECT_EQ(worst, r.matching.max_distance);
    exact += r.exact_recovery();
  }
  EXPECT_GT(exact, 80);
}

TEST(CutFamily, FeasibilityAndCanonicalForm) {
  const CubeParams p(3, 1);
  EXPECT_TRUE(coordinate_family(p).is_feasible());
  CutFamily short_family{{coordinate_cut(p, 1, 0), coordinate_cut(p, 2, 0)}};
  EXPECT_FALSE(short_family.is_feasible());
  CutFamily repeated{{coordinate_cut(p, 1, 0), coordinate_cut(p, 1, 1), coordinate_cut(p, 2, 0)}};
  EXPECT_FALSE(repeated.is_feasible());
  VertexSet unbalanced = coordinate_cut(p, 3, 0);
  unbalanced.insert(7);
  CutFamily lopsided{{coordinate_cut(p, 1, 0), coordinate_cut(p, 2, 0), unbalanced}};
  EXPECT_FALSE(lopsided.is_feasible());

  EXPECT_FALSE(canonical_cut(coordinate_cut(p, 2, 0)).contains(0));
  EXPECT_EQ(canonical_cut(coordinate_cut(p, 2, 0)), coordinate_cut(p, 2, 1));
  const CubeParams odd(4, 2, Component::Odd);
  EXPECT_FALSE(canonical_cut(coordinate_cut(odd, 1, 1)).contains(1));
}
