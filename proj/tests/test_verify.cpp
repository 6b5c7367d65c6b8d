#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "cubecut/bitcube.hpp"
#include "cubecut/verify.hpp"

using namespace cubecut;

namespace {

// Closed-form eigenvalue oracle: lambda_s = 2 sum_{j odd} C(s,j) C(d-s,k-j).
std::int64_t lambda_oracle(int d, int k, int s) {
  auto c = [](int n, int r) -> std::int64_t {
    if (r < 0 || r > n) return 0;
    long double acc = 1;
    for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return std::llround(acc);
  };
  std::int64_t sum = 0;
  for (int j = 1; j <= k; j += 2) sum += c(s, j) * c(d - s, k - j);
  return 2 * sum;
}

// Least d0 such that the gap holds for every d in [d0, 60].
int gap_threshold(int k) {
  int last_fail = k - 1;
  for (int d = k; d <= 60; ++d) {
    const int top = k % 2 == 0 ? d - 2 : d;
    for (int s = 2; s <= top; ++s) {
      if (2 * lambda_oracle(d, k, s) < 3 * lambda_oracle(d, k, 1)) {
        last_fail = d;
        break;
      }
    }
  }
  return last_fail + 1;
}

struct Q4Oracle {
  double k_emp = 0.0;
  double c_emp = 0.0;
  int minimizers = 0;
};

// Exhaustive over the 6435 canonical balanced cuts of Q_4.
Q4Oracle q4_oracle() {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 16; ++u) {
    for (int b = 0; b < 4; ++b) {
      if (u < (u ^ (1 << b))) edges.emplace_back(u, u ^ (1 << b));
    }
  }
  auto cut = [&](std::uint32_t a) {
    int c = 0;
    for (auto [u, v] : edges) c += ((a >> u) ^ (a >> v)) & 1u;
    return c;
  };
  std::uint32_t coords[4];
  for (int j = 0; j < 4; ++j) {
    coords[j] = 0;
    for (int x = 0; x < 16; ++x) {
      if (!(x >> j & 1)) coords[j] |= 1u << x;
    }
  }
  Q4Oracle out;
  int best = 1 << 30;
  for (std::uint32_t a = 0; a < (1u << 16); ++a) {
    if (std::popcount(a) != 8 || (a & 1u)) continue;
    const int size = cut(a);
    if (size < best) {
      best = size;
      out.minimizers = 0;
    }
    out.minimizers += size == best;
    int dist = 1 << 30;
    std::uint32_t s = 0;
    for (int j = 0; j < 4; ++j) {
      for (std::uint32_t side : {coords[j], 0xFFFFu & ~coords[j]}) {
        const int h = std::popcount(a ^ side);
        if (h < dist) {
          dist = h;
          s = side;
        }
      }
    }
    const double eps = size / 8.0 - 1.0;
    if (dist == 0) continue;
    out.k_emp = std::max(out.k_emp, dist / (eps * 16.0));
    if (eps <= 1.0) out.c_emp = std::max(out.c_emp, cut(a ^ s) / (eps * 8.0));
  }
  return out;
}

}  // namespace

TEST(CheckMinCut, Values) {
  for (const CubeParams& p : {CubeParams(3, 1), CubeParams(4, 1), CubeParams(5, 1), CubeParams(5, 2, Component::Even),
                              CubeParams(4, 3)}) {
    const LemmaReport r = check_min_cut(p);
    EXPECT_TRUE(r.passed()) << p.d() << ',' << p.k();
    EXPECT_EQ(r.empirical_constants.at("stoer_wagner"), static_cast<double>(p.degree()));
    if (p.vertex_count() <= 16) {
      EXPECT_EQ(r.empirical_constants.at("exhaustive"), static_cast<double>(p.degree()));
    } else {
      EXPECT_EQ(r.empirical_constants.count("exhaustive"), 0u);
    }
  }
  const LemmaReport matching = check_min_cut(CubeParams(3, 3));
  EXPECT_FALSE(matching.passed());
  EXPECT_TRUE(matching.witness.has_value());
}

TEST(CheckSparsestBalanced, ExhaustiveOracle) {
  const Q4Oracle oracle = q4_oracle();
  const LemmaReport r = check_sparsest_balanced(CubeParams(4, 1));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checked, 6435u);
  EXPECT_EQ(oracle.minimizers, 4);
  EXPECT_EQ(r.empirical_constants.at("minimizers"), 4.0);
  EXPECT_EQ(r.empirical_constants.at("min_balanced_cut"), 8.0);
  EXPECT_DOUBLE_EQ(r.empirical_constants.at("K_emp"), oracle.k_emp);
  // Bit-stable across runs.
  EXPECT_EQ(check_sparsest_balanced(CubeParams(4, 1)).empirical_constants.at("K_emp"),
            r.empirical_constants.at("K_emp"));

  EXPECT_TRUE(check_sparsest_balanced(CubeParams(3, 1)).passed());
  EXPECT_TRUE(check_sparsest_balanced(CubeParams(5, 2, Component::Even)).passed());
  // Q_{4,3} is a relabelled Q_4; its sparsest cuts are not coordinate cuts.
  EXPECT_FALSE(check_sparsest_balanced(CubeParams(4, 3)).passed());
  EXPECT_THROW(check_sparsest_balanced(CubeParams(6, 1)), ScaleError);
}

TEST(CheckSmallCutBound, ExhaustiveOracle) {
  const Q4Oracle oracle = q4_oracle();
  const LemmaReport r = check_small_cut_bound(CubeParams(4, 1), 0, 0);
  EXPECT_TRUE(r.passed());
  EXPECT_DOUBLE_EQ(r.empirical_constants.at("C_emp"), oracle.c_emp);
  EXPECT_GT(r.empirical_constants.at("ratio_samples"), 0.0);
  const LemmaReport even = check_small_cut_bound(CubeParams(5, 2, Component::Even), 0, 0);
  EXPECT_TRUE(even.passed());
  EXPECT_TRUE(std::isfinite(even.empirical_constants.at("C_emp")));
  EXPECT_EQ(check_small_cut_bound(CubeParams(5, 2, Component::Even), 0, 0).empirical_constants.at("C_emp"),
            even.empirical_constants.at("C_emp"));

  const LemmaReport sampled = check_small_cut_bound(CubeParams(8, 1), 200, 3);
  EXPECT_TRUE(sampled.passed());
  EXPECT_GT(sampled.checked, 0u);
}

TEST(CheckBoundaryIdentity, NoViolations) {
  const LemmaReport small = check_boundary_identity(CubeParams(3, 1), 100, 1);
  EXPECT_TRUE(small.passed());
  EXPECT_GE(small.checked, 256u * 256u);
  EXPECT_TRUE(check_boundary_identity(CubeParams(8, 2, Component::Even), 500, 2).passed());
  EXPECT_TRUE(check_boundary_identity(CubeParams(7, 3), 500, 2).passed());
}

TEST(CheckCutCounting, ExhaustiveCounts) {
  const CubeParams p(3, 1);
  const LemmaReport r = check_cut_counting(p, {1.0, 1.5, 2.0});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.empirical_constants.at("cuts"), 127.0);
  // Oracle over the 127 cut classes of Q_3.
  auto cut = [](std::uint32_t a) {
    int c = 0;
    for (int u = 0; u < 8; ++u) {
      for (int b = 0; b < 3; ++b) {
        const int v = u ^ (1 << b);
        if (u < v) c += ((a >> u) ^ (a >> v)) & 1u;
      }
    }
    return c;
  };
  for (double alpha : {1.0, 1.5, 2.0}) {
    int count = 0;
    for (std::uint32_t a = 2; a < 256; a += 2) count += cut(a) <= alpha * 3;
    const std::string key = alpha == 1.0 ? "1" : alpha == 1.5 ? "1.5" : "2";
    EXPECT_EQ(r.empirical_constants.at("count[alpha=" + key + "]"), count);
  }
  EXPECT_EQ(r.empirical_constants.at("count[alpha=1]"), 8.0);
  EXPECT_EQ(r.empirical_constants.at("bound[alpha=1]"), 4.0 * 28.0);
  EXPECT_TRUE(check_cut_counting(CubeParams(4, 1), {1.0, 1.5, 2.0}).passed());
  // Every cut admitted: the bound still holds.
  const LemmaReport wide = check_cut_counting(p, {100.0});
  EXPECT_TRUE(wide.passed());
  EXPECT_EQ(wide.empirical_constants.at("count[alpha=100]"), 127.0);
  EXPECT_THROW(check_cut_counting(CubeParams(5, 1), {1.0}), ScaleError);
  EXPECT_THROW(check_cut_counting(p, {0.5}), std::invalid_argument);
}

TEST(CheckSpectral, EigenbasisAndGap) {
  const LemmaReport r6 = check_spectral(CubeParams(6, 1));
  EXPECT_TRUE(r6.passed());
  EXPECT_EQ(r6.empirical_constants.at("d0"), gap_threshold(1));

  const LemmaReport r8 = check_spectral(CubeParams(8, 2, Component::Even));
  EXPECT_TRUE(r8.passed());
  EXPECT_EQ(lambda_oracle(8, 2, 7), lambda_oracle(8, 2, 1));
  EXPECT_EQ(r8.empirical_constants.at("d0"), gap_threshold(2));

  for (int k : {3, 4}) {
    const LemmaReport r = check_spectral(CubeParams(8, k, k % 2 ? Component::Full : Component::Even));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.empirical_constants.at("d0"), gap_threshold(k)) << k;
  }
  EXPECT_THROW(check_spectral(CubeParams(11, 1)), ScaleError);
}

TEST(CheckConcentration, ExactAtFullRetention) {
  const LemmaReport r = check_concentration(CubeParams(6, 1), 1.0, 10, 0);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.empirical_constants.at("theory_mean"), 32.0);
  EXPECT_EQ(r.empirical_constants.at("max_mean_z"), 0.0);
  EXPECT_EQ(r.empirical_constants.at("isolated_mean"), 0.0);
}

TEST(CheckConcentration, MonteCarlo) {
  const LemmaReport r = check_concentration(CubeParams(10, 1), 0.3, 300, 5);
  EXPECT_TRUE(r.passed());
  EXPECT_DOUBLE_EQ(r.empirical_constants.at("theory_mean"), 0.3 * 512);
  EXPECT_LE(r.empirical_constants.at("tail_freq[sqrt_mean]"), r.empirical_constants.at("chernoff_bound[sqrt_mean]"));
  EXPECT_THROW(check_concentration(CubeParams(6, 1), 1.5, 10, 0), std::invalid_argument);
}

TEST(CheckCutFormula, AgreesWithEdgeCount) {
  for (const CubeParams& p : {CubeParams(6, 1), CubeParams(7, 2, Component::Odd), CubeParams(6, 3)}) {
    const LemmaReport r = check_cut_formula(p, 100, 9);
    EXPECT_TRUE(r.passed());
    EXPECT_LT(r.empirical_constants.at("max_deviation"), 1e-6);
  }
}

TEST(CheckComponentFourier, EvenAndOdd) {
  EXPECT_TRUE(check_component_fourier(CubeParams(8, 2, Component::Even), 50, 1).passed());
  EXPECT_TRUE(check_component_fourier(CubeParams(8, 2, Component::Odd), 50, 1).passed());
}

TEST(CheckHypercontractivity, DegreeTwo) {
  const LemmaReport r = check_hypercontractivity(CubeParams(10, 1), 2, 200, 4);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.empirical_constants.at("worst_ratio"), 3.0);
}

TEST(VerifyAll, DocumentStructure) {
  VerifyOptions opts;
  opts.trials = 50;
  const nlohmann::ordered_json doc = verify_all(CubeParams(4, 1), opts);
  EXPECT_TRUE(doc.at("passed").get<bool>());
  EXPECT_EQ(doc.at("d"), 4);
  EXPECT_EQ(doc.at("component"), "full");
  std::vector<std::string> ids;
  for (const auto& rep : doc.at("reports")) {
    ids.push_back(rep.at("lemma_id"));
    EXPECT_TRUE(rep.contains("empirical_constants"));
    EXPECT_TRUE(rep.contains("cap"));
    EXPECT_TRUE(rep.at("witness").is_null());
  }
  EXPECT_EQ(ids.front(), "min_cut");
  ASSERT_EQ(doc.at("skipped").size(), 1u);
  EXPECT_EQ(doc.at("skipped")[0].at("lemma_id"), "component_fourier");

  const nlohmann::ordered_json one = verify_all(CubeParams(3, 1), opts, "spectral");
  ASSERT_EQ(one.at("reports").size(), 1u);
  EXPECT_EQ(one.at("reports")[0].at("lemma_id"), "spectral");
  EXPECT_THROW(verify_all(CubeParams(3, 1), opts, "no_such_lemma"), std::invalid_argument);

  // Checks beyond their caps are listed as skipped.
  const nlohmann::ordered_json big = verify_all(CubeParams(12, 1), opts, "sparsest_balanced");
  EXPECT_TRUE(big.at("reports").empty());
  EXPECT_EQ(big.at("skipped").size(), 1u);

  // A failing check flips the aggregate.
  EXPECT_FALSE(verify_all(CubeParams(3, 3), opts, "min_cut").at("passed").get<bool>());
}

TEST(VerifyAll, Deterministic) {
  VerifyOptions opts;
  opts.trials = 40;
  opts.seed = 7;
  EXPECT_EQ(verify_all(CubeParams(5, 2, Component::Even), opts).dump(),
            verify_all(CubeParams(5, 2, Component::Even), opts).dump());
}
