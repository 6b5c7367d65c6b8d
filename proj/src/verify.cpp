#include "cubecut/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cubecut/fourier.hpp"
#include "cubecut/min_cut.hpp"
#include "cubecut/sample.hpp"

namespace cubecut {

using nlohmann::ordered_json;

void LemmaReport::fail(ordered_json w) {
  if (violations == 0) witness = std::move(w);
  ++violations;
}

ordered_json to_json(const LemmaReport& report) {
  ordered_json j;
  j["lemma_id"] = report.lemma_id;
  j["d"] = report.params.d();
  j["k"] = report.params.k();
  j["component"] = std::string(to_string(report.params.component()));
  j["checked"] = report.checked;
  j["violations"] = report.violations;
  j["passed"] = report.passed();
  j["witness"] = report.witness ? *report.witness : ordered_json(nullptr);
  ordered_json constants = ordered_json::object();
  for (const auto& [name, value] : report.empirical_constants) constants[name] = value;
  j["empirical_constants"] = constants;
  j["cap"] = report.cap;
  return j;
}

namespace {

constexpr std::uint64_t kBalancedEnumerationCap = 10'000'000;
constexpr std::uint64_t kSmallEnumerationVertices = 16;
constexpr int kSpectralMaxD = 10;
constexpr int kSpectralMaxK = 4;
constexpr int kEigengapScanMaxD = 60;
constexpr int kMonteCarloMaxD = 16;

void require(bool ok, const std::string& what) {
  if (!ok) throw ScaleError(what);
}

std::vector<Vertex> local_vertices(const SmallGraph& g, std::uint64_t mask) {
  std::vector<Vertex> out;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    out.push_back(g.vertices[static_cast<std::size_t>(std::countr_zero(rest))]);
  }
  return out;
}

std::vector<std::pair<int, int>> local_edges(const SmallGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::uint64_t rest = g.adjacency[u] >> u; rest != 0; rest &= rest - 1) {
      out.emplace_back(static_cast<int>(u), static_cast<int>(u) + std::countr_zero(rest));
    }
  }
  return out;
}

std::uint64_t balanced_cut_count(const CubeParams& params) {
  const std::uint64_t n = params.vertex_count();
  if (n > 64) return ~std::uint64_t{0};
  return binomial(static_cast<int>(n), static_cast<int>(n / 2));
}

// Local masks of S_{j,0}, j = 1..d.
std::vector<std::uint64_t> coordinate_masks(const CubeParams& params, const SmallGraph& g) {
  std::vector<std::uint64_t> out;
  for (int j = 1; j <= params.d(); ++j) out.push_back(to_local(g, coordinate_cut(params, j, 0)));
  return out;
}

struct LocalNearest {
  int j = 1;
  int b = 0;
  std::uint64_t distance = 0;
  std::uint64_t oriented = 0;  // the nearest coordinate cut as a local mask
};

LocalNearest nearest_local(std::uint64_t a, const std::vector<std::uint64_t>& coords, std::uint64_t all) {
  const auto n = static_cast<std::uint64_t>(std::popcount(all));
  LocalNearest best;
  bool have = false;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto d0 = static_cast<std::uint64_t>(std::popcount(a ^ coords[i]));
    const std::uint64_t d1 = n - d0;
    const int b = d1 < d0 ? 1 : 0;
    const std::uint64_t dist = std::min(d0, d1);
    if (!have || dist < best.distance) {
      best = LocalNearest{static_cast<int>(i) + 1, b, dist, b == 0 ? coords[i] : all & ~coords[i]};
      have = true;
    }
  }
  return best;
}

VertexSet random_subset(const CubeParams& params, std::mt19937_64& rng) {
  VertexSet a(params);
  for (Vertex v : component_vertices(params)) {
    if (rng() >> 63) a.insert(v);
  }
  return a;
}

VertexSet random_balanced(const CubeParams& params, std::mt19937_64& rng) {
  std::vector<Vertex> verts = component_vertices(params);
  std::shuffle(verts.begin(), verts.end(), rng);
  verts.resize(verts.size() / 2);
  return VertexSet::from_vertices(params, verts);
}

std::string format_alpha(double a) {
  std::ostringstream s;
  s << a;
  return s.str();
}

}  // namespace

LemmaReport check_min_cut(const CubeParams& params) {
  LemmaReport rep("min_cut", params, "|V| <= 512; exhaustive confirmation when |V| <= 16");
  require(params.vertex_count() <= kMinCutMaxVertices, "check_min_cut: |V| exceeds 512");
  const std::uint64_t expected = params.degree();
  const MinCutResult sw = stoer_wagner_min_cut(params);
  ++rep.checked;
  rep.empirical_constants["stoer_wagner"] = static_cast<double>(sw.value);
  rep.empirical_constants["expected"] = static_cast<double>(expected);
  if (sw.value != expected) {
    rep.fail({{"method", "stoer_wagner"}, {"value", sw.value}, {"expected", expected},
              {"side", sw.side.to_vector()}});
  }
  if (params.vertex_count() <= kSmallEnumerationVertices) {
    const MinCutResult ex = exhaustive_min_cut(params);
    ++rep.checked;
    rep.empirical_constants["exhaustive"] = static_cast<double>(ex.value);
    if (ex.value != sw.value || ex.value != expected) {
      rep.fail({{"method", "exhaustive"}, {"value", ex.value}, {"stoer_wagner", sw.value},
                {"expected", expected}, {"side", ex.side.to_vector()}});
    }
  }
  return rep;
}

LemmaReport check_sparsest_balanced(const CubeParams& params) {
  LemmaReport rep("sparsest_balanced", params, "C(|V|, |V|/2) <= 1e7");
  require(balanced_cut_count(params) <= kBalancedEnumerationCap,
          "check_sparsest_balanced: C(|V|, |V|/2) exceeds 1e7");
  const SmallGraph g = small_graph(params);
  const std::vector<std::uint64_t> coords = coordinate_masks(params, g);
  std::vector<std::uint64_t> canonical_coords;
  for (std::uint64_t c : coords) canonical_coords.push_back(c & 1u ? g.all() & ~c : c);

  const std::uint64_t n = g.size();
  const std::uint64_t coordinate_size = params.coordinate_crossing_degree() * (n / 2);
  const double two_d = std::ldexp(1.0, params.d());
  std::uint64_t min_size = ~std::uint64_t{0};
  std::uint64_t minimizers = 0;
  std::uint64_t coordinate_minimizers = 0;
  double k_emp = 0.0;
  for_each_canonical_balanced(n, [&](std::uint64_t a) {
    ++rep.checked;
    const std::uint64_t size = g.cut(a);
    const bool is_coord =
        std::find(canonical_coords.begin(), canonical_coords.end(), a) != canonical_coords.end();
    if (size < min_size) {
      min_size = size;
      minimizers = 0;
      coordinate_minimizers = 0;
    }
    if (size == min_size) {
      ++minimizers;
      if (is_coord) ++coordinate_minimizers;
    }
    if (is_coord) {
      if (size != coordinate_size) {
        rep.fail({{"reason", "coordinate cut has unexpected size"}, {"cut", local_vertices(g, a)},
                  {"size", size}, {"expected", coordinate_size}});
      }
      return;
    }
    if (size <= coordinate_size) {
      rep.fail({{"reason", "non-coordinate balanced cut no larger than a coordinate cut"},
                {"cut", local_vertices(g, a)}, {"size", size}, {"coordinate_size", coordinate_size}});
      return;
    }
    const double eps = static_cast<double>(size) / static_cast<double>(coordinate_size) - 1.0;
    const LocalNearest near = nearest_local(a, coords, g.all());
    k_emp = std::max(k_emp, static_cast<double>(near.distance) / (eps * two_d));
  });
  rep.empirical_constants["min_balanced_cut"] = static_cast<double>(min_size);
  rep.empirical_constants["coordinate_cut_size"] = static_cast<double>(coordinate_size);
  rep.empirical_constants["minimizers"] = static_cast<double>(minimizers);
  rep.empirical_constants["coordinate_minimizers"] = static_cast<double>(coordinate_minimizers);
  rep.empirical_constants["K_emp"] = k_emp;
  if (coordinate_minimizers != static_cast<std::uint64_t>(params.d()) || minimizers != coordinate_minimizers) {
    if (rep.passed()) {
      rep.fail({{"reason", "minimizers are not exactly the coordinate cuts"},
                {"minimizers", minimizers}, {"coordinate_minimizers", coordinate_minimizers}});
    }
  }
  return rep;
}

LemmaReport check_boundary_identity(const CubeParams& params, int trials, std::uint64_t seed) {
  LemmaReport rep("boundary_identity", params, "d <= 24; exhaustive over all pairs when |V| <= 8");
  require_materializable(params, "check_boundary_identity");
  auto check = [&](const VertexSet& t1, const VertexSet& t2) {
    ++rep.checked;
    if (!((boundary(t1) ^ boundary(t2)) == boundary(t1 ^ t2))) {
      rep.fail({{"T1", t1.to_vector()}, {"T2", t2.to_vector()}});
    }
  };
  if (params.vertex_count() <= 8) {
    const SmallGraph g = small_graph(params);
    const std::uint64_t subsets = std::uint64_t{1} << g.size();
    for (std::uint64_t a = 0; a < subsets; ++a) {
      const VertexSet t1 = from_local(params, g, a);
      for (std::uint64_t b = 0; b < subsets; ++b) check(t1, from_local(params, g, b));
    }
  }
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const VertexSet t1 = random_subset(params, rng);
    check(t1, random_subset(params, rng));
  }
  return rep;
}

LemmaReport check_cut_counting(const CubeParams& params, const std::vector<double>& alphas) {
  LemmaReport rep("cut_counting", params, "|V| <= 16");
  require(params.vertex_count() <= kSmallEnumerationVertices, "check_cut_counting: |V| exceeds 16");
  const SmallGraph g = small_graph(params);
  const std::size_t n = g.size();
  std::vector<std::uint64_t> sizes;
  // Cuts, not subsets: local vertex 0 stays outside A, and A is nonempty.
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << (n - 1)); ++m) sizes.push_back(g.cut(m << 1));
  const std::uint64_t mincut = *std::min_element(sizes.begin(), sizes.end());
  rep.empirical_constants["min_cut"] = static_cast<double>(mincut);
  rep.empirical_constants["cuts"] = static_cast<double>(sizes.size());
  for (double alpha : alphas) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("check_cut_counting: alpha must be >= 1");
    const auto r = static_cast<int>(std::ceil(2.0 * alpha));
    const double threshold = alpha * static_cast<double>(mincut);
    const auto count = static_cast<std::uint64_t>(std::count_if(
        sizes.begin(), sizes.end(), [&](std::uint64_t s) { return static_cast<double>(s) <= threshold; }));
    // For r > n the binomial vanishes and the statement is vacuous; the
    // total number of cuts is the honest ceiling then.
    const double bound = r <= static_cast<int>(n)
                             ? std::ldexp(static_cast<double>(binomial(static_cast<int>(n), r)), r)
                             : static_cast<double>(sizes.size());
    ++rep.checked;
    const std::string key = "alpha=" + format_alpha(alpha);
    rep.empirical_constants["count[" + key + "]"] = static_cast<double>(count);
    rep.empirical_constants["bound[" + key + "]"] = bound;
    if (static_cast<double>(count) > bound) {
      rep.fail({{"alpha", alpha}, {"count", count}, {"bound", bound}});
    }
  }
  return rep;
}

namespace {

// Smallest d0 in [k, 60] such that the gap holds for every d in [d0, 60];
// returns 61 when it fails at d = 60. `middle_only` restricts levels to
// [2, d-2] for every k.
int eigengap_threshold(int k, bool middle_only) {
  int last_fail = k - 1;
  for (int d = k; d <= kEigengapScanMaxD; ++d) {
    const EigenvalueTable t = laplacian_eigenvalues(d, k);
    const int top = (middle_only || k % 2 == 0) ? d - 2 : d;
    for (int s = 2; s <= top; ++s) {
      // lambda_s >= 3/2 lambda_1  <=>  2 lambda_s >= 3 lambda_1
      if (2 * t.lambda[static_cast<std::size_t>(s)] < 3 * t.lambda[1]) {
        last_fail = d;
        break;
      }
    }
  }
  return last_fail + 1;
}

}  // namespace

LemmaReport check_spectral(const CubeParams& params) {
  LemmaReport rep("spectral", params, "d <= 10, k <= 4; eigengap scan to d = 60");
  const int d = params.d();
  const int k = params.k();
  require(d <= kSpectralMaxD && k <= kSpectralMaxK, "check_spectral: needs d <= 10 and k <= 4");
  const EigenvalueTable table = laplacian_eigenvalues(d, k);
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::int64_t> chi(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t x = 0; x < n; ++x) chi[x] = std::popcount(x & s) % 2 ? -1 : 1;
    const std::vector<std::int64_t> image = apply_laplacian(d, k, chi);
    const auto lambda = static_cast<std::int64_t>(table.lambda[static_cast<std::size_t>(std::popcount(s))]);
    ++rep.checked;
    for (std::size_t x = 0; x < n; ++x) {
      if (image[x] != lambda * chi[x]) {
        rep.fail({{"reason", "character is not an eigenvector"}, {"S", s}, {"x", x},
                  {"L_chi", image[x]}, {"lambda_chi", lambda * chi[x]}});
        break;
      }
    }
  }
  for (int s = 0; s <= d; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (static_cast<std::int64_t>(table.lambda[i]) + table.mu[i] != static_cast<std::int64_t>(params.degree())) {
      rep.fail({{"reason", "lambda + mu != C(d,k)"}, {"s", s}});
    }
  }

  // Eigengap at this d (an observation: the lemma only claims it for large d).
  const int top = k % 2 == 0 ? d - 2 : d;
  if (top >= 2) {
    double ratio = 1e300;
    for (int s = 2; s <= top; ++s) {
      ratio = std::min(ratio, static_cast<double>(table.lambda[static_cast<std::size_t>(s)]) /
                                  static_cast<double>(table.lambda[1]));
    }
    rep.empirical_constants["gap_ratio"] = ratio;
  }
  if (k % 2 == 0) {
    // Exact identity at every d in the scan.
    for (int dd = std::max(k, 2); dd <= kEigengapScanMaxD; ++dd) {
      const EigenvalueTable t = laplacian_eigenvalues(dd, k);
      ++rep.checked;
      if (t.lambda[static_cast<std::size_t>(dd - 1)] != t.lambda[1]) {
        rep.fail({{"reason", "lambda_{d-1} != lambda_1"}, {"d", dd}});
      }
    }
  }
  const int d0 = eigengap_threshold(k, false);
  rep.empirical_constants["d0"] = d0;
  rep.empirical_constants["d0_middle_levels"] = eigengap_threshold(k, true);
  if (d0 > kEigengapScanMaxD) rep.fail({{"reason", "eigengap fails at d = 60"}, {"k", k}});
  return rep;
}

LemmaReport check_concentration(const CubeParams& params, double p, int trials, std::uint64_t seed) {
  LemmaReport rep("concentration", params, "d <= 16");
  require(params.d() <= kMonteCarloMaxD, "check_concentration: d exceeds 16");
  SampleParams{p, 0}.validate();
  if (trials < 2) throw std::invalid_argument("check_concentration: needs at least 2 trials");
  const int d = params.d();
  const auto n = static_cast<double>(params.vertex_count());
  const double m = static_cast<double>(params.coordinate_crossing_degree()) * n / 2.0;
  const double mean = p * m;
  const auto T = static_cast<double>(trials);

  std::vector<std::vector<std::uint64_t>> sizes(static_cast<std::size_t>(d));
  std::vector<double> isolated;
  for (int t = 0; t < trials; ++t) {
    const SampledGraph g = subsample(params, SampleParams{p, derive_seed(seed, static_cast<std::uint64_t>(t))});
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(d), 0);
    for_each_edge(params, [&](const Edge& e, std::uint64_t idx) {
      if (!g.retained().contains(idx)) return;
      for (std::uint32_t diff = e.u ^ e.v; diff != 0; diff &= diff - 1) ++counts[static_cast<std::size_t>(std::countr_zero(diff))];
    });
    for (int j = 0; j < d; ++j) sizes[static_cast<std::size_t>(j)].push_back(counts[static_cast<std::size_t>(j)]);
    isolated.push_back(static_cast<double>(isolated_vertex_count(g)));
  }

  // S_{j,0} and S_{j,1} are complements within the component: same size.
  const double se = std::sqrt(m * p * (1.0 - p) / T);
  double worst_z = 0.0;
  for (int j = 0; j < d; ++j) {
    const auto& xs = sizes[static_cast<std::size_t>(j)];
    double sum = 0.0;
    for (std::uint64_t x : xs) sum += static_cast<double>(x);
    const double dev = std::abs(sum / T - mean);
    rep.checked += 2;
    if (se > 0.0) worst_z = std::max(worst_z, dev / se);
    if (dev > 3.0 * se + 1e-9 * std::max(1.0, mean)) {
      rep.fail({{"reason", "coordinate-cut mean outside 3 sigma"}, {"j", j + 1},
                {"mean", sum / T}, {"theory", mean}, {"se", se}});
    }
  }
  rep.empirical_constants["theory_mean"] = mean;
  rep.empirical_constants["max_mean_z"] = worst_z;

  // Chernoff: Pr[|X - EX| >= lam] <= 2 exp(-min(lam, lam^2/EX) / 3).
  if (mean > 0.0) {
    for (double mult : {1.0, 2.0}) {
      const double lam = mult * std::sqrt(mean);
      const double bound = std::min(1.0, 2.0 * std::exp(-std::min(lam, lam * lam / mean) / 3.0));
      double worst = 0.0;
      for (const auto& xs : sizes) {
        const auto hits = std::count_if(xs.begin(), xs.end(), [&](std::uint64_t x) {
          return std::abs(static_cast<double>(x) - mean) >= lam;
        });
        worst = std::max(worst, static_cast<double>(hits) / T);
      }
      const std::string key = mult == 1.0 ? "sqrt_mean" : "2sqrt_mean";
      rep.empirical_constants["tail_freq[" + key + "]"] = worst;
      rep.empirical_constants["chernoff_bound[" + key + "]"] = bound;
      ++rep.checked;
      if (worst > bound) rep.fail({{"reason", "tail above Chernoff bound"}, {"lambda", lam},
                                   {"frequency", worst}, {"bound", bound}});
    }
  }

  // Isolated vertices: each is isolated w.p. q = (1-p)^D; adjacent pairs share
  // one edge, so Cov = (1-p)^(2D-1) - (1-p)^(2D) for them and 0 otherwise.
  const auto D = static_cast<double>(params.degree());
  const double q = std::pow(1.0 - p, D);
  const double var = n * q * (1.0 - q) + n * D * (std::pow(1.0 - p, 2.0 * D - 1.0) - std::pow(1.0 - p, 2.0 * D));
  const double iso_se = std::sqrt(std::max(0.0, var) / T);
  double iso_sum = 0.0;
  for (double x : isolated) iso_sum += x;
  const double iso_mean = iso_sum / T;
  const double iso_theory = n * q;
  ++rep.checked;
  rep.empirical_constants["isolated_mean"] = iso_mean;
  rep.empirical_constants["isolated_theory"] = iso_theory;
  rep.empirical_constants["isolated_z"] = iso_se > 0.0 ? std::abs(iso_mean - iso_theory) / iso_se : 0.0;
  if (std::abs(iso_mean - iso_theory) > 3.0 * iso_se + 1e-9 * std::max(1.0, iso_theory)) {
    rep.fail({{"reason", "isolated-vertex mean outside 3 sigma"}, {"mean", iso_mean},
              {"theory", iso_theory}, {"se", iso_se}});
  }
  return rep;
}

LemmaReport check_small_cut_bound(const CubeParams& params, int trials, std::uint64_t seed) {
  LemmaReport rep("small_cut_bound", params,
                  "exhaustive when C(|V|, |V|/2) <= 1e7; otherwise sampled, d <= 16");
  const double coord_deg = static_cast<double>(params.coordinate_crossing_degree());
  const double half = static_cast<double>(params.vertex_count()) / 2.0;
  const double coordinate_size = coord_deg * half;
  double c_emp = 0.0;
  std::uint64_t ratios = 0;

  if (balanced_cut_count(params) <= kBalancedEnumerationCap) {
    const SmallGraph g = small_graph(params);
    const std::vector<std::uint64_t> coords = coordinate_masks(params, g);
    const auto edge_list = local_edges(g);
    for_each_canonical_balanced(g.size(), [&](std::uint64_t a) {
      const std::uint64_t size = g.cut(a);
      const double eps = static_cast<double>(size) / coordinate_size - 1.0;
      if (eps > 1.0) return;
      ++rep.checked;
      const LocalNearest near = nearest_local(a, coords, g.all());
      const std::uint64_t diff = a ^ near.oriented;
      std::uint64_t sym = 0;
      for (const auto& [u, v] : edge_list) {
        const bool in_a = ((a >> u) ^ (a >> v)) & 1u;
        const bool in_s = ((near.oriented >> u) ^ (near.oriented >> v)) & 1u;
        sym += in_a != in_s ? 1 : 0;
      }
      const std::uint64_t rhs = g.cut(diff);
      if (sym != rhs) {
        rep.fail({{"reason", "|dA xor dS| != |d(A xor S)|"}, {"cut", local_vertices(g, a)},
                  {"lhs", sym}, {"rhs", rhs}});
        return;
      }
      if (diff == 0) return;  // A = S
      if (eps <= 0.0) {
        rep.fail({{"reason", "non-coordinate cut with eps <= 0"}, {"cut", local_vertices(g, a)}});
        return;
      }
      ++ratios;
      c_emp = std::max(c_emp, static_cast<double>(rhs) / (eps * coordinate_size));
    });
  } else {
    require(params.d() <= kMonteCarloMaxD, "check_small_cut_bound: d exceeds 16");
    const std::vector<Vertex> verts = component_vertices(params);
    const std::size_t max_swaps = std::max<std::size_t>(1, verts.size() / 16);
    for (int t = 0; t < trials; ++t) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
      const int j = std::uniform_int_distribution<int>(1, params.d())(rng);
      const int b = static_cast<int>(rng() >> 63);
      const VertexSet s = coordinate_cut(params, j, b);
      std::vector<Vertex> inside = s.to_vector();
      std::vector<Vertex> outside = s.complement().to_vector();
      std::shuffle(inside.begin(), inside.end(), rng);
      std::shuffle(outside.begin(), outside.end(), rng);
      const std::size_t swaps = std::uniform_int_distribution<std::size_t>(1, max_swaps)(rng);
      VertexSet a = s;
      for (std::size_t i = 0; i < swaps; ++i) {
        a.erase(inside[i]);
        a.insert(outside[i]);
      }
      const double eps = static_cast<double>(cut_size(a)) / coordinate_size - 1.0;
      if (eps > 1.0) continue;
      ++rep.checked;
      const VertexSet diff = a ^ s;
      const std::uint64_t lhs = (boundary(a) ^ boundary(s)).size();
      const std::uint64_t rhs = cut_size(diff);
      if (lhs != rhs) {
        rep.fail({{"reason", "|dA xor dS| != |d(A xor S)|"}, {"j", j}, {"b", b}, {"cut", a.to_vector()}});
        continue;
      }
      if (eps <= 0.0) continue;  // an equally sparse cut; not a ratio sample
      ++ratios;
      c_emp = std::max(c_emp, static_cast<double>(rhs) / (eps * coordinate_size));
    }
  }
  rep.empirical_constants["C_emp"] = c_emp;
  rep.empirical_constants["ratio_samples"] = static_cast<double>(ratios);
  return rep;
}

LemmaReport check_cut_formula(const CubeParams& params, int trials, std::uint64_t seed) {
  LemmaReport rep("cut_formula", params, "d <= 16");
  require(params.d() <= kMonteCarloMaxD, "check_cut_formula: d exceeds 16");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const VertexSet a = random_subset(params, rng);
    const double spectral = cut_size_via_fourier(a);
    const auto exact = static_cast<double>(cut_size(a));
    const double dev = std::abs(spectral - exact);
    worst = std::max(worst, dev);
    ++rep.checked;
    if (!(dev < 1e-6) || std::llround(spectral) != std::llround(exact)) {
      rep.fail({{"cut", a.to_vector()}, {"spectral", spectral}, {"edge_count", exact}});
    }
  }
  rep.empirical_constants["max_deviation"] = worst;
  return rep;
}

LemmaReport check_component_fourier(const CubeParams& params, int trials, std::uint64_t seed) {
  LemmaReport rep("component_fourier", params, "even or odd component, d <= 16; decomposition needs d >= 3");
  if (params.component() == Component::Full) {
    throw std::invalid_argument("check_component_fourier: needs the even or odd component");
  }
  require(params.d() <= kMonteCarloMaxD, "check_component_fourier: d exceeds 16");
  const double sign = params.component() == Component::Even ? 1.0 : -1.0;
  double worst_sym = 0.0;
  double worst_decomp = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const CubeFunction f = CubeFunction::indicator(random_subset(params, rng));
    const FourierSpectrum s = wht(f);
    const std::size_t full = s.coeffs.size() - 1;
    double dev = 0.0;
    for (std::size_t m = 0; m < s.coeffs.size(); ++m) {
      dev = std::max(dev, std::abs(s.coeffs[m] - sign * s.coeffs[full ^ m]));
    }
    worst_sym = std::max(worst_sym, dev);
    ++rep.checked;
    if (!(dev <= 1e-9) || !even_symmetry_check(f, params.component())) {
      rep.fail({{"reason", "spectrum not symmetric"}, {"trial", t}, {"deviation", dev}});
    }
    if (params.component() == Component::Even && params.d() >= 3) {
      const FknDecompositionReport r = fkn_decomposition_check(CubeFunction::indicator(random_balanced(params, rng)));
      worst_decomp = std::max(worst_decomp, r.max_deviation());
      ++rep.checked;
      if (!(r.max_deviation() <= 1e-9)) {
        rep.fail({{"reason", "R1/R2 identities"}, {"trial", t}, {"deviation", r.max_deviation()}});
      }
    }
  }
  rep.empirical_constants["max_symmetry_deviation"] = worst_sym;
  if (params.component() == Component::Even && params.d() >= 3) {
    rep.empirical_constants["max_decomposition_deviation"] = worst_decomp;
  }
  return rep;
}

LemmaReport check_hypercontractivity(const CubeParams& params, int degree, int trials, std::uint64_t seed) {
  LemmaReport rep("hypercontractivity", params, "d <= 16");
  require(params.d() <= kMonteCarloMaxD, "check_hypercontractivity: d exceeds 16");
  const HypercontractivityReport r = hypercontractivity_spot_check(params.d(), degree, trials, seed);
  rep.checked = static_cast<std::uint64_t>(trials);
  rep.empirical_constants["degree"] = degree;
  rep.empirical_constants["bound"] = r.bound;
  rep.empirical_constants["worst_ratio"] = r.worst_ratio;
  for (int i = 0; i < r.violations; ++i) rep.fail({{"worst_ratio", r.worst_ratio}, {"bound", r.bound}});
  return rep;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{
      "min_cut",         "sparsest_balanced", "boundary_identity", "cut_counting",
      "spectral",        "concentration",     "small_cut_bound",   "cut_formula",
      "component_fourier", "hypercontractivity"};
  return ids;
}

ordered_json verify_all(const CubeParams& params, const VerifyOptions& options, const std::string& only) {
  if (only != "all" && std::find(lemma_ids().begin(), lemma_ids().end(), only) == lemma_ids().end()) {
    throw std::invalid_argument("unknown lemma '" + only + "'");
  }
  ordered_json doc;
  doc["d"] = params.d();
  doc["k"] = params.k();
  doc["component"] = std::string(to_string(params.component()));
  doc["options"] = {{"trials", options.trials}, {"seed", options.seed}, {"p", options.p},
                    {"alphas", options.alphas}};
  ordered_json reports = ordered_json::array();
  ordered_json skipped = ordered_json::array();
  bool passed = true;

  auto run = [&](const char* id, const std::function<LemmaReport()>& fn) {
    if (only != "all" && only != id) return;
    try {
      const LemmaReport rep = fn();
      passed = passed && rep.passed();
      reports.push_back(to_json(rep));
    } catch (const ScaleError& e) {
      skipped.push_back({{"lemma_id", id}, {"reason", e.what()}});
    }
  };
  const int trials = options.trials;
  const std::uint64_t seed = options.seed;
  run("min_cut", [&] { return check_min_cut(params); });
  run("sparsest_balanced", [&] { return check_sparsest_balanced(params); });
  run("boundary_identity", [&] { return check_boundary_identity(params, trials, seed); });
  run("cut_counting", [&] { return check_cut_counting(params, options.alphas); });
  run("spectral", [&] { return check_spectral(params); });
  run("concentration", [&] { return check_concentration(params, options.p, std::max(trials, 2), seed); });
  run("small_cut_bound", [&] { return check_small_cut_bound(params, trials, seed); });
  run("cut_formula", [&] { return check_cut_formula(params, trials, seed); });
  if (params.component() == Component::Full) {
    if (only == "all" || only == "component_fourier") {
      skipped.push_back({{"lemma_id", "component_fourier"}, {"reason", "needs the even or odd component"}});
    }
  } else {
    run("component_fourier", [&] { return check_component_fourier(params, trials, seed); });
  }
  run("hypercontractivity",
      [&] { return check_hypercontractivity(params, std::min(2, params.d()), trials, seed); });

  doc["reports"] = reports;
  doc["skipped"] = skipped;
  doc["passed"] = passed;
  return doc;
}

}  // namespace cubecut
