#include "cubecut/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cubecut {

namespace {

void require_fourier_dim(int d) {
  if (d < 0 || d > kMaxMaterializedDim) {
    throw ScaleError("fourier: d=" + std::to_string(d) + " outside [0, " +
                     std::to_string(kMaxMaterializedDim) + "]");
  }
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("eigenvalue overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("eigenvalue overflow");
  return r;
}

}  // namespace

CubeFunction CubeFunction::zeros(int d) {
  require_fourier_dim(d);
  return CubeFunction{d, std::vector<double>(std::size_t{1} << d, 0.0)};
}

CubeFunction CubeFunction::indicator(const VertexSet& a) {
  CubeFunction f = zeros(a.params().d());
  for (Vertex v : a.to_vector()) f.values[v] = 1.0;
  return f;
}

void CubeFunction::validate() const {
  require_fourier_dim(d);
  if (values.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("cube function length " + std::to_string(values.size()) +
                                " is not 2^d for d=" + std::to_string(d));
  }
}

bool CubeFunction::is_boolean() const {
  return std::all_of(values.begin(), values.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

double FourierSpectrum::total_mass() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s;
}

void walsh_hadamard_in_place(std::vector<double>& data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("Walsh-Hadamard length " + std::to_string(n) +
                                " is not a power of two");
  }
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = data[j];
        const double y = data[j + h];
        data[j] = x + y;
        data[j + h] = x - y;
      }
    }
  }
}

FourierSpectrum wht(const CubeFunction& f) {
  if (!is_power_of_two(f.values.size())) {
    throw std::invalid_argument("cube function length is not a power of two");
  }
  f.validate();
  FourierSpectrum s{f.d, f.values};
  walsh_hadamard_in_place(s.coeffs);
  const double scale = std::ldexp(1.0, -f.d);
  for (double& c : s.coeffs) c *= scale;
  return s;
}

CubeFunction inverse_wht(const FourierSpectrum& spectrum) {
  if (!is_power_of_two(spectrum.coeffs.size())) {
    throw std::invalid_argument("spectrum length is not a power of two");
  }
  CubeFunction f{spectrum.d, spectrum.coeffs};
  f.validate();
  walsh_hadamard_in_place(f.values);
  return f;
}

EigenvalueTable laplacian_eigenvalues(int d, int k) {
  if (d < 1 || d > kMaxBinomialN || k < 1 || k > d) {
    throw std::invalid_argument("laplacian_eigenvalues: need 1 <= k <= d <= 64, got d=" +
                                std::to_string(d) + ", k=" + std::to_string(k));
  }
  EigenvalueTable t;
  t.d = d;
  t.k = k;
  t.lambda.resize(static_cast<std::size_t>(d) + 1);
  t.mu.resize(static_cast<std::size_t>(d) + 1);
  const std::uint64_t degree = binomial(d, k);
  for (int s = 0; s <= d; ++s) {
    std::uint64_t odd_hits = 0;
    for (int j = 1; j <= k; j += 2) {
      odd_hits = checked_add(odd_hits, checked_mul(binomial(s, j), binomial(d - s, k - j)));
    }
    const std::uint64_t lambda = checked_mul(2, odd_hits);
    t.lambda[static_cast<std::size_t>(s)] = lambda;
    t.mu[static_cast<std::size_t>(s)] =
        static_cast<std::int64_t>(degree) - static_cast<std::int64_t>(lambda);
  }
  return t;
}

std::vector<std::int64_t> apply_laplacian(int d, int k, const std::vector<std::int64_t>& v) {
  require_fourier_dim(d);
  if (v.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("apply_laplacian: vector length is not 2^d");
  }
  const auto masks = k_subset_masks(d, k);
  std::vector<std::int64_t> out(v.size(), 0);
  for (std::size_t x = 0; x < v.size(); ++x) {
    std::int64_t acc = 0;
    for (std::uint32_t m : masks) acc += v[x] - v[x ^ m];
    out[x] = acc;
  }
  return out;
}

double cut_size_via_fourier(const VertexSet& a) {
  const CubeParams& params = a.params();
  const FourierSpectrum s = wht(CubeFunction::indicator(a));
  const EigenvalueTable table = laplacian_eigenvalues(params.d(), params.k());
  double acc = 0.0;
  for (std::size_t mask = 0; mask < s.coeffs.size(); ++mask) {
    const auto level = static_cast<std::size_t>(std::popcount(mask));
    acc += static_cast<double>(table.lambda[level]) * s.coeffs[mask] * s.coeffs[mask];
  }
  return std::ldexp(acc, params.d());
}

double level_mass(const FourierSpectrum& spectrum, const std::function<bool(int)>& level_predicate) {
  double acc = 0.0;
  for (std::size_t mask = 0; mask < spectrum.coeffs.size(); ++mask) {
    if (level_predicate(std::popcount(mask))) acc += spectrum.coeffs[mask] * spectrum.coeffs[mask];
  }
  return acc;
}

double tail_mass(const FourierSpectrum& spectrum, int k) {
  const int d = spectrum.d;
  if (k % 2 == 1) return level_mass(spectrum, [](int s) { return s >= 2; });
  return level_mass(spectrum, [d](int s) { return s >= 2 && s <= d - 2; });
}

NearestCoordinate nearest_coordinate_cut(const VertexSet& a) {
  const CubeParams& params = a.params();
  NearestCoordinate best;
  bool have = false;
  for (int j = 1; j <= params.d(); ++j) {
    // S_{j,1} is the complement of S_{j,0} within the component, so one
    // distance determines both.
    const std::uint64_t d0 = hamming_distance(a, coordinate_cut(params, j, 0));
    const std::uint64_t d1 = params.vertex_count() - d0;
    const int b = d1 < d0 ? 1 : 0;
    const std::uint64_t dist = std::min(d0, d1);
    if (!have || dist < best.distance) {
      best = NearestCoordinate{CoordinateCutId{j, b}, dist};
      have = true;
    }
  }
  return best;
}

FknDiagnosis fkn_diagnose(const VertexSet& a) {
  if (!is_balanced(a)) throw std::invalid_argument("fkn_diagnose: cut is not balanced");
  const CubeParams& params = a.params();
  FknDiagnosis out;
  const double sparsest = static_cast<double>(params.coordinate_crossing_degree()) *
                          static_cast<double>(a.size());
  out.epsilon = static_cast<double>(cut_size(a)) / sparsest - 1.0;
  const NearestCoordinate nearest = nearest_coordinate_cut(a);
  out.nearest = nearest.cut;
  out.distance = nearest.distance;
  out.tail_mass = tail_mass(wht(CubeFunction::indicator(a)), params.k());
  return out;
}

bool even_symmetry_check(const CubeFunction& f, Component parity, double tol) {
  f.validate();
  if (parity == Component::Full) {
    throw std::invalid_argument("even_symmetry_check: parity must be even or odd");
  }
  const int want = parity == Component::Even ? 0 : 1;
  for (std::size_t x = 0; x < f.values.size(); ++x) {
    if (f.values[x] != 0.0 && std::popcount(x) % 2 != want) {
      throw std::invalid_argument("even_symmetry_check: support violates the declared parity");
    }
  }
  const FourierSpectrum s = wht(f);
  const std::size_t full = s.coeffs.size() - 1;
  const double sign = parity == Component::Even ? 1.0 : -1.0;
  for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
    if (std::abs(s.coeffs[t] - sign * s.coeffs[full ^ t]) > tol) return false;
  }
  return true;
}

double FknDecompositionReport::max_deviation() const {
  return std::max({symmetry_deviation, r1_spectrum_deviation, r2_spectrum_deviation,
                   odd_vanishing_deviation, norm_deviation});
}

FknDecompositionReport fkn_decomposition_check(const CubeFunction& f) {
  f.validate();
  const int d = f.d;
  if (d < 3) throw std::invalid_argument("fkn_decomposition_check: requires d >= 3");
  if (!f.is_boolean()) throw std::invalid_argument("fkn_decomposition_check: f is not boolean");
  double sq = 0.0;
  for (std::size_t x = 0; x < f.values.size(); ++x) {
    if (f.values[x] != 0.0 && std::popcount(x) % 2 != 0) {
      throw std::invalid_argument("fkn_decomposition_check: f is not supported on even weights");
    }
    sq += f.values[x];
  }
  const std::size_t n = f.values.size();
  if (4 * static_cast<std::size_t>(sq) != n) {
    throw std::invalid_argument("fkn_decomposition_check: ||f||^2 must equal 1/4");
  }

  const FourierSpectrum fs = wht(f);
  const std::size_t full = n - 1;
  auto project = [&](auto keep) {
    FourierSpectrum part{d, std::vector<double>(n, 0.0)};
    for (std::size_t t = 0; t < n; ++t) {
      if (keep(std::popcount(t))) part.coeffs[t] = fs.coeffs[t];
    }
    return inverse_wht(part);
  };
  const CubeFunction low = project([](int s) { return s <= 1; });
  const CubeFunction high = project([d](int s) { return s >= d - 1; });
  const CubeFunction mid = project([d](int s) { return s >= 2 && s <= d - 2; });

  FknDecompositionReport rep;
  rep.epsilon = level_mass(fs, [d](int s) { return s >= 2 && s <= d - 2; });
  for (std::size_t t = 0; t < n; ++t) {
    rep.symmetry_deviation = std::max(rep.symmetry_deviation,
                                      std::abs(fs.coeffs[t] - fs.coeffs[full ^ t]));
  }

  // R2 = 2 S2^2 - S2 matches the mirrored closed form only where f lives:
  // on odd-weight inputs S2 = -S1, so 2 S2^2 - S2 = 4 S1^2 - R1 there.
  CubeFunction r1 = CubeFunction::zeros(d);
  CubeFunction r2 = CubeFunction::zeros(d);
  double mid_sq = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    r1.values[x] = 2.0 * low.values[x] * low.values[x] - low.values[x];
    r2.values[x] = 2.0 * high.values[x] * high.values[x] - high.values[x];
    mid_sq += mid.values[x] * mid.values[x];
  }
  rep.epsilon_pointwise = mid_sq / static_cast<double>(n);
  rep.norm_deviation = std::abs(rep.epsilon_pointwise - rep.epsilon);

  // Closed forms: R1 = -eps chi_0 + 4 sum_{i<j} f^(i) f^(j) chi_{ij} and its
  // mirror image on complemented masks.
  FourierSpectrum r1_expected{d, std::vector<double>(n, 0.0)};
  FourierSpectrum r2_expected{d, std::vector<double>(n, 0.0)};
  r1_expected.coeffs[0] = -rep.epsilon;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const std::size_t ij = (std::size_t{1} << i) | (std::size_t{1} << j);
      r1_expected.coeffs[ij] = 4.0 * fs.coeffs[std::size_t{1} << i] * fs.coeffs[std::size_t{1} << j];
    }
  }
  for (std::size_t t = 0; t < n; ++t) r2_expected.coeffs[full ^ t] = r1_expected.coeffs[t];
  const FourierSpectrum r1s = wht(r1);
  for (std::size_t t = 0; t < n; ++t) {
    rep.r1_spectrum_deviation =
        std::max(rep.r1_spectrum_deviation, std::abs(r1s.coeffs[t] - r1_expected.coeffs[t]));
  }
  const CubeFunction r2_closed = inverse_wht(r2_expected);
  for (std::size_t x = 0; x < n; ++x) {
    if (std::popcount(x) % 2 == 0) {
      rep.r2_spectrum_deviation =
          std::max(rep.r2_spectrum_deviation, std::abs(r2.values[x] - r2_closed.values[x]));
    } else {
      rep.odd_vanishing_deviation =
          std::max(rep.odd_vanishing_deviation, std::abs(r1.values[x] + r2_closed.values[x]));
    }
  }
  return rep;
}

double norm_p(const CubeFunction& f, double p) {
  double acc = 0.0;
  for (double x : f.values) acc += std::pow(std::abs(x), p);
  return std::pow(acc / static_cast<double>(f.values.size()), 1.0 / p);
}

HypercontractivityReport hypercontractivity_spot_check(int d, int degree, int trials,
                                                       std::uint64_t seed) {
  require_fourier_dim(d);
  if (degree < 0 || degree > d) {
    throw std::invalid_argument("hypercontractivity_spot_check: need 0 <= degree <= d");
  }
  HypercontractivityReport rep;
  rep.d = d;
  rep.degree = degree;
  rep.trials = trials;
  rep.bound = std::pow(3.0, degree / 2.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = std::size_t{1} << d;
  for (int t = 0; t < trials; ++t) {
    FourierSpectrum s{d, std::vector<double>(n, 0.0)};
    for (std::size_t mask = 0; mask < n; ++mask) {
      if (std::popcount(mask) <= degree) s.coeffs[mask] = gauss(rng);
    }
    const CubeFunction f = inverse_wht(s);
    const double two = norm_p(f, 2.0);
    const double ratio = two > 0.0 ? norm_p(f, 4.0) / two : 1.0;
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    // Relative slack for rounding when the bound is tight (degree 0).
    if (ratio > rep.bound * (1.0 + 1e-12)) ++rep.violations;
  }
  return rep;
}

}  // namespace cubecut
