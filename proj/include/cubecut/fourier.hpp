#pragma once

// Fourier analysis on {0,1}^d.
//
// Characters are chi_S(x) = (-1)^popcount(x & S), with S a subset bitmask in
// the same bit convention as vertices. The forward transform carries the
// 2^-d normalization, f^(S) = E_x[f(x) chi_S(x)], so the inverse is the plain
// sum f(x) = sum_S f^(S) chi_S(x).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cubecut/bitcube.hpp"

namespace cubecut {

struct CubeFunction {
  int d = 0;
  std::vector<double> values;  // indexed by vertex

  static CubeFunction zeros(int d);
  static CubeFunction indicator(const VertexSet& a);
  // Throws std::invalid_argument unless values.size() == 2^d.
  void validate() const;
  bool is_boolean() const;  // every value exactly 0 or 1
};

struct FourierSpectrum {
  int d = 0;
  std::vector<double> coeffs;  // indexed by subset mask

  double total_mass() const;  // sum of squared coefficients
};

// Unnormalized in-place butterfly; length must be a power of two.
void walsh_hadamard_in_place(std::vector<double>& data);

FourierSpectrum wht(const CubeFunction& f);
CubeFunction inverse_wht(const FourierSpectrum& spectrum);

// Exact Laplacian spectrum of Q_{d,k} per character level s = |S|.
struct EigenvalueTable {
  int d = 0;
  int k = 0;
  std::vector<std::uint64_t> lambda;  // Laplacian eigenvalue, index s in [0, d]
  std::vector<std::int64_t> mu;       // adjacency eigenvalue (Krawtchouk), C(d,k) - lambda
};

// Valid for 1 <= k <= d <= 64; all arithmetic is exact and overflow-checked.
EigenvalueTable laplacian_eigenvalues(int d, int k);

// Matrix-free (L v)(x) = sum over k-masks T of v(x) - v(x ^ T), over the whole
// ambient cube.
std::vector<std::int64_t> apply_laplacian(int d, int k, const std::vector<std::int64_t>& v);

// 2^d * sum_S lambda_|S| f^(S)^2 for the indicator f of A.
double cut_size_via_fourier(const VertexSet& a);

double level_mass(const FourierSpectrum& spectrum, const std::function<bool(int)>& level_predicate);

// Fourier mass outside the levels a sparse cut may occupy: levels >= 2 for odd
// k, levels in [2, d-2] for even k.
double tail_mass(const FourierSpectrum& spectrum, int k);

struct CoordinateCutId {
  int j = 1;  // 1-based coordinate
  int b = 0;
  friend bool operator==(const CoordinateCutId&, const CoordinateCutId&) = default;
};

struct NearestCoordinate {
  CoordinateCutId cut;
  std::uint64_t distance = 0;
};

// Minimizer of |A xor S_{j,b}| over all 2d coordinate cuts of the component;
// ties go to the smallest j, then b = 0.
NearestCoordinate nearest_coordinate_cut(const VertexSet& a);

struct FknDiagnosis {
  double epsilon = 0.0;     // cut_size / (C(d-1,k-1) |A|) - 1
  CoordinateCutId nearest;
  std::uint64_t distance = 0;
  double tail_mass = 0.0;
};

// Requires A balanced within its component.
FknDiagnosis fkn_diagnose(const VertexSet& a);

// f must vanish outside the given parity class (Even or Odd). Returns whether
// f^(T) = +/- f^([d] \ T) holds within tol for every T.
bool even_symmetry_check(const CubeFunction& f, Component parity, double tol = 1e-9);

// Low/high/middle level decomposition of a balanced even-supported boolean
// function, with the deviations of every closed-form identity.
struct FknDecompositionReport {
  double epsilon = 0.0;                // middle-level mass, spectral
  double epsilon_pointwise = 0.0;      // E[L(x)^2]
  double symmetry_deviation = 0.0;     // max |f^(T) - f^([d] \ T)|
  double r1_spectrum_deviation = 0.0;  // vs -eps chi_0 + 4 sum f^(i) f^(j) chi_ij
  double r2_spectrum_deviation = 0.0;  // 2 S2^2 - S2 vs the mirrored closed form, even-weight inputs
  double odd_vanishing_deviation = 0.0;  // max |R1 + mirrored R2| on odd-weight inputs
  double norm_deviation = 0.0;         // |<L, L> - eps|

  double max_deviation() const;
};

// Requires d >= 3, f boolean, supported on even-weight inputs, E[f^2] = 1/4.
FknDecompositionReport fkn_decomposition_check(const CubeFunction& f);

struct HypercontractivityReport {
  int d = 0;
  int degree = 0;
  int trials = 0;
  double bound = 1.0;       // 3^(degree/2)
  double worst_ratio = 0.0;  // max ||f||_4 / ||f||_2
  int violations = 0;
};

double norm_p(const CubeFunction& f, double p);  // (E |f|^p)^(1/p)

// Random polynomials with Gaussian coefficients on levels <= degree.
HypercontractivityReport hypercontractivity_spot_check(int d, int degree, int trials,
                                                       std::uint64_t seed);

}  // namespace cubecut
