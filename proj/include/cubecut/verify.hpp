#pragma once

// Brute-force and structural oracles for the cube lemmas at desk scale.
//
// Every check is deterministic given its arguments and returns a LemmaReport.
// Empirical constants are observations at the checked scale; they do not bound
// any asymptotic constant.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecut/bitcube.hpp"

namespace cubecut {

struct LemmaReport {
  std::string lemma_id;
  CubeParams params;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<nlohmann::ordered_json> witness;  // first violation found
  std::map<std::string, double> empirical_constants;
  std::string cap;  // the scale cap the check enforces

  explicit LemmaReport(std::string id, const CubeParams& p, std::string cap_text)
      : lemma_id(std::move(id)), params(p), cap(std::move(cap_text)) {}

  bool passed() const { return violations == 0; }
  void fail(nlohmann::ordered_json w);
};

nlohmann::ordered_json to_json(const LemmaReport& report);

// Global min cut equals C(d,k); Stoer-Wagner, confirmed exhaustively when |V| <= 16.
LemmaReport check_min_cut(const CubeParams& params);

// The strictly smallest balanced cuts are exactly the coordinate cuts.
// Records K_emp = max |A xor S| / (eps 2^d) over non-coordinate balanced cuts.
LemmaReport check_sparsest_balanced(const CubeParams& params);

// boundary(T1) xor boundary(T2) == boundary(T1 xor T2); exhaustive when |V| <= 8,
// plus `trials` random pairs.
LemmaReport check_boundary_identity(const CubeParams& params, int trials, std::uint64_t seed);

// Counts alpha-approximate minimum cuts against 2^ceil(2a) C(n, ceil(2a)).
LemmaReport check_cut_counting(const CubeParams& params, const std::vector<double>& alphas);

// L chi_S == lambda_|S| chi_S exactly for every S; eigengap at d and the
// least d from which it holds for all larger d up to 60.
LemmaReport check_spectral(const CubeParams& params);

// Monte Carlo over seeds: sampled coordinate-cut sizes and isolated vertices
// against their exact means, and Chernoff tail bounds.
LemmaReport check_concentration(const CubeParams& params, double p, int trials, std::uint64_t seed);

// |boundary(A) xor boundary(S)| == |boundary(A xor S)| and
// C_emp = max |boundary(A xor S)| / (eps C(d-1,k-1) |A|) over balanced cuts with 0 < eps <= 1.
// Exhaustive when C(|V|, |V|/2) <= 1e7, otherwise `trials` perturbed coordinate cuts.
LemmaReport check_small_cut_bound(const CubeParams& params, int trials, std::uint64_t seed);

// cut_size_via_fourier agrees with the edge count on random subsets.
LemmaReport check_cut_formula(const CubeParams& params, int trials, std::uint64_t seed);

// Symmetry of component-supported spectra, and for the even component the
// R1/R2 identities on random balanced subsets.
LemmaReport check_component_fourier(const CubeParams& params, int trials, std::uint64_t seed);

// ||f||_4 <= 3^(l/2) ||f||_2 for random polynomials of degree l.
LemmaReport check_hypercontractivity(const CubeParams& params, int degree, int trials,
                                     std::uint64_t seed);

struct VerifyOptions {
  int trials = 1000;
  std::uint64_t seed = 0;
  double p = 0.5;
  std::vector<double> alphas{1.0, 1.5, 2.0};
};

// Lemma ids accepted by verify_all, in run order.
const std::vector<std::string>& lemma_ids();

// Runs every check (or only the one named by `only`) whose cap admits
// params. The document lists each report, the skipped checks with reasons,
// and "passed" = no violations anywhere.
nlohmann::ordered_json verify_all(const CubeParams& params, const VerifyOptions& options,
                                  const std::string& only = "all");

}  // namespace cubecut
