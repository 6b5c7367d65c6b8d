#pragma once

// Seeded recovery and concentration experiments.
//
// Trial t at every p uses seed derive_seed(master_seed, t), so each row is
// recomputable from (params, p, seed, solver) alone and the samples for
// different p are coupled (nested edge sets). Trials run on a worker pool of
// CUBECUT_THREADS workers (default: hardware concurrency); results are
// collected by trial index, so output does not depend on the worker count.
//
// recovery.csv       d,k,component,p,trial,seed,objective,max_dist,mean_dist,
//                    matching_ok,exact_recovery,isolated,wall_ms
// concentration.csv  d,k,p,trial,coord_j,coord_b,sampled_cut,theory_mean
//
// Integers are printed exactly and reals with 12 significant digits.
// wall_ms is 0 unless timing is requested, since timings are not reproducible.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecut/bitcube.hpp"
#include "cubecut/recover.hpp"

namespace cubecut {

struct ExperimentSpec {
  CubeParams params;
  std::vector<double> p_grid{1.0};
  int trials = 1;
  std::uint64_t master_seed = 0;
  SolverConfig solver;
  bool timing = false;

  void validate() const;  // trials >= 1, nonempty p_grid within [0, 1]
};

// Worker count from CUBECUT_THREADS (>= 1), else the hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n) on the worker pool; rethrows the first
// exception by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct TrialRecord {
  int trial_index = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
  std::uint64_t objective = 0;
  std::vector<std::uint64_t> distances;  // per cut, in family order
  std::uint64_t max_dist = 0;
  double mean_dist = 0.0;
  bool matching_ok = false;
  bool exact_recovery = false;
  std::uint64_t isolated_vertices = 0;
  double wall_ms = 0.0;
  RecoveryResult result;
};

struct RecoverySummary {
  double p = 0.0;
  int trials = 0;
  double exact_recovery_rate = 0.0;
  double matching_ok_rate = 0.0;
  double mean_max_dist = 0.0;
  std::uint64_t max_dist = 0;
  double mean_dist = 0.0;
  double mean_objective = 0.0;
  double mean_isolated = 0.0;
};

struct RecoveryRun {
  std::vector<TrialRecord> records;  // p-grid order, then trial index
  std::vector<RecoverySummary> summary;
};

TrialRecord run_recovery_trial(const ExperimentSpec& spec, double p, int trial_index);
RecoveryRun run_recovery(const ExperimentSpec& spec);

struct ConcentrationRow {
  double p = 0.0;
  int trial = 0;
  int coord_j = 1;
  int coord_b = 0;
  std::uint64_t sampled_cut = 0;
  double theory_mean = 0.0;
};

struct ConcentrationSummary {
  double p = 0.0;
  int trials = 0;
  double theory_mean = 0.0;
  double theory_sd = 0.0;        // per-sample standard deviation
  double sample_mean = 0.0;      // over every (trial, coordinate cut)
  double sample_sd = 0.0;
  double max_mean_z = 0.0;       // worst per-cut |mean - theory| / standard error
  double isolated_mean = 0.0;
  double isolated_theory = 0.0;
  double isolated_se = 0.0;      // standard error of isolated_mean
};

struct ConcentrationRun {
  std::vector<ConcentrationRow> rows;  // p, trial, coordinate j, orientation b
  std::vector<ConcentrationSummary> summary;
};

ConcentrationRun run_concentration(const ExperimentSpec& spec);

// Real formatting used in every CSV: 12 significant digits.
std::string format_real(double x);

void write_recovery_csv(std::ostream& out, const ExperimentSpec& spec, const RecoveryRun& run);
void write_concentration_csv(std::ostream& out, const ExperimentSpec& spec, const ConcentrationRun& run);

nlohmann::ordered_json to_json(const RecoveryResult& result);
nlohmann::ordered_json recovery_json(const ExperimentSpec& spec, const RecoveryRun& run);
nlohmann::ordered_json concentration_json(const ExperimentSpec& spec, const ConcentrationRun& run);

}  // namespace cubecut
