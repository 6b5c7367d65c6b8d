#include "cubecut/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "cubecut/sample.hpp"

namespace cubecut {

using nlohmann::ordered_json;

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (p_grid.empty()) throw std::invalid_argument("p grid is empty");
  for (double p : p_grid) SampleParams{p, 0}.validate();
}

int worker_count() {
  if (const char* env = std::getenv("CUBECUT_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
      throw std::invalid_argument(std::string("CUBECUT_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(std::min<long>(n, 1024));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TrialRecord run_recovery_trial(const ExperimentSpec& spec, double p, int trial_index) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(trial_index));
  rec.p = p;
  const SampledGraph g = subsample(spec.params, SampleParams{p, rec.seed});
  rec.result = solve(g, spec.solver);
  rec.objective = rec.result.objective;
  for (const CutMatch& m : rec.result.matching.per_cut) rec.distances.push_back(m.distance);
  rec.max_dist = rec.result.matching.max_distance;
  rec.mean_dist = rec.result.matching.mean_distance;
  rec.matching_ok = rec.result.matching.matching_ok;
  rec.exact_recovery = rec.result.exact_recovery();
  rec.isolated_vertices = isolated_vertex_count(g);
  if (spec.timing) {
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

RecoveryRun run_recovery(const ExperimentSpec& spec) {
  spec.validate();
  const auto trials = static_cast<std::size_t>(spec.trials);
  RecoveryRun run;
  run.records.resize(spec.p_grid.size() * trials);
  parallel_for(run.records.size(), [&](std::size_t i) {
    run.records[i] = run_recovery_trial(spec, spec.p_grid[i / trials], static_cast<int>(i % trials));
  });
  for (std::size_t pi = 0; pi < spec.p_grid.size(); ++pi) {
    RecoverySummary s;
    s.p = spec.p_grid[pi];
    s.trials = spec.trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialRecord& r = run.records[pi * trials + t];
      s.exact_recovery_rate += r.exact_recovery ? 1.0 : 0.0;
      s.matching_ok_rate += r.matching_ok ? 1.0 : 0.0;
      s.mean_max_dist += static_cast<double>(r.max_dist);
      s.max_dist = std::max(s.max_dist, r.max_dist);
      s.mean_dist += r.mean_dist;
      s.mean_objective += static_cast<double>(r.objective);
      s.mean_isolated += static_cast<double>(r.isolated_vertices);
    }
    const auto T = static_cast<double>(trials);
    s.exact_recovery_rate /= T;
    s.matching_ok_rate /= T;
    s.mean_max_dist /= T;
    s.mean_dist /= T;
    s.mean_objective /= T;
    s.mean_isolated /= T;
    run.summary.push_back(s);
  }
  return run;
}

ConcentrationRun run_concentration(const ExperimentSpec& spec) {
  spec.validate();
  const CubeParams& params = spec.params;
  require_materializable(params, "run_concentration");
  const int d = params.d();
  const auto trials = static_cast<std::size_t>(spec.trials);
  const std::size_t tasks = spec.p_grid.size() * trials;

  struct TrialCounts {
    std::vector<std::uint64_t> per_coordinate;
    std::uint64_t isolated = 0;
  };
  std::vector<TrialCounts> counts(tasks);
  parallel_for(tasks, [&](std::size_t i) {
    const double p = spec.p_grid[i / trials];
    const std::uint64_t seed = derive_seed(spec.master_seed, i % trials);
    const SampledGraph g = subsample(params, SampleParams{p, seed});
    TrialCounts c;
    c.per_coordinate.assign(static_cast<std::size_t>(d), 0);
    for_each_edge(params, [&](const Edge& e, std::uint64_t idx) {
      if (!g.retained().contains(idx)) return;
      for (std::uint32_t diff = e.u ^ e.v; diff != 0; diff &= diff - 1) {
        ++c.per_coordinate[static_cast<std::size_t>(std::countr_zero(diff))];
      }
    });
    c.isolated = isolated_vertex_count(g);
    counts[i] = std::move(c);
  });

  const auto n = static_cast<double>(params.vertex_count());
  const double m = static_cast<double>(params.coordinate_crossing_degree()) * n / 2.0;
  const auto D = static_cast<double>(params.degree());
  const auto T = static_cast<double>(trials);
  ConcentrationRun run;
  for (std::size_t pi = 0; pi < spec.p_grid.size(); ++pi) {
    const double p = spec.p_grid[pi];
    ConcentrationSummary s;
    s.p = p;
    s.trials = spec.trials;
    s.theory_mean = p * m;
    s.theory_sd = std::sqrt(m * p * (1.0 - p));
    std::vector<double> per_cut_sum(static_cast<std::size_t>(d), 0.0);
    double sum = 0.0;
    double sum_sq = 0.0;
    double iso = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialCounts& c = counts[pi * trials + t];
      for (int j = 1; j <= d; ++j) {
        const std::uint64_t x = c.per_coordinate[static_cast<std::size_t>(j - 1)];
        per_cut_sum[static_cast<std::size_t>(j - 1)] += static_cast<double>(x);
        for (int b = 0; b <= 1; ++b) {
          // S_{j,0} and S_{j,1} are complements within the component.
          run.rows.push_back(ConcentrationRow{p, static_cast<int>(t), j, b, x, s.theory_mean});
          sum += static_cast<double>(x);
          sum_sq += static_cast<double>(x) * static_cast<double>(x);
        }
      }
      iso += static_cast<double>(c.isolated);
    }
    const double samples = T * 2.0 * d;
    s.sample_mean = sum / samples;
    s.sample_sd = samples > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / samples) / (samples - 1))) : 0.0;
    const double se = s.theory_sd / std::sqrt(T);
    for (double cut_sum : per_cut_sum) {
      if (se > 0.0) s.max_mean_z = std::max(s.max_mean_z, std::abs(cut_sum / T - s.theory_mean) / se);
    }
    const double q = std::pow(1.0 - p, D);
    const double var = n * q * (1.0 - q) + n * D * (std::pow(1.0 - p, 2.0 * D - 1.0) - std::pow(1.0 - p, 2.0 * D));
    s.isolated_mean = iso / T;
    s.isolated_theory = n * q;
    s.isolated_se = std::sqrt(std::max(0.0, var) / T);
    run.summary.push_back(s);
  }
  return run;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_recovery_csv(std::ostream& out, const ExperimentSpec& spec, const RecoveryRun& run) {
  const CubeParams& params = spec.params;
  out << "d,k,component,p,trial,seed,objective,max_dist,mean_dist,matching_ok,exact_recovery,isolated,wall_ms\n";
  for (const TrialRecord& r : run.records) {
    out << params.d() << ',' << params.k() << ',' << to_string(params.component()) << ','
        << format_real(r.p) << ',' << r.trial_index << ',' << r.seed << ',' << r.objective << ','
        << r.max_dist << ',' << format_real(r.mean_dist) << ',' << (r.matching_ok ? "true" : "false")
        << ',' << (r.exact_recovery ? "true" : "false") << ',' << r.isolated_vertices << ','
        << format_real(r.wall_ms) << '\n';
  }
}

void write_concentration_csv(std::ostream& out, const ExperimentSpec& spec, const ConcentrationRun& run) {
  out << "d,k,p,trial,coord_j,coord_b,sampled_cut,theory_mean\n";
  for (const ConcentrationRow& r : run.rows) {
    out << spec.params.d() << ',' << spec.params.k() << ',' << format_real(r.p) << ',' << r.trial << ','
        << r.coord_j << ',' << r.coord_b << ',' << r.sampled_cut << ',' << format_real(r.theory_mean) << '\n';
  }
}

namespace {

ordered_json params_json(const CubeParams& params) {
  return {{"d", params.d()}, {"k", params.k()}, {"component", std::string(to_string(params.component()))}};
}

ordered_json spec_json(const ExperimentSpec& spec) {
  ordered_json j = params_json(spec.params);
  j["p_grid"] = spec.p_grid;
  j["trials"] = spec.trials;
  j["master_seed"] = spec.master_seed;
  return j;
}

ordered_json config_json(const SolverConfig& c) {
  return {{"strategy", std::string(to_string(c.strategy))},
          {"tie_break", "canonical_lex"},
          {"restarts", c.local_search.restarts},
          {"max_passes", c.local_search.max_passes}};
}

}  // namespace

ordered_json to_json(const RecoveryResult& result) {
  ordered_json family = ordered_json::array();
  for (const VertexSet& cut : result.family.cuts) family.push_back(cut.to_vector());
  ordered_json per_cut = ordered_json::array();
  for (const CutMatch& m : result.matching.per_cut) {
    per_cut.push_back({{"coord_j", m.nearest.j}, {"coord_b", m.nearest.b}, {"distance", m.distance}});
  }
  ordered_json j;
  j["family"] = family;
  j["objective"] = result.objective;
  j["per_cut"] = per_cut;
  j["matching_ok"] = result.matching.matching_ok;
  j["max_distance"] = result.matching.max_distance;
  j["mean_distance"] = result.matching.mean_distance;
  j["exact_recovery"] = result.exact_recovery();
  j["config"] = config_json(result.config);
  j["sample"] = {{"p", result.sample.p}, {"seed", result.sample.seed}};
  return j;
}

ordered_json recovery_json(const ExperimentSpec& spec, const RecoveryRun& run) {
  ordered_json doc = spec_json(spec);
  doc["solver"] = config_json(spec.solver);
  ordered_json summary = ordered_json::array();
  for (const RecoverySummary& s : run.summary) {
    summary.push_back({{"p", s.p},
                       {"trials", s.trials},
                       {"exact_recovery_rate", s.exact_recovery_rate},
                       {"matching_ok_rate", s.matching_ok_rate},
                       {"mean_max_dist", s.mean_max_dist},
                       {"max_dist", s.max_dist},
                       {"mean_dist", s.mean_dist},
                       {"mean_objective", s.mean_objective},
                       {"mean_isolated", s.mean_isolated}});
  }
  doc["summary"] = summary;
  ordered_json records = ordered_json::array();
  for (const TrialRecord& r : run.records) {
    ordered_json rec = to_json(r.result);
    rec["trial"] = r.trial_index;
    rec["isolated"] = r.isolated_vertices;
    rec["wall_ms"] = r.wall_ms;
    records.push_back(rec);
  }
  doc["records"] = records;
  return doc;
}

ordered_json concentration_json(const ExperimentSpec& spec, const ConcentrationRun& run) {
  ordered_json doc = spec_json(spec);
  ordered_json summary = ordered_json::array();
  for (const ConcentrationSummary& s : run.summary) {
    summary.push_back({{"p", s.p},
                       {"trials", s.trials},
                       {"theory_mean", s.theory_mean},
                       {"theory_sd", s.theory_sd},
                       {"sample_mean", s.sample_mean},
                       {"sample_sd", s.sample_sd},
                       {"max_mean_z", s.max_mean_z},
                       {"isolated_mean", s.isolated_mean},
                       {"isolated_theory", s.isolated_theory},
                       {"isolated_se", s.isolated_se}});
  }
  doc["summary"] = summary;
  return doc;
}

}  // namespace cubecut
