#include "cubecut/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cubecut/bitcube.hpp"
#include "cubecut/experiment.hpp"
#include "cubecut/fourier.hpp"
#include "cubecut/recover.hpp"
#include "cubecut/sample.hpp"
#include "cubecut/verify.hpp"

namespace cubecut {

namespace {

struct CubeArgs {
  int d = 0;
  int k = 1;
  std::string component;  // empty: full for odd k, even for even k

  CubeParams params() const {
    if (component.empty()) return CubeParams(d, k, k % 2 == 1 ? Component::Full : Component::Even);
    return CubeParams(d, k, parse_component(component));
  }
};

void add_cube_options(CLI::App* cmd, CubeArgs& args) {
  cmd->add_option("--d", args.d, "dimension")->required();
  cmd->add_option("--k", args.k, "adjacency Hamming distance")->capture_default_str();
  cmd->add_option("--component", args.component, "full | even | odd (default: full for odd k, even for even k)")
      ->check(CLI::IsMember({"full", "even", "odd"}));
}

struct Output {
  std::string format;
  std::string path;
};

void add_output_options(CLI::App* cmd, Output& out, std::vector<std::string> formats) {
  out.format = formats.front();
  cmd->add_option("--format", out.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
  cmd->add_option("--out", out.path, "output file (default: stdout)");
}

void emit(const Output& where, const std::string& text, std::ostream& out) {
  if (where.path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(where.path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open '" + where.path + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("write to '" + where.path + "' failed");
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

struct PArgs {
  std::optional<double> p;
  std::vector<double> grid;

  std::vector<double> values(double fallback) const {
    if (!grid.empty()) return grid;
    return {p.value_or(fallback)};
  }
};

void add_p_options(CLI::App* cmd, PArgs& args) {
  auto* single = cmd->add_option("--p", args.p, "retention probability");
  cmd->add_option("--p-grid", args.grid, "comma-separated retention probabilities")->delimiter(',')->excludes(single);
}

std::string enumerate_text(const CubeParams& params, const SampleParams& sample, const std::string& format) {
  const SampledGraph g = subsample(params, sample);
  const SmallGraph full = small_graph(params);
  const SmallGraph sampled = small_graph(g);
  std::ostringstream csv;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  csv << "index,vertices,cut_size,sampled_cut,epsilon,nearest_j,nearest_b,distance\n";
  const double coordinate_size =
      static_cast<double>(params.coordinate_crossing_degree()) * static_cast<double>(params.vertex_count() / 2);
  std::uint64_t index = 0;
  for_each_canonical_balanced(full.size(), [&](std::uint64_t mask) {
    const VertexSet a = from_local(params, full, mask);
    const NearestCoordinate near = nearest_coordinate_cut(a);
    const std::uint64_t size = full.cut(mask);
    const std::uint64_t sampled_size = sampled.cut(mask);
    const double eps = static_cast<double>(size) / coordinate_size - 1.0;
    const std::vector<Vertex> verts = a.to_vector();
    if (format == "csv") {
      csv << index << ',';
      for (std::size_t i = 0; i < verts.size(); ++i) csv << (i ? " " : "") << verts[i];
      csv << ',' << size << ',' << sampled_size << ',' << format_real(eps) << ',' << near.cut.j << ','
          << near.cut.b << ',' << near.distance << '\n';
    } else {
      rows.push_back({{"index", index}, {"vertices", verts}, {"cut_size", size}, {"sampled_cut", sampled_size},
                      {"epsilon", eps}, {"nearest_j", near.cut.j}, {"nearest_b", near.cut.b},
                      {"distance", near.distance}});
    }
    ++index;
  });
  if (format == "csv") return csv.str();
  nlohmann::ordered_json doc{{"d", params.d()},
                             {"k", params.k()},
                             {"component", std::string(to_string(params.component()))},
                             {"p", sample.p},
                             {"seed", sample.seed},
                             {"cuts", rows}};
  return dump(doc);
}

// Balanced cuts listed by `enumerate`.
constexpr std::uint64_t kEnumerateMaxCuts = 12870;

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planted coordinate-cut recovery on subsampled hypercubes", "cubecut"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the lemma oracles and print a JSON report");
  CubeArgs verify_cube;
  VerifyOptions verify_opts;
  std::string lemma = "all";
  Output verify_out;
  add_cube_options(verify, verify_cube);
  verify->add_option("lemma", lemma, "lemma id or 'all'")->capture_default_str();
  verify->add_option("--trials", verify_opts.trials, "random trials per Monte Carlo check")->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "master seed")->capture_default_str();
  verify->add_option("--p", verify_opts.p, "retention probability for the concentration check")
      ->capture_default_str();
  verify->add_option("--alpha", verify_opts.alphas, "alpha grid for cut counting")->delimiter(',');
  add_output_options(verify, verify_out, {"json"});

  // recover
  auto* recover = app.add_subcommand("recover", "subsample, solve and match; one row per trial");
  CubeArgs recover_cube;
  PArgs recover_p;
  int recover_trials = 1;
  std::uint64_t recover_seed = 0;
  std::string solver = "bb";
  SolverConfig solver_config;
  bool timing = false;
  Output recover_out;
  add_cube_options(recover, recover_cube);
  add_p_options(recover, recover_p);
  recover->add_option("--trials", recover_trials, "trials per p")->capture_default_str();
  recover->add_option("--seed", recover_seed, "master seed")->capture_default_str();
  recover->add_option("--solver", solver, "exhaustive | bb | local")
      ->check(CLI::IsMember({"exhaustive", "bb", "local"}))
      ->capture_default_str();
  recover->add_option("--restarts", solver_config.local_search.restarts, "local search restarts")
      ->capture_default_str();
  recover->add_option("--max-passes", solver_config.local_search.max_passes, "local search pass limit")
      ->capture_default_str();
  recover->add_flag("--timing", timing, "fill wall_ms (output is then not reproducible)");
  add_output_options(recover, recover_out, {"csv", "json"});

  // concentrate
  auto* concentrate = app.add_subcommand("concentrate", "sampled coordinate-cut sizes per trial");
  CubeArgs conc_cube;
  PArgs conc_p;
  int conc_trials = 1;
  std::uint64_t conc_seed = 0;
  Output conc_out;
  add_cube_options(concentrate, conc_cube);
  add_p_options(concentrate, conc_p);
  concentrate->add_option("--trials", conc_trials, "trials per p")->capture_default_str();
  concentrate->add_option("--seed", conc_seed, "master seed")->capture_default_str();
  add_output_options(concentrate, conc_out, {"csv", "json"});

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues by level");
  int spec_d = 0;
  int spec_k = 1;
  Output spec_out;
  spectrum->add_option("--d", spec_d, "dimension (<= 64)")->required();
  spectrum->add_option("--k", spec_k, "adjacency Hamming distance")->capture_default_str();
  add_output_options(spectrum, spec_out, {"csv", "json"});

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "every balanced cut with its size and nearest coordinate cut");
  CubeArgs enum_cube;
  double enum_p = 1.0;
  std::uint64_t enum_seed = 0;
  Output enum_out;
  add_cube_options(enumerate, enum_cube);
  enumerate->add_option("--p", enum_p, "retention probability for the sampled_cut column")->capture_default_str();
  enumerate->add_option("--seed", enum_seed, "sample seed")->capture_default_str();
  add_output_options(enumerate, enum_out, {"csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const nlohmann::ordered_json doc = verify_all(verify_cube.params(), verify_opts, lemma);
      emit(verify_out, dump(doc), out);
      return doc["passed"].get<bool>() ? kExitOk : kExitCheckFailed;
    }
    if (recover->parsed()) {
      solver_config.strategy = parse_strategy(solver);
      ExperimentSpec spec{recover_cube.params(), recover_p.values(1.0), recover_trials, recover_seed,
                          solver_config, timing};
      const RecoveryRun run = run_recovery(spec);
      if (recover_out.format == "csv") {
        std::ostringstream s;
        write_recovery_csv(s, spec, run);
        emit(recover_out, s.str(), out);
      } else {
        emit(recover_out, dump(recovery_json(spec, run)), out);
      }
      return kExitOk;
    }
    if (concentrate->parsed()) {
      ExperimentSpec spec{conc_cube.params(), conc_p.values(0.5), conc_trials, conc_seed, {}, false};
      const ConcentrationRun run = run_concentration(spec);
      if (conc_out.format == "csv") {
        std::ostringstream s;
        write_concentration_csv(s, spec, run);
        emit(conc_out, s.str(), out);
      } else {
        emit(conc_out, dump(concentration_json(spec, run)), out);
      }
      return kExitOk;
    }
    if (spectrum->parsed()) {
      const EigenvalueTable t = laplacian_eigenvalues(spec_d, spec_k);
      if (spec_out.format == "csv") {
        std::ostringstream s;
        s << "s,lambda,mu\n";
        for (std::size_t i = 0; i < t.lambda.size(); ++i) s << i << ',' << t.lambda[i] << ',' << t.mu[i] << '\n';
        emit(spec_out, s.str(), out);
      } else {
        emit(spec_out, dump({{"d", t.d}, {"k", t.k}, {"lambda", t.lambda}, {"mu", t.mu}}), out);
      }
      return kExitOk;
    }
    if (enumerate->parsed()) {
      const CubeParams params = enum_cube.params();
      const std::uint64_t n = params.vertex_count();
      if (n > 64 || binomial(static_cast<int>(n), static_cast<int>(n / 2)) > 2 * kEnumerateMaxCuts) {
        throw ScaleError("enumerate: more than " + std::to_string(kEnumerateMaxCuts) + " balanced cuts");
      }
      emit(enum_out, enumerate_text(params, SampleParams{enum_p, enum_seed}, enum_out.format), out);
      return kExitOk;
    }
  } catch (const ScaleError& e) {
    err << "cubecut: scale limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "cubecut: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "cubecut: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace cubecut
