#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oltr/cli/commands.hpp"

namespace {

using nlohmann::json;

/// Flags that override keys of the experiment config file.
struct OverrideFlags {
  std::optional<std::string> model, attack, profile, ranker;
  std::optional<std::size_t> K, runs, curve_points;
  std::optional<std::uint64_t> T, seed, atq_budget;
  std::optional<double> alpha, w_m, epsilon;
  std::vector<std::uint32_t> targets;
  std::vector<double> position_bias;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "cascade | pbm");
    app->add_option("--ranker", ranker, "cascade-ucb1 | pbm-ucb");
    app->add_option("--attack", attack, "none | cascade-ofa | pbm-ofa | cascade-atq | pbm-atq");
    app->add_option("--profile", profile, "built-in profile name");
    app->add_option("--K", K, "list length");
    app->add_option("--T", T, "horizon");
    app->add_option("--alpha", alpha, "exploration parameter (> 1)");
    app->add_option("--runs", runs, "replications");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--w-m", w_m, "attack parameter w_m");
    app->add_option("--epsilon", epsilon, "derive w_m from epsilon (cascade)");
    app->add_option("--atq-budget", atq_budget, "ATQ budget C");
    app->add_option("--targets", targets, "target items, in target-list order");
    app->add_option("--position-bias", position_bias, "PBM position bias p_1..p_K");
    app->add_option("--curve-points", curve_points, "regret grid size");
  }

  json to_json() const {
    json o = json::object();
    if (model) o["model"] = *model;
    if (ranker) o["ranker"] = *ranker;
    if (attack) o["attack"] = *attack;
    if (profile) o["profile"] = *profile;
    if (K) o["K"] = *K;
    if (T) o["T"] = *T;
    if (alpha) o["alpha"] = *alpha;
    if (runs) o["runs"] = *runs;
    if (seed) o["master_seed"] = *seed;
    if (w_m) o["w_m"] = *w_m;
    if (epsilon) o["epsilon"] = *epsilon;
    if (atq_budget) o["atq_budget"] = *atq_budget;
    if (!targets.empty()) o["targets"] = targets;
    if (!position_bias.empty()) o["position_bias"] = position_bias;
    if (curve_points) o["curve_points"] = *curve_points;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  using namespace oltr::cli;

  CLI::App app{"Observation-free attacks on online learning to rank: phase lengths, simulations, sweeps"};
  app.require_subcommand(1);

  ParamsOptions params;
  auto* params_cmd = app.add_subcommand("params", "Print attack phase lengths and derived constants");
  params_cmd->add_option("--model", params.model, "cascade | pbm")->capture_default_str();
  params_cmd->add_option("--alpha", params.alpha)->capture_default_str();
  params_cmd->add_option("--T", params.T)->capture_default_str();
  params_cmd->add_option("--K", params.K)->capture_default_str();
  params_cmd->add_option("--L", params.L)->capture_default_str();
  params_cmd->add_option("--w-m", params.w_m, "attack parameter w_m");
  params_cmd->add_option("--epsilon", params.epsilon, "cascade: w_m = (1-eps) min(1/K, w_min)");
  params_cmd->add_option("--w-min", params.w_min, "smallest target attraction (with --epsilon)");
  params_cmd->add_option("--bias", params.bias, "PBM position bias p_1..p_K");
  params_cmd->add_flag("--json", params.json, "emit JSON instead of key=value lines");

  RunOptions run;
  OverrideFlags run_overrides;
  std::optional<std::string> run_out;
  auto* run_cmd = app.add_subcommand("run", "Run replicated experiments from a config file");
  run_cmd->add_option("config", run.config, "experiment config (JSON)")->required();
  run_cmd->add_option("-o,--output-dir", run_out, "output directory (default $OLTR_OUTPUT_DIR or ./out)");
  run_cmd->add_option("--workers", run.workers, "worker threads; 0 = all cores, 1 = single-threaded reference");
  run_cmd->add_flag("--event-log", run.event_log, "write the per-round event log of run 0");
  run_cmd->add_flag("--dump-state", run.dump_state, "add per-item ranker state rows to the event log");
  run_overrides.attach(run_cmd);

  SweepOptions sweep;
  OverrideFlags sweep_overrides;
  std::optional<std::string> sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Repeat an experiment over several horizons");
  sweep_cmd->add_option("config", sweep.config, "experiment config (JSON)")->required();
  sweep_cmd->add_option("--horizons", sweep.horizons, "horizons T")->required()->expected(0, -1);
  sweep_cmd->add_option("-o,--output-dir", sweep_out, "output directory");
  sweep_cmd->add_option("--workers", sweep.workers, "worker threads");
  sweep_cmd->add_flag("--schedule-only", sweep.schedule_only, "report phase lengths without simulating");
  sweep_overrides.attach(sweep_cmd);

  IngestOptions ingest;
  std::optional<std::string> ingest_input;
  std::string ingest_output;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build an attraction profile from MovieLens ratings");
  ingest_cmd->add_option("-i,--input", ingest_input, "ratings file");
  ingest_cmd->add_option("--format", ingest.format, "tsv | csv")->capture_default_str();
  ingest_cmd->add_option("--builtin", ingest.builtin, "write a built-in profile instead (movielens10)");
  ingest_cmd->add_option("-o,--output", ingest_output, "profile file to write")->required();
  ingest_cmd->add_option("--L", ingest.L, "number of items")->capture_default_str();
  ingest_cmd->add_option("--mode", ingest.mode, "given-ids | top-variance | seeded-arbitrary")->capture_default_str();
  ingest_cmd->add_option("--ids", ingest.ids, "movie ids for given-ids");
  ingest_cmd->add_option("--seed", ingest.seed, "seed for seeded-arbitrary");
  ingest_cmd->add_option("--threshold", ingest.threshold, "success when rating > threshold")->capture_default_str();
  ingest_cmd->add_option("--min-count", ingest.min_count, "minimum ratings per movie")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*params_cmd) return cmd_params(params, std::cout, std::cerr);
  if (*run_cmd) {
    run.overrides = run_overrides.to_json();
    if (run_out) run.output_dir = *run_out;
    return cmd_run(run, std::cout, std::cerr);
  }
  if (*sweep_cmd) {
    sweep.overrides = sweep_overrides.to_json();
    if (sweep_out) sweep.output_dir = *sweep_out;
    return cmd_sweep(sweep, std::cout, std::cerr);
  }
  if (*ingest_cmd) {
    if (ingest_input) ingest.input = *ingest_input;
    ingest.output = ingest_output;
    return cmd_ingest(ingest, std::cout, std::cerr);
  }
  return kExitValidation;
}
