#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oltr/harness.hpp"

namespace oltr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "OLTR_OUTPUT_DIR";

/// Output directory: explicit flag, else $OLTR_OUTPUT_DIR, else ./out.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& flag);

struct ParamsOptions {
  std::string model = "cascade";
  double alpha = 1.5;
  std::uint64_t T = 500000;
  std::size_t K = 3;
  std::size_t L = 10;
  std::optional<double> w_m;
  std::optional<double> epsilon;  // cascade, with w_min
  std::optional<double> w_min;
  std::vector<double> bias;
  bool json = false;
};

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> output_dir;
  nlohmann::json overrides = nlohmann::json::object();
  unsigned workers = 0;
  bool event_log = false;   // write the first run's per-round log
  bool dump_state = false;  // include per-item ranker state rows
};

struct SweepOptions {
  std::filesystem::path config;
  std::vector<std::uint64_t> horizons;
  std::optional<std::filesystem::path> output_dir;
  nlohmann::json overrides = nlohmann::json::object();
  unsigned workers = 0;
  bool schedule_only = false;  // skip simulation; report phase lengths only
};

struct IngestOptions {
  std::optional<std::filesystem::path> input;
  std::string format = "tsv";
  std::optional<std::string> builtin;
  std::filesystem::path output;
  std::size_t L = 10;
  std::string mode = "given-ids";
  std::vector<std::uint64_t> ids;
  std::uint64_t seed = 0;
  double threshold = 3.0;
  std::size_t min_count = 20;
};

// Each command prints to `out`, reports errors on `err` and returns an exit
// code: 0 success, 1 validation, 2 I/O.

int cmd_params(const ParamsOptions& options, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err);

/// Schedule record for a resolved attack (empty object when none).
nlohmann::json schedule_to_json(const AttackPlan& plan);

/// Deterministic manifest id: FNV-1a 64 of the command name and resolved config.
std::string manifest_id(const std::string& command, const nlohmann::json& resolved);

}  // namespace oltr::cli
