#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oltr/harness.hpp"

namespace oltr::cli {

// CSV outputs. Header row first, dot decimal, reals in shortest round-trip
// form, '\n' row terminator. Column reference: docs/csv_schemas.md.

/// summary.csv: one row per run.
///   manifest_id,run,seed,final_regret,target_coverage,min_target_rate,
///   manipulated_rounds,locked_after_attack,rec_1,...,rec_L
void write_summary_csv(std::ostream& out, const std::string& manifest_id, const Summary& summary);

/// regret_curve.csv: manifest_id,round,mean_regret,std_regret
void write_curve_csv(std::ostream& out, const std::string& manifest_id, const Summary& summary);

struct SweepRow {
  std::uint64_t horizon = 0;
  std::uint64_t T1 = 0;
  std::uint64_t T2 = 0;
  std::uint64_t manipulations = 0;
  std::optional<double> mean_final_regret;
  std::optional<double> std_final_regret;
  std::optional<std::size_t> success_runs;
};

/// sweep.csv: manifest_id,horizon,T1,T2,manipulations,mean_final_regret,
///   std_final_regret,success_runs (regret columns empty in schedule-only mode)
void write_sweep_csv(std::ostream& out, const std::string& manifest_id, const std::vector<SweepRow>& rows);

}  // namespace oltr::cli
