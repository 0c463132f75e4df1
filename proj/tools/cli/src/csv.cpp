#include "oltr/cli/csv.hpp"

#include <ostream>

#include "oltr/event_log.hpp"

namespace oltr::cli {

void write_summary_csv(std::ostream& out, const std::string& manifest_id, const Summary& summary) {
  const std::size_t L = summary.mean_rec_counts.size();
  out << "manifest_id,run,seed,final_regret,target_coverage,min_target_rate,manipulated_rounds,locked_after_attack";
  for (std::size_t a = 1; a <= L; ++a) out << ",rec_" << a;
  out << '\n';
  for (const auto& r : summary.runs) {
    out << manifest_id << ',' << r.run_index << ',' << r.seed << ',' << format_exact(r.final_regret) << ','
        << format_exact(r.target_coverage) << ',' << format_exact(r.min_target_rate) << ',' << r.manipulated_rounds
        << ',' << (r.locked_after_attack ? 1 : 0);
    for (auto count : r.rec_counts) out << ',' << count;
    out << '\n';
  }
}

void write_curve_csv(std::ostream& out, const std::string& manifest_id, const Summary& summary) {
  out << "manifest_id,round,mean_regret,std_regret\n";
  for (std::size_t g = 0; g < summary.curve_rounds.size(); ++g) {
    out << manifest_id << ',' << summary.curve_rounds[g] << ',' << format_exact(summary.mean_curve[g]) << ','
        << format_exact(summary.std_curve[g]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::string& manifest_id, const std::vector<SweepRow>& rows) {
  out << "manifest_id,horizon,T1,T2,manipulations,mean_final_regret,std_final_regret,success_runs\n";
  for (const auto& r : rows) {
    out << manifest_id << ',' << r.horizon << ',' << r.T1 << ',' << r.T2 << ',' << r.manipulations << ',';
    if (r.mean_final_regret) out << format_exact(*r.mean_final_regret);
    out << ',';
    if (r.std_final_regret) out << format_exact(*r.std_final_regret);
    out << ',';
    if (r.success_runs) out << *r.success_runs;
    out << '\n';
  }
}

}  // namespace oltr::cli
