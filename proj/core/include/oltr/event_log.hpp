#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oltr/harness.hpp"

namespace oltr {

/// Per-round CSV event log.
///
///   kind,t,list,manipulated,exam,clicks,regret,item,count,clicks_total,exam_estimate,mean,ucb
///
/// `round` rows fill t..regret; multi-valued fields are space-separated in
/// position order. With state dumps enabled each round is followed by one
/// `state` row per item, taken after the update (item..ucb; ucb uses ln of
/// the next round). Reals use the shortest round-trip representation, so
/// the regret column sums back to the run's final regret exactly.
class EventLogWriter final : public RoundObserver {
 public:
  explicit EventLogWriter(std::ostream& out, bool dump_state = false);

  void after_round(const RoundEvent& event, const Ranker& ranker) override;

  static const char* header() noexcept;

 private:
  std::ostream& out_;
  bool dump_state_;
};

struct LoggedRound {
  std::uint64_t t = 0;
  std::vector<std::uint32_t> list;
  bool manipulated = false;
  double regret = 0;
};

/// Reads back the `round` rows of an event log.
std::vector<LoggedRound> read_event_log(std::istream& in);

/// Shortest decimal string that parses back to the same double; dot decimal.
std::string format_exact(double value);

}  // namespace oltr
