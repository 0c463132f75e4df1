#include "oltr/event_log.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace oltr {
namespace {

template <typename T>
std::string join_flags(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(static_cast<unsigned>(values[i]));
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_exact(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

EventLogWriter::EventLogWriter(std::ostream& out, bool dump_state) : out_(out), dump_state_(dump_state) {
  out_ << header() << '\n';
}

const char* EventLogWriter::header() noexcept {
  return "kind,t,list,manipulated,exam,clicks,regret,item,count,clicks_total,exam_estimate,mean,ucb";
}

void EventLogWriter::after_round(const RoundEvent& event, const Ranker& ranker) {
  out_ << "round," << event.t << ',' << event.list.to_string() << ',' << (event.feedback.manipulated ? 1 : 0) << ','
       << join_flags(event.feedback.exam) << ',' << join_flags(event.feedback.clicks) << ','
       << format_exact(event.regret) << ",,,,,,\n";
  if (!dump_state_) return;
  for (std::size_t i = 0; i < ranker.num_items(); ++i) {
    const ItemState s = ranker.state(item_at_index(i));
    out_ << "state," << event.t << ",,,,,," << id_value(s.item) << ',' << s.count << ',' << s.clicks << ','
         << format_exact(s.exam_estimate) << ',' << format_exact(s.mean) << ',' << format_exact(s.ucb) << '\n';
  }
}

std::vector<LoggedRound> read_event_log(std::istream& in) {
  std::vector<LoggedRound> rounds;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty event log");
  if (line != EventLogWriter::header()) throw ValidationError("unexpected event log header");
  while (std::getline(in, line)) {
    if (line.rfind("round,", 0) != 0) continue;
    const auto f = split(line, ',');
    if (f.size() < 7) throw ValidationError("truncated event log row");
    LoggedRound r;
    r.t = std::stoull(f[1]);
    std::istringstream ids(f[2]);
    for (std::uint32_t id; ids >> id;) r.list.push_back(id);
    r.manipulated = f[3] == "1";
    const auto& regret = f[6];
    if (std::from_chars(regret.data(), regret.data() + regret.size(), r.regret).ec != std::errc{}) {
      throw ValidationError("bad regret value in event log: " + regret);
    }
    rounds.push_back(std::move(r));
  }
  return rounds;
}

}  // namespace oltr
