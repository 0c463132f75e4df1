#include "oltr/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "oltr/event_log.hpp"
#include "oltr/rng.hpp"

namespace oltr {
namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_row(std::string_view line, char sep, Rating& out) {
  const auto f = split_fields(line, sep);
  if (f.size() != 4) return false;
  if (!parse_number(f[0], out.user) || !parse_number(f[1], out.movie) || !parse_number(f[2], out.rating) ||
      !parse_number(f[3], out.timestamp)) {
    return false;
  }
  return out.rating >= kMinRating && out.rating <= kMaxRating;
}

}  // namespace

RatingsFormat parse_ratings_format(std::string_view tag) {
  if (tag == "tsv" || tag == "legacy") return RatingsFormat::LegacyTsv;
  if (tag == "csv") return RatingsFormat::HeaderedCsv;
  throw ValidationError("unknown ratings format '" + std::string(tag) + "' (expected tsv or csv)");
}

RatingsTable parse_movielens(std::istream& in, RatingsFormat format) {
  RatingsTable table;
  const char sep = format == RatingsFormat::LegacyTsv ? '\t' : ',';
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (first && format == RatingsFormat::HeaderedCsv) {
      first = false;
      if (view.rfind("userId", 0) == 0) continue;
    }
    first = false;
    Rating r;
    if (parse_row(view, sep, r)) {
      table.records.push_back(r);
    } else {
      ++table.skipped;
    }
  }
  if (table.records.empty()) throw ValidationError("zero valid rows in ratings input");
  return table;
}

RatingsTable parse_movielens(const std::filesystem::path& path, RatingsFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read ratings file " + path.string());
  return parse_movielens(in, format);
}

std::map<std::uint64_t, MovieAttraction> attraction_probs(const RatingsTable& table, double threshold,
                                                          std::size_t min_count) {
  if (!(threshold >= kMinRating && threshold <= kMaxRating)) {
    throw ValidationError("threshold outside the rating scale");
  }
  std::map<std::uint64_t, MovieAttraction> all;
  for (const auto& r : table.records) {
    auto& m = all[r.movie];
    ++m.total;
    if (r.rating > threshold) ++m.successes;
  }
  std::erase_if(all, [&](const auto& kv) { return kv.second.total < min_count; });
  return all;
}

SelectionMode parse_selection_mode(std::string_view tag) {
  if (tag == "given-ids") return SelectionMode::GivenIds;
  if (tag == "top-variance") return SelectionMode::TopVariance;
  if (tag == "seeded-arbitrary") return SelectionMode::SeededArbitrary;
  throw ValidationError("unknown selection mode '" + std::string(tag) + "'");
}

SelectedProfile select_profile(const std::map<std::uint64_t, MovieAttraction>& probs, std::size_t L,
                               SelectionMode mode, std::uint64_t seed, std::span<const std::uint64_t> given_ids) {
  if (L == 0) throw ValidationError("L must be at least 1");
  if (probs.size() < L) {
    throw ValidationError("too few movies: " + std::to_string(probs.size()) + " eligible, L=" + std::to_string(L));
  }
  std::vector<std::uint64_t> chosen;
  switch (mode) {
    case SelectionMode::GivenIds: {
      if (given_ids.size() != L) throw ValidationError("given-ids selection needs exactly L movie ids");
      for (auto id : given_ids) {
        if (!probs.contains(id)) throw ValidationError("movie " + std::to_string(id) + " is not eligible");
        if (std::find(chosen.begin(), chosen.end(), id) != chosen.end()) {
          throw ValidationError("duplicate movie id " + std::to_string(id));
        }
        chosen.push_back(id);
      }
      break;
    }
    case SelectionMode::TopVariance: {
      std::vector<std::pair<std::uint64_t, double>> scored;
      for (const auto& [id, m] : probs) scored.emplace_back(id, m.probability() * (1.0 - m.probability()));
      std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
      for (std::size_t i = 0; i < L; ++i) chosen.push_back(scored[i].first);
      break;
    }
    case SelectionMode::SeededArbitrary: {
      std::vector<std::uint64_t> ids;
      for (const auto& kv : probs) ids.push_back(kv.first);
      RngStream rng(seed);
      for (std::size_t i = ids.size() - 1; i > 0; --i) std::swap(ids[i], ids[rng.below(i + 1)]);
      chosen.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(L));
      break;
    }
  }

  std::stable_sort(chosen.begin(), chosen.end(), [&](std::uint64_t a, std::uint64_t b) {
    const double pa = probs.at(a).probability();
    const double pb = probs.at(b).probability();
    if (pa != pb) return pa > pb;
    return a < b;
  });
  SelectedProfile out;
  std::vector<double> w;
  for (auto id : chosen) w.push_back(probs.at(id).probability());
  out.profile = AttractionProfile(std::move(w));
  out.source_ids = std::move(chosen);
  return out;
}

AttractionProfile movielens10_profile() {
  return AttractionProfile({0.336, 0.204, 0.163, 0.125, 0.112, 0.105, 0.099, 0.090, 0.086, 0.082});
}

AttractionProfile builtin_profile(std::string_view name) {
  if (name == "movielens10") return movielens10_profile();
  throw ValidationError("unknown built-in profile '" + std::string(name) + "'");
}

void write_profile(std::ostream& out, const AttractionProfile& profile, std::span<const std::uint64_t> source_ids) {
  const bool with_source = !source_ids.empty();
  if (with_source && source_ids.size() != profile.size()) {
    throw ValidationError("source id count does not match the profile");
  }
  out << (with_source ? "item,w,source_id\n" : "item,w\n");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << (i + 1) << ',' << format_exact(profile.weights()[i]);
    if (with_source) out << ',' << source_ids[i];
    out << '\n';
  }
}

AttractionProfile read_profile(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty profile file");
  const auto header = trim(line);
  if (header != "item,w" && header != "item,w,source_id") throw ValidationError("profile header must be item,w");
  std::vector<std::pair<ItemId, double>> pairs;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const auto view = trim(line);
    if (view.empty()) continue;
    const auto f = split_fields(view, ',');
    std::uint32_t id = 0;
    double w = 0;
    if (f.size() < 2 || !parse_number(f[0], id) || !parse_number(f[1], w)) {
      throw ValidationError("malformed profile row " + std::to_string(row));
    }
    pairs.emplace_back(item(id), w);
  }
  if (pairs.empty()) throw ValidationError("profile file has no items");
  return AttractionProfile::from_pairs(pairs);
}

AttractionProfile read_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read profile file " + path.string());
  return read_profile(in);
}

}  // namespace oltr
