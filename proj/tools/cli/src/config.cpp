#include "oltr/cli/config.hpp"

#include <fstream>
#include <set>

#include "oltr/data_ingest.hpp"

namespace oltr::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {"model",   "position_bias", "ranker",      "attack",  "profile",
                                          "K",       "T",             "alpha",       "runs",    "master_seed",
                                          "targets", "w_m",           "epsilon",     "atq_budget", "curve_points"};

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

AttackKind parse_attack(const std::string& tag) {
  for (auto kind : {AttackKind::None, AttackKind::CascadeOfa, AttackKind::PbmOfa, AttackKind::CascadeAtq,
                    AttackKind::PbmAtq}) {
    if (tag == to_string(kind)) return kind;
  }
  throw ValidationError("unknown attack '" + tag + "'");
}

RankerKind parse_ranker(const std::string& tag) {
  if (tag == "cascade-ucb1") return RankerKind::CascadeUcb1;
  if (tag == "pbm-ucb") return RankerKind::PbmUcb;
  throw ValidationError("unknown ranker '" + tag + "'");
}

AttractionProfile parse_profile(const json& node, const std::filesystem::path& base_dir) {
  if (node.is_string()) return builtin_profile(node.get<std::string>());
  if (!node.is_object()) throw ValidationError("profile must be a name or an object");
  if (node.contains("builtin")) return builtin_profile(get_as<std::string>(node, "builtin"));
  if (node.contains("file")) {
    std::filesystem::path path = get_as<std::string>(node, "file");
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return read_profile(path);
  }
  if (node.contains("w")) return AttractionProfile(get_as<std::vector<double>>(node, "w"));
  throw ValidationError("profile object needs one of builtin, file, w");
}

}  // namespace

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ValidationError("unknown config key '" + key + "'");
  }

  ExperimentConfig c;
  const std::string model = doc.contains("model") ? get_as<std::string>(doc, "model") : "cascade";
  if (model == "cascade") {
    c.model = ClickModelKind::cascade();
    c.ranker = RankerKind::CascadeUcb1;
  } else if (model == "pbm") {
    if (!doc.contains("position_bias")) throw ValidationError("pbm model requires position_bias");
    c.model = ClickModelKind::pbm(PositionBias(get_as<std::vector<double>>(doc, "position_bias")));
    c.ranker = RankerKind::PbmUcb;
  } else {
    throw ValidationError("unknown model '" + model + "'");
  }
  if (doc.contains("ranker")) c.ranker = parse_ranker(get_as<std::string>(doc, "ranker"));
  if (doc.contains("attack")) c.attack = parse_attack(get_as<std::string>(doc, "attack"));
  c.profile = doc.contains("profile") ? parse_profile(doc.at("profile"), base_dir) : movielens10_profile();
  if (doc.contains("K")) c.K = get_as<std::size_t>(doc, "K");
  if (doc.contains("T")) c.T = get_as<std::uint64_t>(doc, "T");
  if (doc.contains("alpha")) c.alpha = get_as<double>(doc, "alpha");
  if (doc.contains("runs")) c.runs = get_as<std::size_t>(doc, "runs");
  if (doc.contains("master_seed")) c.master_seed = get_as<std::uint64_t>(doc, "master_seed");
  if (doc.contains("curve_points")) c.curve_points = get_as<std::size_t>(doc, "curve_points");
  if (doc.contains("targets")) {
    for (auto id : get_as<std::vector<std::uint32_t>>(doc, "targets")) c.targets.push_back(item(id));
  }
  if (doc.contains("w_m") && !doc.at("w_m").is_null()) c.w_m = get_as<double>(doc, "w_m");
  if (doc.contains("epsilon") && !doc.at("epsilon").is_null()) c.epsilon = get_as<double>(doc, "epsilon");
  if (doc.contains("atq_budget") && !doc.at("atq_budget").is_null()) {
    c.atq_budget = get_as<std::uint64_t>(doc, "atq_budget");
  }
  validate_config(c);
  return c;
}

json read_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

void apply_overrides(json& base, const json& overrides) {
  for (const auto& [key, value] : overrides.items()) base[key] = value;
}

json config_to_json(const ExperimentConfig& c) {
  json doc;
  doc["model"] = std::string(to_string(c.model.model()));
  if (!c.model.is_cascade()) {
    auto p = c.model.bias().values();
    doc["position_bias"] = std::vector<double>(p.begin(), p.end());
  }
  doc["ranker"] = std::string(to_string(c.ranker));
  doc["attack"] = std::string(to_string(c.attack));
  auto w = c.profile.weights();
  doc["profile"] = json{{"w", std::vector<double>(w.begin(), w.end())}};
  doc["K"] = c.K;
  doc["T"] = c.T;
  doc["alpha"] = c.alpha;
  doc["runs"] = c.runs;
  doc["master_seed"] = c.master_seed;
  doc["curve_points"] = c.curve_points;
  std::vector<std::uint32_t> targets;
  for (auto id : c.targets) targets.push_back(id_value(id));
  doc["targets"] = targets;
  doc["w_m"] = c.w_m ? json(*c.w_m) : json(nullptr);
  doc["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
  doc["atq_budget"] = c.atq_budget ? json(*c.atq_budget) : json(nullptr);
  return doc;
}

}  // namespace oltr::cli
