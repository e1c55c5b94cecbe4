#include "wlanmab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wlanmab/error.hpp"

namespace wlanmab {

using nlohmann::json;
using nlohmann::ordered_json;

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

std::ptrdiff_t channel_slot(int channel) {
  const auto* it = std::find(std::begin(kBasicChannels), std::end(kBasicChannels), channel);
  if (it == std::end(kBasicChannels)) {
    return -1;
  }
  return it - std::begin(kBasicChannels);
}

}  // namespace

ChannelRange::ChannelRange(std::vector<int> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) {
    throw Error("channel range must not be empty");
  }
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    const auto slot = channel_slot(channels_[i]);
    if (slot < 0) {
      throw Error("unknown basic channel " + std::to_string(channels_[i]));
    }
    if (i > 0 && slot != channel_slot(channels_[i - 1]) + 1) {
      throw Error("channel range must be contiguous and ascending");
    }
  }
}

std::size_t ChannelRange::shared(const ChannelRange& other) const {
  // Both ranges are contiguous runs over the same ordering.
  return static_cast<std::size_t>(std::count_if(channels_.begin(), channels_.end(), [&](int c) {
    return std::find(other.channels_.begin(), other.channels_.end(), c) != other.channels_.end();
  }));
}

std::vector<Action> default_action_space() {
  const ChannelRange low({36, 40});
  const ChannelRange high({44, 48});
  const ChannelRange full({36, 40, 44, 48});
  return {
      {1.0, low}, {1.0, high}, {1.0, full},
      {20.0, low}, {20.0, high}, {20.0, full},
  };
}

const Action& Scenario::action(int number) const {
  if (number < 1 || static_cast<std::size_t>(number) > action_space.size()) {
    throw Error("action number " + std::to_string(number) + " outside 1.." +
                std::to_string(action_space.size()));
  }
  return action_space[static_cast<std::size_t>(number - 1)];
}

std::size_t Scenario::index_of(std::string_view wlan_id) const {
  for (std::size_t i = 0; i < wlans.size(); ++i) {
    if (wlans[i].id == wlan_id) {
      return i;
    }
  }
  throw Error("unknown WLAN id '" + std::string(wlan_id) + "'");
}

void validate(const Scenario& scenario) {
  if (scenario.wlans.empty()) {
    throw Error("wlans: at least one WLAN is required");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < scenario.wlans.size(); ++i) {
    const Wlan& w = scenario.wlans[i];
    const std::string where = "wlans[" + std::to_string(i) + "]";
    if (w.id.empty()) {
      throw Error(where + ".id: must not be empty");
    }
    if (!ids.insert(w.id).second) {
      throw Error(where + ".id: duplicate WLAN id '" + w.id + "'");
    }
    for (double v : {w.ap.x, w.ap.y, w.sta.x, w.sta.y}) {
      if (!std::isfinite(v)) {
        throw Error(where + ": coordinates must be finite");
      }
    }
    if (w.ap == w.sta) {
      throw Error(where + ": AP and STA must not coincide");
    }
    if (w.activation_iteration < 0) {
      throw Error(where + ".activation_iteration: must be non-negative");
    }
  }
  if (scenario.action_space.empty()) {
    throw Error("actions: at least one action is required");
  }
  for (std::size_t i = 0; i < scenario.action_space.size(); ++i) {
    const Action& a = scenario.action_space[i];
    if (!std::isfinite(a.tx_power_dbm)) {
      throw Error("actions[" + std::to_string(i) + "].tx_power_dbm: must be finite");
    }
    if (a.range.size() == 0) {
      throw Error("actions[" + std::to_string(i) + "].channels: must not be empty");
    }
  }
  const RadioParams& r = scenario.radio;
  if (!(r.frequency_hz > 0)) throw Error("radio.frequency_hz: must be positive");
  if (!(r.base_bandwidth_hz > 0)) throw Error("radio.base_bandwidth_hz: must be positive");
  if (r.spatial_streams < 1) throw Error("radio.spatial_streams: must be at least 1");
  if (!(r.alpha_db_per_m >= 0)) throw Error("radio.alpha_db_per_m: must be non-negative");
  if (!(r.lambda_access > 0)) throw Error("radio.lambda_access: must be positive");
  if (!(r.mu_departure > 0)) throw Error("radio.mu_departure: must be positive");
}

std::vector<std::string> builtin_scenario_names() { return {"overlap2", "line3", "grid4"}; }

Scenario build_scenario(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  s.action_space = default_action_space();
  constexpr double kApSpacing = 5.0;
  constexpr double kStaOffset = 5.0;
  if (name == "overlap2") {
    s.wlans = {
        {"A", {0, 0}, {0, -kStaOffset}, 0},
        {"B", {kApSpacing, 0}, {kApSpacing, -kStaOffset}, 0},
    };
  } else if (name == "line3") {
    s.wlans = {
        {"A", {0, 0}, {0, -kStaOffset}, 0},
        {"B", {kApSpacing, 0}, {kApSpacing, -kStaOffset}, 250},
        {"C", {2 * kApSpacing, 0}, {2 * kApSpacing, -kStaOffset}, 0},
    };
  } else if (name == "grid4") {
    // STAs sit 2 m along each axis toward the square centre: sqrt(8) m from their AP.
    s.wlans = {
        {"A", {0, 0}, {2, 2}, 0},
        {"B", {kApSpacing, 0}, {kApSpacing - 2, 2}, 0},
        {"C", {0, kApSpacing}, {2, kApSpacing - 2}, 0},
        {"D", {kApSpacing, kApSpacing}, {kApSpacing - 2, kApSpacing - 2}, 0},
    };
  } else {
    throw Error("unknown scenario '" + std::string(name) + "'");
  }
  validate(s);
  return s;
}

// Schema:
// {
//   "name": str,
//   "radio": { <RadioParams fields, all optional> },
//   "actions": [ { "tx_power_dbm": num, "channels": [int, ...] }, ... ],
//   "wlans": [ { "id": str, "ap": [x, y], "sta": [x, y], "activation_iteration": int }, ... ]
// }
std::string serialize_scenario(const Scenario& s) {
  ordered_json radio = {
      {"frequency_hz", s.radio.frequency_hz},
      {"base_bandwidth_hz", s.radio.base_bandwidth_hz},
      {"noise_floor_dbm_20mhz", s.radio.noise_floor_dbm_20mhz},
      {"cca_dbm", s.radio.cca_dbm},
      {"tx_gain_db", s.radio.tx_gain_db},
      {"rx_gain_db", s.radio.rx_gain_db},
      {"spatial_streams", s.radio.spatial_streams},
      {"alpha_db_per_m", s.radio.alpha_db_per_m},
      {"lambda_access", s.radio.lambda_access},
      {"mu_departure", s.radio.mu_departure},
  };
  ordered_json actions = ordered_json::array();
  for (const Action& a : s.action_space) {
    actions.push_back({{"tx_power_dbm", a.tx_power_dbm}, {"channels", a.range.channels()}});
  }
  ordered_json wlans = ordered_json::array();
  for (const Wlan& w : s.wlans) {
    wlans.push_back({{"id", w.id},
                     {"ap", {w.ap.x, w.ap.y}},
                     {"sta", {w.sta.x, w.sta.y}},
                     {"activation_iteration", w.activation_iteration}});
  }
  ordered_json doc = {{"name", s.name}, {"radio", radio}, {"actions", actions}, {"wlans", wlans}};
  return doc.dump(2) + "\n";
}

namespace {

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw Error(where + "." + key + ": missing");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(where + "." + key + ": wrong type");
  }
}

template <typename T>
void optional_field(const json& obj, const char* key, T& out, const std::string& where) {
  if (obj.contains(key)) {
    out = field<T>(obj, key, where);
  }
}

Position position(const json& obj, const char* key, const std::string& where) {
  const auto xy = field<std::vector<double>>(obj, key, where);
  if (xy.size() != 2) {
    throw Error(where + "." + key + ": expected [x, y]");
  }
  return {xy[0], xy[1]};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("scenario parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error("scenario: top level must be an object");
  }
  Scenario s;
  optional_field(doc, "name", s.name, "scenario");

  if (doc.contains("radio")) {
    const json& r = doc.at("radio");
    if (!r.is_object()) throw Error("radio: must be an object");
    RadioParams& p = s.radio;
    optional_field(r, "frequency_hz", p.frequency_hz, "radio");
    optional_field(r, "base_bandwidth_hz", p.base_bandwidth_hz, "radio");
    optional_field(r, "noise_floor_dbm_20mhz", p.noise_floor_dbm_20mhz, "radio");
    optional_field(r, "cca_dbm", p.cca_dbm, "radio");
    optional_field(r, "tx_gain_db", p.tx_gain_db, "radio");
    optional_field(r, "rx_gain_db", p.rx_gain_db, "radio");
    optional_field(r, "spatial_streams", p.spatial_streams, "radio");
    optional_field(r, "alpha_db_per_m", p.alpha_db_per_m, "radio");
    optional_field(r, "lambda_access", p.lambda_access, "radio");
    optional_field(r, "mu_departure", p.mu_departure, "radio");
  }

  if (doc.contains("actions")) {
    const json& arr = doc.at("actions");
    if (!arr.is_array()) throw Error("actions: must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "actions[" + std::to_string(i) + "]";
      Action a;
      a.tx_power_dbm = field<double>(arr[i], "tx_power_dbm", where);
      try {
        a.range = ChannelRange(field<std::vector<int>>(arr[i], "channels", where));
      } catch (const Error& e) {
        throw Error(where + ".channels: " + e.what());
      }
      s.action_space.push_back(std::move(a));
    }
  } else {
    s.action_space = default_action_space();
  }

  const json& arr = doc.contains("wlans") ? doc.at("wlans") : json::array();
  if (!arr.is_array()) throw Error("wlans: must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "wlans[" + std::to_string(i) + "]";
    Wlan w;
    w.id = field<std::string>(arr[i], "id", where);
    w.ap = position(arr[i], "ap", where);
    w.sta = position(arr[i], "sta", where);
    optional_field(arr[i], "activation_iteration", w.activation_iteration, where);
    s.wlans.push_back(std::move(w));
  }

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write scenario file " + path.string());
  }
  out << serialize_scenario(scenario);
}

Scenario resolve_scenario(std::string_view name_or_path) {
  for (const auto& name : builtin_scenario_names()) {
    if (name == name_or_path) {
      return build_scenario(name);
    }
  }
  return load_scenario(std::filesystem::path(name_or_path));
}

}  // namespace wlanmab
