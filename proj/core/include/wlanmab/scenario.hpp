#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wlanmab {

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

/// Radio constants. Defaults reproduce the reference deployment table.
struct RadioParams {
  double frequency_hz = 5e9;
  double base_bandwidth_hz = 20e6;
  double noise_floor_dbm_20mhz = -95.0;
  double cca_dbm = -62.0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  int spatial_streams = 1;
  double alpha_db_per_m = 0.44;
  // CTMN packet access / departure rates.
  double lambda_access = 1.0;
  double mu_departure = 1.0;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

/// The 20 MHz basic channels available for bonding, in frequency order.
inline constexpr int kBasicChannels[] = {36, 40, 44, 48};

/// Contiguous run of basic channels. Construction validates contiguity.
class ChannelRange {
 public:
  ChannelRange() = default;
  explicit ChannelRange(std::vector<int> channels);

  const std::vector<int>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  double width_hz(const RadioParams& radio) const {
    return radio.base_bandwidth_hz * static_cast<double>(channels_.size());
  }
  /// Number of basic channels shared with `other`.
  std::size_t shared(const ChannelRange& other) const;

  friend bool operator==(const ChannelRange&, const ChannelRange&) = default;

 private:
  std::vector<int> channels_;
};

struct Action {
  double tx_power_dbm = 0.0;
  ChannelRange range;

  friend bool operator==(const Action&, const Action&) = default;
};

/// Six (power, channel range) actions; action number k is element k-1.
std::vector<Action> default_action_space();

struct Wlan {
  std::string id;
  Position ap;
  Position sta;
  int activation_iteration = 0;  // 0 = active from the start

  friend bool operator==(const Wlan&, const Wlan&) = default;
};

struct Scenario {
  std::string name;
  std::vector<Wlan> wlans;
  RadioParams radio;
  std::vector<Action> action_space;

  std::size_t num_actions() const { return action_space.size(); }
  const Action& action(int number) const;  // 1-based action number
  std::size_t index_of(std::string_view wlan_id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws Error naming the offending field if any invariant fails.
void validate(const Scenario& scenario);

std::vector<std::string> builtin_scenario_names();
Scenario build_scenario(std::string_view name);

std::string serialize_scenario(const Scenario& scenario);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Built-in name if it matches one, otherwise a scenario file path.
Scenario resolve_scenario(std::string_view name_or_path);

}  // namespace wlanmab
