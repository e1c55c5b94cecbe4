#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "wlanmab/ctmn.hpp"
#include "wlanmab/scenario.hpp"

namespace wlanmab::oracle {

inline constexpr double kMaxProfiles = 1e7;

/// Relative tolerance under which two min-throughputs count as tied.
inline constexpr double kTieTolerance = 1e-12;

struct ProfileRow {
  ctmn::JointProfile profile;
  ctmn::ThroughputReport report;
  double min_bps = 0.0;
};

struct OracleResult {
  std::vector<std::size_t> active;
  std::vector<ctmn::JointProfile> best_profiles;
  double best_minmax = 0.0;
  std::vector<ProfileRow> table;  // lexicographic over active WLANs, first WLAN slowest

  bool is_optimal(const ctmn::JointProfile& profile) const;
};

/// Sweeps every joint profile over `active` and keeps all max-min maximisers.
OracleResult exhaustive_maxmin(const Scenario& scenario, const std::vector<std::size_t>& active);

/// All WLANs of the scenario.
std::vector<std::size_t> all_wlans(const Scenario& scenario);

ctmn::ThroughputReport profile_report(const Scenario& scenario, const ctmn::JointProfile& profile);

/// Profile where every WLAN in `active` plays `action` and the rest are inactive.
ctmn::JointProfile uniform_profile(const Scenario& scenario, const std::vector<std::size_t>& active, int action);

/// Memoises exhaustive_maxmin per (scenario, active set) within a process.
class OracleCache {
 public:
  std::shared_ptr<const OracleResult> get(const Scenario& scenario, const std::vector<std::size_t>& active);

 private:
  std::mutex mutex_;
  std::map<std::pair<std::string, std::vector<std::size_t>>, std::shared_ptr<const OracleResult>> entries_;
};

/// CSV: one action column and one throughput column per active WLAN, then min_throughput_bps.
std::string to_csv(const Scenario& scenario, const OracleResult& result);

}  // namespace wlanmab::oracle
