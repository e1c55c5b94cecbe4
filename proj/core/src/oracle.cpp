#include "wlanmab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wlanmab/error.hpp"
#include "wlanmab/format.hpp"

namespace wlanmab::oracle {

bool OracleResult::is_optimal(const ctmn::JointProfile& profile) const {
  return std::find(best_profiles.begin(), best_profiles.end(), profile) != best_profiles.end();
}

std::vector<std::size_t> all_wlans(const Scenario& scenario) {
  std::vector<std::size_t> out(scenario.wlans.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

ctmn::ThroughputReport profile_report(const Scenario& scenario, const ctmn::JointProfile& profile) {
  return ctmn::throughput(scenario, profile);
}

ctmn::JointProfile uniform_profile(const Scenario& scenario, const std::vector<std::size_t>& active, int action) {
  ctmn::JointProfile p{std::vector<int>(scenario.wlans.size(), ctmn::kInactive)};
  for (std::size_t w : active) p.actions.at(w) = action;
  return p;
}

OracleResult exhaustive_maxmin(const Scenario& scenario, const std::vector<std::size_t>& active) {
  if (active.empty()) {
    throw Error("oracle needs at least one active WLAN");
  }
  std::vector<std::size_t> sorted = active;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.back() >= scenario.wlans.size()) {
    throw Error("oracle active set has duplicate or unknown WLANs");
  }
  const int k = static_cast<int>(scenario.num_actions());
  const double count = std::pow(static_cast<double>(k), static_cast<double>(sorted.size()));
  if (count > kMaxProfiles) {
    throw Error("oracle sweep of " + std::to_string(static_cast<long long>(count)) +
                " profiles exceeds the limit of 1e7");
  }

  OracleResult result;
  result.active = sorted;
  result.table.reserve(static_cast<std::size_t>(count));

  ctmn::JointProfile profile = uniform_profile(scenario, sorted, 1);
  for (;;) {
    ProfileRow row{profile, ctmn::throughput(scenario, profile), 0.0};
    row.min_bps = row.report.min_over(sorted);
    result.table.push_back(std::move(row));

    // Odometer: the last active WLAN varies fastest.
    std::size_t i = sorted.size();
    while (i > 0) {
      int& a = profile.actions[sorted[i - 1]];
      if (a < k) {
        ++a;
        break;
      }
      a = 1;
      --i;
    }
    if (i == 0) break;
  }

  for (const ProfileRow& row : result.table) {
    result.best_minmax = std::max(result.best_minmax, row.min_bps);
  }
  const double tol = kTieTolerance * result.best_minmax;
  for (const ProfileRow& row : result.table) {
    if (result.best_minmax - row.min_bps <= tol) {
      result.best_profiles.push_back(row.profile);
    }
  }
  return result;
}

std::shared_ptr<const OracleResult> OracleCache::get(const Scenario& scenario, const std::vector<std::size_t>& active) {
  std::vector<std::size_t> sorted = active;
  std::sort(sorted.begin(), sorted.end());
  auto key = std::make_pair(serialize_scenario(scenario), sorted);
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    auto result = std::make_shared<const OracleResult>(exhaustive_maxmin(scenario, sorted));
    it = entries_.emplace(std::move(key), std::move(result)).first;
  }
  return it->second;
}

std::string to_csv(const Scenario& scenario, const OracleResult& result) {
  std::ostringstream out;
  out << "#schema=1\n";
  for (std::size_t w : result.active) out << "action_" << scenario.wlans[w].id << ',';
  for (std::size_t w : result.active) out << "throughput_bps_" << scenario.wlans[w].id << ',';
  out << "min_throughput_bps\n";
  for (const ProfileRow& row : result.table) {
    for (std::size_t w : result.active) out << row.profile.actions[w] << ',';
    for (std::size_t w : result.active) out << format_double(row.report.bps[w]) << ',';
    out << format_double(row.min_bps) << '\n';
  }
  return out.str();
}

}  // namespace wlanmab::oracle
