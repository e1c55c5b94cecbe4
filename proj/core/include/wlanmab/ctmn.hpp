#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wlanmab/scenario.hpp"

namespace wlanmab::ctmn {

inline constexpr int kInactive = 0;

/// One action number (1..K) per scenario WLAN, or kInactive for WLANs that
/// are not currently active.
struct JointProfile {
  std::vector<int> actions;

  std::vector<std::size_t> active() const;
  std::uint32_t active_mask() const;

  friend bool operator==(const JointProfile&, const JointProfile&) = default;
  friend auto operator<=>(const JointProfile&, const JointProfile&) = default;
};

/// Set of transmitting WLANs; bit w is scenario WLAN w.
using GlobalState = std::uint32_t;

inline constexpr std::size_t kMaxWlans = 16;

inline bool transmitting(GlobalState s, std::size_t wlan) { return (s >> wlan) & 1U; }

struct CtmnModel {
  std::vector<GlobalState> states;  // states[0] is the empty set
  Eigen::MatrixXd generator;
  Eigen::VectorXd stationary;
};

struct ThroughputReport {
  std::vector<double> bps;  // one entry per scenario WLAN, 0 for inactive WLANs

  /// Minimum over the WLANs in `active`.
  double min_over(const std::vector<std::size_t>& active) const;
};

/// conflict[w][v] is true when w and v cannot transmit together (either senses the other).
std::vector<std::vector<bool>> conflict_matrix(const Scenario& scenario, const JointProfile& profile);

/// Subsets of active WLANs with no sensing pair, in ascending bit-pattern order.
std::vector<GlobalState> enumerate_feasible_states(const Scenario& scenario, const JointProfile& profile);

/// Births at rate `lambda` into feasible supersets, deaths at rate `mu`.
Eigen::MatrixXd build_generator(const std::vector<GlobalState>& states, double lambda, double mu);

/// Solves pi Q = 0, sum(pi) = 1 by replacing one balance equation with the
/// normalisation row. Throws if the system is singular or the residual exceeds 1e-9.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& generator);

CtmnModel build_model(const Scenario& scenario, const JointProfile& profile);

/// Shannon capacity of every WLAN transmitting in `state`, with interference
/// from the other transmitters weighted by spectral overlap.
std::vector<double> per_state_capacity(const Scenario& scenario, const JointProfile& profile, GlobalState state);

ThroughputReport throughput(const Scenario& scenario, const JointProfile& profile);

/// Long-run throughput of `wlan` alone in the network playing `action`.
double standalone_throughput(const Scenario& scenario, std::size_t wlan, int action);

/// Per-WLAN best standalone throughput over the action space.
std::vector<double> standalone_caps(const Scenario& scenario);

void check_profile(const Scenario& scenario, const JointProfile& profile);

}  // namespace wlanmab::ctmn
