#include "wlanmab/ctmn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wlanmab/error.hpp"
#include "wlanmab/radio.hpp"

namespace wlanmab::ctmn {

std::vector<std::size_t> JointProfile::active() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < actions.size(); ++w) {
    if (actions[w] != kInactive) {
      out.push_back(w);
    }
  }
  return out;
}

std::uint32_t JointProfile::active_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t w : active()) {
    mask |= 1U << w;
  }
  return mask;
}

double ThroughputReport::min_over(const std::vector<std::size_t>& active) const {
  if (active.empty()) {
    return 0.0;
  }
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t w : active) {
    m = std::min(m, bps.at(w));
  }
  return m;
}

void check_profile(const Scenario& scenario, const JointProfile& profile) {
  if (profile.actions.size() != scenario.wlans.size()) {
    throw Error("profile has " + std::to_string(profile.actions.size()) + " entries for " +
                std::to_string(scenario.wlans.size()) + " WLANs");
  }
  if (scenario.wlans.size() > kMaxWlans) {
    throw Error("at most " + std::to_string(kMaxWlans) + " WLANs are supported");
  }
  for (int a : profile.actions) {
    if (a != kInactive) {
      scenario.action(a);
    }
  }
}

std::vector<std::vector<bool>> conflict_matrix(const Scenario& scenario, const JointProfile& profile) {
  const std::size_t n = scenario.wlans.size();
  std::vector<std::vector<bool>> conflict(n, std::vector<bool>(n, false));
  const auto active = profile.active();
  for (std::size_t i : active) {
    for (std::size_t j : active) {
      if (i == j) continue;
      const radio::Configured wi{scenario.wlans[i], scenario.action(profile.actions[i])};
      const radio::Configured wj{scenario.wlans[j], scenario.action(profile.actions[j])};
      if (radio::senses(wi, wj, scenario.radio)) {
        conflict[i][j] = true;
        conflict[j][i] = true;
      }
    }
  }
  return conflict;
}

std::vector<GlobalState> enumerate_feasible_states(const Scenario& scenario, const JointProfile& profile) {
  check_profile(scenario, profile);
  const auto conflict = conflict_matrix(scenario, profile);
  const std::uint32_t active = profile.active_mask();
  const std::size_t n = scenario.wlans.size();

  std::vector<GlobalState> states;
  for (std::uint32_t s = 0; s <= active; ++s) {
    if ((s & ~active) != 0) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < n && feasible; ++i) {
      if (!transmitting(s, i)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (transmitting(s, j) && conflict[i][j]) {
          feasible = false;
          break;
        }
      }
    }
    if (feasible) {
      states.push_back(s);
    }
  }
  return states;
}

Eigen::MatrixXd build_generator(const std::vector<GlobalState>& states, double lambda, double mu) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  auto index_of = [&](GlobalState s) -> Eigen::Index {
    const auto it = std::lower_bound(states.begin(), states.end(), s);
    return (it != states.end() && *it == s) ? it - states.begin() : -1;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const GlobalState s = states[static_cast<std::size_t>(i)];
    for (std::size_t w = 0; w < kMaxWlans; ++w) {
      const GlobalState bit = GlobalState{1} << w;
      if (s & bit) {
        const auto j = index_of(s & ~bit);
        if (j >= 0) q(i, j) += mu;
      } else {
        const auto j = index_of(s | bit);
        if (j >= 0) q(i, j) += lambda;
      }
    }
    q(i, i) = -q.row(i).sum();
  }
  return q;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& generator) {
  const Eigen::Index n = generator.rows();
  if (n == 0 || generator.cols() != n) {
    throw Error("generator must be a non-empty square matrix");
  }
  Eigen::MatrixXd a = generator.transpose();
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Error("stationary system is singular; generator is malformed");
  }
  Eigen::VectorXd pi = lu.solve(b);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pi(i) < 0.0 && pi(i) >= -1e-12) pi(i) = 0.0;
  }
  const double residual = (pi.transpose() * generator).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-9) || std::abs(pi.sum() - 1.0) > 1e-9 || pi.minCoeff() < 0.0) {
    throw Error("stationary solve did not converge (residual " + std::to_string(residual) + ")");
  }
  return pi;
}

CtmnModel build_model(const Scenario& scenario, const JointProfile& profile) {
  CtmnModel m;
  m.states = enumerate_feasible_states(scenario, profile);
  m.generator = build_generator(m.states, scenario.radio.lambda_access, scenario.radio.mu_departure);
  m.stationary = stationary_distribution(m.generator);
  return m;
}

std::vector<double> per_state_capacity(const Scenario& scenario, const JointProfile& profile, GlobalState state) {
  const std::size_t n = scenario.wlans.size();
  const RadioParams& rp = scenario.radio;
  std::vector<double> capacity(n, 0.0);
  for (std::size_t w = 0; w < n; ++w) {
    if (!transmitting(state, w)) continue;
    const Wlan& me = scenario.wlans[w];
    const Action& mine = scenario.action(profile.actions[w]);

    radio::LinkBudget budget;
    budget.signal_dbm = radio::rx_power_dbm(mine.tx_power_dbm, distance(me.ap, me.sta), rp);
    budget.noise_dbm = radio::noise_power_dbm(mine.range.size(), rp);
    for (std::size_t v = 0; v < n; ++v) {
      if (v == w || !transmitting(state, v)) continue;
      const Action& theirs = scenario.action(profile.actions[v]);
      const double overlap = radio::overlap_factor(theirs.range, mine.range);
      if (overlap <= 0.0) continue;
      const double rx = radio::rx_power_dbm(theirs.tx_power_dbm, distance(scenario.wlans[v].ap, me.sta), rp);
      budget.interference_mw += radio::dbm_to_mw(rx) * overlap;
    }
    capacity[w] = radio::shannon_capacity_bps(mine.range.width_hz(rp), radio::sinr_linear(budget), rp.spatial_streams);
  }
  return capacity;
}

ThroughputReport throughput(const Scenario& scenario, const JointProfile& profile) {
  ThroughputReport report;
  report.bps.assign(scenario.wlans.size(), 0.0);
  if (profile.active_mask() == 0) {
    check_profile(scenario, profile);
    return report;
  }
  const CtmnModel model = build_model(scenario, profile);
  for (std::size_t i = 0; i < model.states.size(); ++i) {
    const double p = model.stationary(static_cast<Eigen::Index>(i));
    if (p == 0.0) continue;
    const auto cap = per_state_capacity(scenario, profile, model.states[i]);
    for (std::size_t w = 0; w < cap.size(); ++w) {
      report.bps[w] += p * cap[w];
    }
  }
  return report;
}

double standalone_throughput(const Scenario& scenario, std::size_t wlan, int action) {
  JointProfile solo{std::vector<int>(scenario.wlans.size(), kInactive)};
  solo.actions.at(wlan) = action;
  return throughput(scenario, solo).bps[wlan];
}

std::vector<double> standalone_caps(const Scenario& scenario) {
  std::vector<double> caps(scenario.wlans.size(), 0.0);
  for (std::size_t w = 0; w < caps.size(); ++w) {
    for (int a = 1; a <= static_cast<int>(scenario.num_actions()); ++a) {
      caps[w] = std::max(caps[w], standalone_throughput(scenario, w, a));
    }
  }
  return caps;
}

}  // namespace wlanmab::ctmn
