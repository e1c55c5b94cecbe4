#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wlanmab/ctmn.hpp"

namespace wlanmab::bandits {

struct ArmEstimate {
  double r_hat = 0.0;
  std::uint64_t n = 0;

  friend bool operator==(const ArmEstimate&, const ArmEstimate&) = default;
};

/// Posterior variance used when sampling an arm played `n` times.
inline double sampling_variance(std::uint64_t n) { return 1.0 / (static_cast<double>(n) + 1.0); }

/// Stream seed for one agent: splitmix64 over (master seed, run index, WLAN index).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t run, std::uint64_t wlan);

/// Index of the largest value; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

/// Gaussian Thompson-sampling learner for one WLAN. Arms are numbered 1..K.
class Agent {
 public:
  Agent(std::size_t num_arms, std::uint64_t stream_seed);

  /// Draws one sample per arm, in arm order, and plays the argmax.
  int sample_arm();

  /// r_hat <- (r_hat * n + reward) / (n + 2); n <- n + 1.
  void update(int arm, double reward);

  /// Forget all estimates. The random stream keeps advancing.
  void reset();

  std::size_t num_arms() const { return arms_.size(); }
  const std::vector<ArmEstimate>& arms() const { return arms_; }
  const ArmEstimate& arm(int number) const;
  void set_arm(int number, ArmEstimate estimate);

  /// Samples drawn by the most recent sample_arm call.
  const std::vector<double>& last_samples() const { return samples_; }

 private:
  std::size_t slot(int number) const;

  std::vector<ArmEstimate> arms_;
  std::vector<double> samples_;
  std::mt19937_64 rng_;
};

/// Collaborative max-min reward: min over active WLANs of throughput / cap, clipped to [0, 1].
double shared_reward(const ctmn::ThroughputReport& report, std::span<const double> caps,
                     const std::vector<std::size_t>& active);

struct ThompsonSampling {
  friend bool operator==(const ThompsonSampling&, const ThompsonSampling&) = default;
};
struct Static {
  int arm = 1;
  friend bool operator==(const Static&, const Static&) = default;
};
using Policy = std::variant<ThompsonSampling, Static>;

/// Accepts "ts" or "static:<k>".
Policy parse_policy(std::string_view text);
std::string to_string(const Policy& policy);

/// Static policies never touch the agent's random stream.
int select(const Policy& policy, Agent& agent);

}  // namespace wlanmab::bandits
