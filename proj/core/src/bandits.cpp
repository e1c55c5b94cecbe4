#include "wlanmab/bandits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <boost/random/normal_distribution.hpp>

#include "wlanmab/error.hpp"

namespace wlanmab::bandits {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t run, std::uint64_t wlan) {
  return splitmix64(splitmix64(splitmix64(master_seed) ^ run) ^ wlan);
}

std::size_t argmax_lowest(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

Agent::Agent(std::size_t num_arms, std::uint64_t stream_seed)
    : arms_(num_arms), samples_(num_arms, 0.0), rng_(stream_seed) {
  if (num_arms == 0) {
    throw Error("agent needs at least one arm");
  }
}

std::size_t Agent::slot(int number) const {
  if (number < 1 || static_cast<std::size_t>(number) > arms_.size()) {
    throw Error("arm " + std::to_string(number) + " outside 1.." + std::to_string(arms_.size()));
  }
  return static_cast<std::size_t>(number - 1);
}

const ArmEstimate& Agent::arm(int number) const { return arms_[slot(number)]; }

void Agent::set_arm(int number, ArmEstimate estimate) { arms_[slot(number)] = estimate; }

int Agent::sample_arm() {
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    const double stddev = std::sqrt(sampling_variance(arms_[k].n));
    boost::random::normal_distribution<double> normal(arms_[k].r_hat, stddev);
    samples_[k] = normal(rng_);
  }
  return static_cast<int>(argmax_lowest(samples_)) + 1;
}

void Agent::update(int arm, double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw Error("reward must lie in [0, 1]");
  }
  ArmEstimate& e = arms_[slot(arm)];
  const double n = static_cast<double>(e.n);
  e.r_hat = (e.r_hat * n + reward) / (n + 2.0);
  e.n += 1;
}

void Agent::reset() { std::fill(arms_.begin(), arms_.end(), ArmEstimate{}); }

double shared_reward(const ctmn::ThroughputReport& report, std::span<const double> caps,
                     const std::vector<std::size_t>& active) {
  if (active.empty()) {
    throw Error("shared reward needs at least one active WLAN");
  }
  double reward = 1.0;
  for (std::size_t w : active) {
    if (!(caps[w] > 0.0)) {
      throw Error("throughput cap must be positive");
    }
    reward = std::min(reward, report.bps.at(w) / caps[w]);
  }
  return std::clamp(reward, 0.0, 1.0);
}

Policy parse_policy(std::string_view text) {
  if (text == "ts") {
    return ThompsonSampling{};
  }
  constexpr std::string_view prefix = "static:";
  if (text.starts_with(prefix)) {
    const std::string_view digits = text.substr(prefix.size());
    int arm = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arm);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && arm >= 1) {
      return Static{arm};
    }
  }
  throw Error("unknown policy '" + std::string(text) + "' (expected ts or static:<k>)");
}

std::string to_string(const Policy& policy) {
  if (const auto* s = std::get_if<Static>(&policy)) {
    return "static:" + std::to_string(s->arm);
  }
  return "ts";
}

int select(const Policy& policy, Agent& agent) {
  if (const auto* s = std::get_if<Static>(&policy)) {
    agent.arm(s->arm);  // range check
    return s->arm;
  }
  return agent.sample_arm();
}

}  // namespace wlanmab::bandits
