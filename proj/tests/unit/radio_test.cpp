#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "wlanmab/error.hpp"
#include "wlanmab/radio.hpp"

using namespace wlanmab;
using namespace wlanmab::radio;

// Reference values evaluated independently at 30 significant digits (c = 3e8).
namespace ref {
constexpr double kPathLoss5 = 62.6005723594894283;
constexpr double kPathLoss10 = 70.8211722727690522;
constexpr double kNoise4 = -88.9794000867203761;
constexpr double kNoise2 = -91.9897000433601880;
constexpr double kSinrExample = 43451.0224171571534;  // -42.60 dBm over -88.98 dBm
}  // namespace ref

TEST_CASE("path loss") {
  CHECK(path_loss_db(5.0) == doctest::Approx(ref::kPathLoss5).epsilon(1e-12));
  CHECK(path_loss_db(10.0) == doctest::Approx(ref::kPathLoss10).epsilon(1e-12));
  CHECK(path_loss_db(5.0) == doctest::Approx(62.60).epsilon(1e-4));
  CHECK_THROWS_AS(path_loss_db(0.0), Error);
  CHECK_THROWS_AS(path_loss_db(-1.0), Error);
}

TEST_CASE("path loss increases and received power decreases with distance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.01, 200.0);
  for (int i = 0; i < 1000; ++i) {
    double a = d(rng), b = d(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(path_loss_db(a) < path_loss_db(b));
    CHECK(rx_power_dbm(20.0, a) > rx_power_dbm(20.0, b));
  }
}

TEST_CASE("received power") {
  CHECK(rx_power_dbm(20.0, 5.0) == doctest::Approx(20.0 - ref::kPathLoss5).epsilon(1e-12));
  CHECK(rx_power_dbm(20.0, 5.0) == doctest::Approx(-42.60).epsilon(1e-4));
  CHECK(rx_power_dbm(1.0, 5.0) == doctest::Approx(-61.60).epsilon(1e-4));
  CHECK(rx_power_dbm(1.0, 5.0) >= -62.0);
  CHECK(rx_power_dbm(1.0, 10.0) == doctest::Approx(-69.82).epsilon(1e-4));
  CHECK(rx_power_dbm(1.0, 10.0) < -62.0);
  RadioParams gains;
  gains.tx_gain_db = 3.0;
  gains.rx_gain_db = 2.0;
  CHECK(rx_power_dbm(1.0, 5.0, gains) == doctest::Approx(rx_power_dbm(1.0, 5.0) + 5.0));
  CHECK_THROWS_AS(rx_power_dbm(1.0, 0.0), Error);
}

TEST_CASE("noise scales with bonded width") {
  CHECK(noise_power_dbm(1) == -95.0);
  CHECK(noise_power_dbm(2) == doctest::Approx(ref::kNoise2).epsilon(1e-12));
  CHECK(noise_power_dbm(4) == doctest::Approx(ref::kNoise4).epsilon(1e-12));
  CHECK_THROWS_AS(noise_power_dbm(0), Error);
}

TEST_CASE("spectral overlap") {
  const ChannelRange low({36, 40}), high({44, 48}), full({36, 40, 44, 48}), mid({40, 44});
  CHECK(overlap_factor(low, high) == 0.0);
  CHECK(overlap_factor(low, low) == 1.0);
  CHECK(overlap_factor(full, low) == 0.5);
  CHECK(overlap_factor(low, full) == 1.0);
  CHECK(overlap_factor(mid, low) == 0.5);
  const ChannelRange ranges[] = {low, high, full, mid, ChannelRange({36}), ChannelRange({40, 44, 48})};
  for (const auto& a : ranges) {
    for (const auto& b : ranges) {
      CHECK(overlap_factor(a, b) * a.size() == doctest::Approx(overlap_factor(b, a) * b.size()));
      CHECK(overlap_factor(a, b) >= 0.0);
      CHECK(overlap_factor(a, b) <= 1.0);
    }
  }
}

TEST_CASE("SINR") {
  CHECK(sinr_linear({-80.0, -80.0, 0.0}) == doctest::Approx(1.0));
  CHECK(sinr_linear({-80.0, -90.0, std::numeric_limits<double>::infinity()}) == 0.0);
  CHECK(sinr_linear({-80.0, -90.0, 1e30}) < 1e-20);
  CHECK(sinr_linear({-42.60, -88.98, 0.0}) == doctest::Approx(ref::kSinrExample).epsilon(1e-12));
  CHECK(sinr_linear({-42.60, -88.98, 0.0}) == doctest::Approx(4.35e4).epsilon(1e-2));
  // Interference adds linearly with noise.
  const double noise_mw = dbm_to_mw(-90.0);
  CHECK(sinr_linear({-60.0, -90.0, noise_mw}) == doctest::Approx(sinr_linear({-60.0, -90.0, 0.0}) / 2.0));
}

TEST_CASE("Shannon capacity") {
  CHECK(shannon_capacity_bps(20e6, 0.0) == 0.0);
  CHECK(shannon_capacity_bps(20e6, 1.0) == 20e6);
  CHECK(shannon_capacity_bps(20e6, 255.0) == 160e6);
  CHECK(shannon_capacity_bps(20e6, 1.0, 2) == 40e6);
  CHECK_THROWS_AS(shannon_capacity_bps(20e6, -0.5), Error);
  CHECK_THROWS_AS(shannon_capacity_bps(0.0, 1.0), Error);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> bw(1e6, 160e6), snr(0.0, 1e5);
  for (int i = 0; i < 500; ++i) {
    const double b1 = bw(rng), b2 = bw(rng), s1 = snr(rng), s2 = snr(rng);
    CHECK(shannon_capacity_bps(std::min(b1, b2), s1) <= shannon_capacity_bps(std::max(b1, b2), s1));
    CHECK(shannon_capacity_bps(b1, std::min(s1, s2)) <= shannon_capacity_bps(b1, std::max(s1, s2)));
    CHECK((shannon_capacity_bps(b1, s1) == 0.0) == (s1 == 0.0));
  }
}

TEST_CASE("carrier sensing between APs") {
  const auto actions = default_action_space();
  const Wlan a{"A", {0, 0}, {0, -5}, 0};
  const Wlan b{"B", {5, 0}, {5, -5}, 0};
  const Wlan far{"C", {10, 0}, {10, -5}, 0};

  // Same range at 5 m: sensed at both powers.
  CHECK(senses({a, actions[3]}, {b, actions[3]}));
  CHECK(senses({a, actions[0]}, {b, actions[0]}));
  // Disjoint ranges never sense.
  for (int p : {0, 3}) CHECK_FALSE(senses({a, actions[p]}, {b, actions[p + 1]}));
  // Low power at 10 m falls below CCA; high power does not.
  CHECK_FALSE(senses({a, actions[0]}, {far, actions[0]}));
  CHECK(senses({a, actions[3]}, {far, actions[3]}));
  // A 1 dBm 80 MHz transmitter puts only half its power in a 40 MHz band:
  // -61.6 - 3.01 dB < -62 dBm, so the narrow observer does not defer...
  CHECK_FALSE(senses({a, actions[0]}, {b, actions[2]}));
  // ...while the wide observer hears all of the narrow transmitter's power.
  CHECK(senses({b, actions[2]}, {a, actions[0]}));
}
