#pragma once

#include <cmath>
#include <cstddef>

#include "wlanmab/scenario.hpp"

namespace wlanmab::radio {

inline constexpr double kSpeedOfLight = 3e8;  // m/s

/// Indoor 5 GHz loss: free-space loss plus a constant per-metre wall/obstacle term.
double path_loss_db(double distance_m, const RadioParams& radio = {});

double rx_power_dbm(double tx_dbm, double distance_m, const RadioParams& radio = {});

/// Noise floor scaled to the width of `n_channels` bonded basic channels.
double noise_power_dbm(std::size_t n_channels, const RadioParams& radio = {});

/// Fraction of the transmitter's (flat-PSD) power that lands inside `rx_range`.
double overlap_factor(const ChannelRange& tx_range, const ChannelRange& rx_range);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw);

struct LinkBudget {
  double signal_dbm = 0.0;
  double noise_dbm = 0.0;
  double interference_mw = 0.0;
};

double sinr_linear(const LinkBudget& budget);

double shannon_capacity_bps(double bandwidth_hz, double sinr, int spatial_streams = 1);

/// A WLAN together with the action it currently plays.
struct Configured {
  const Wlan& wlan;
  const Action& action;
};

/// True if `observer`'s AP defers to `transmitter`: the in-band part of the
/// transmitter's power, measured AP to AP, reaches the CCA threshold.
bool senses(const Configured& observer, const Configured& transmitter, const RadioParams& radio = {});

}  // namespace wlanmab::radio
