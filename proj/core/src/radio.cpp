#include "wlanmab/radio.hpp"

#include <cmath>
#include <numbers>

#include "wlanmab/error.hpp"

namespace wlanmab::radio {

double path_loss_db(double distance_m, const RadioParams& radio) {
  if (!(distance_m > 0)) {
    throw Error("path loss requires a positive distance");
  }
  const double free_space =
      20.0 * std::log10(4.0 * std::numbers::pi * distance_m * radio.frequency_hz / kSpeedOfLight);
  return free_space + radio.alpha_db_per_m * distance_m;
}

double rx_power_dbm(double tx_dbm, double distance_m, const RadioParams& radio) {
  return tx_dbm + radio.tx_gain_db + radio.rx_gain_db - path_loss_db(distance_m, radio);
}

double noise_power_dbm(std::size_t n_channels, const RadioParams& radio) {
  if (n_channels < 1) {
    throw Error("noise power requires at least one channel");
  }
  return radio.noise_floor_dbm_20mhz + 10.0 * std::log10(static_cast<double>(n_channels));
}

double overlap_factor(const ChannelRange& tx_range, const ChannelRange& rx_range) {
  if (tx_range.size() == 0) {
    return 0.0;
  }
  return static_cast<double>(tx_range.shared(rx_range)) / static_cast<double>(tx_range.size());
}

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double sinr_linear(const LinkBudget& budget) {
  if (std::isinf(budget.interference_mw)) {
    return 0.0;
  }
  return dbm_to_mw(budget.signal_dbm) / (dbm_to_mw(budget.noise_dbm) + budget.interference_mw);
}

double shannon_capacity_bps(double bandwidth_hz, double sinr, int spatial_streams) {
  if (!(bandwidth_hz > 0)) {
    throw Error("capacity requires a positive bandwidth");
  }
  if (!(sinr >= 0)) {
    throw Error("capacity requires a non-negative SINR");
  }
  return bandwidth_hz * std::log2(1.0 + sinr) * static_cast<double>(spatial_streams);
}

bool senses(const Configured& observer, const Configured& transmitter, const RadioParams& radio) {
  const double overlap = overlap_factor(transmitter.action.range, observer.action.range);
  if (overlap <= 0.0) {
    return false;
  }
  const double d = distance(observer.wlan.ap, transmitter.wlan.ap);
  const double in_band = rx_power_dbm(transmitter.action.tx_power_dbm, d, radio) + 10.0 * std::log10(overlap);
  return in_band >= radio.cca_dbm;
}

}  // namespace wlanmab::radio
