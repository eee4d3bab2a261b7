#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>
#include "json.hpp"

#include "isac/geometry.hpp"

namespace isac {

/// Parameters for synthetic channel generation. Defaults reproduce the two
/// built-in scenarios: 6 GHz carrier, 1 MHz bandwidth, Rician K = 5 dB and
/// -174 dBm/Hz noise.
struct ChannelConfig {
  double carrier_frequency_hz = 6e9;
  double bandwidth_hz = 1e6;
  double rician_k_db = 5.0;
  double noise_psd_dbm_per_hz = -174.0;
  double pathloss_exponent_comm = 2.7;
  /// Extra attenuation applied to interfering links (transmitter l to CU m,
  /// l != m), e.g. transmit sidelobe suppression. 0 dB disables it.
  double cross_link_isolation_db = 30.0;
  double rcs_m2 = 1.0;
  /// Radar observation interval T.
  double obs_duration_s = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// h(m, l) is the gain from transmitter l to CU receiver m.
struct CommChannels {
  Eigen::MatrixXcd h;
  Eigen::VectorXd noise_power;  // sigma_m^2, W

  Eigen::Index size() const { return h.rows(); }
  Eigen::MatrixXd gain_sq() const { return h.cwiseAbs2(); }
  void validate() const;
};

/// h_rad(n, m) is the radar path coefficient transmitter m -> target ->
/// receiver n. `noise_level` is the white-noise spectral level sigma_w^2 of
/// the sensing receivers in W/Hz; xi(m) = 8 pi^2 beta_m^2 T / (sigma_w^2 c^2).
struct RadarChannels {
  Eigen::MatrixXcd h_rad;
  double noise_level = 0.0;
  Eigen::VectorXd eff_bandwidth;
  double obs_duration = 0.0;
  Eigen::VectorXd xi;

  Eigen::MatrixXd gain_sq() const { return h_rad.cwiseAbs2(); }
  void validate() const;
};

struct ChannelSet {
  CommChannels comm;
  RadarChannels radar;
};

double dbm_per_hz_to_w_per_hz(double dbm_per_hz);
/// Noise power over a band, W.
double noise_power_w(double noise_psd_dbm_per_hz, double bandwidth_hz);
/// (c / (4 pi f))^2 * d^-alpha.
double comm_pathloss(double distance_m, double carrier_frequency_hz, double exponent);
/// rcs * (c / (4 pi f))^2 / (4 pi R_tx^2 R_rx^2).
double radar_gain_sq(double tx_range_m, double rx_range_m, double carrier_frequency_hz, double rcs_m2);
/// RMS bandwidth of a flat spectrum of width B: B / sqrt(12).
double flat_effective_bandwidth(double bandwidth_hz);
double sensing_constant(double eff_bandwidth_hz, double obs_duration_s, double noise_level);

RadarChannels make_radar_channels(Eigen::MatrixXcd h_rad, double noise_level, Eigen::VectorXd eff_bandwidth,
                                  double obs_duration);

/// Rician communication channels with free-space-referenced pathloss. Every
/// link (m, l) draws from its own streams keyed by (seed, tag, m, l), so the
/// result is a pure function of (scene, cfg).
CommChannels generate_comm_channels(const Scene<double>& scene, const ChannelConfig& cfg);

/// Deterministic bistatic radar-equation magnitudes with a seeded phase per
/// (n, m).
RadarChannels generate_radar_channels(const Scene<double>& scene, const ChannelConfig& cfg);

ChannelSet generate_channels(const Scene<double>& scene, const ChannelConfig& cfg);

/// Reads explicit channels from the `channel.explicit` block of a scenario
/// document. Throws SchemaError / DimensionError.
ChannelSet load_channels(const nlohmann::json& block, const Scene<double>& scene);

nlohmann::json to_json(const ChannelConfig& cfg);
ChannelConfig channel_config_from_json(const nlohmann::json& block);
nlohmann::json channels_to_json(const ChannelSet& channels);

}  // namespace isac
