#include "isac/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isac/errors.hpp"
#include "isac/rng.hpp"
#include "json_fields.hpp"

namespace isac {

namespace {

constexpr double kPi = std::numbers::pi;

double wavelength_factor(double carrier_frequency_hz) {
  const double f = kSpeedOfLight / (4.0 * kPi * carrier_frequency_hz);
  return f * f;
}

}  // namespace

void ChannelConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(carrier_frequency_hz, "carrier_frequency_hz");
  positive(bandwidth_hz, "bandwidth_hz");
  positive(rcs_m2, "rcs_m2");
  positive(obs_duration_s, "obs_duration_s");
  positive(pathloss_exponent_comm, "pathloss_exponent_comm");
  if (!std::isfinite(rician_k_db)) throw std::invalid_argument("rician_k_db must be finite");
  if (!std::isfinite(noise_psd_dbm_per_hz)) throw std::invalid_argument("noise_psd_dbm_per_hz must be finite");
  if (!std::isfinite(cross_link_isolation_db) || cross_link_isolation_db < 0.0)
    throw std::invalid_argument("cross_link_isolation_db must be finite and non-negative");
}

void CommChannels::validate() const {
  if (h.rows() == 0 || h.rows() != h.cols()) throw std::invalid_argument("communication channel must be square M x M");
  if (noise_power.size() != h.rows()) throw std::invalid_argument("noise_power must have M entries");
  for (Eigen::Index m = 0; m < h.rows(); ++m) {
    if (!(std::abs(h(m, m)) > 0.0)) throw std::invalid_argument("direct link " + std::to_string(m) + " has zero gain");
    if (!(noise_power(m) > 0.0)) throw std::invalid_argument("noise_power must be strictly positive");
  }
  if (!h.allFinite() || !noise_power.allFinite()) throw std::invalid_argument("communication channel must be finite");
}

void RadarChannels::validate() const {
  const auto m = h_rad.cols();
  if (h_rad.rows() == 0 || m == 0) throw std::invalid_argument("radar channel must be N x M with N, M >= 1");
  if (eff_bandwidth.size() != m || xi.size() != m)
    throw std::invalid_argument("eff_bandwidth and xi must have M entries");
  if (!(noise_level > 0.0) || !(obs_duration > 0.0))
    throw std::invalid_argument("radar noise level and observation duration must be positive");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(xi(i) > 0.0)) throw std::invalid_argument("xi must be strictly positive");
    const double expect = sensing_constant(eff_bandwidth(i), obs_duration, noise_level);
    if (std::abs(xi(i) - expect) > 1e-12 * std::abs(expect))
      throw std::invalid_argument("xi inconsistent with effective bandwidth, T and noise level");
  }
}

double dbm_per_hz_to_w_per_hz(double dbm_per_hz) { return std::pow(10.0, (dbm_per_hz - 30.0) / 10.0); }

double noise_power_w(double noise_psd_dbm_per_hz, double bandwidth_hz) {
  return dbm_per_hz_to_w_per_hz(noise_psd_dbm_per_hz) * bandwidth_hz;
}

double comm_pathloss(double distance_m, double carrier_frequency_hz, double exponent) {
  return wavelength_factor(carrier_frequency_hz) * std::pow(distance_m, -exponent);
}

double radar_gain_sq(double tx_range_m, double rx_range_m, double carrier_frequency_hz, double rcs_m2) {
  const double r2 = tx_range_m * tx_range_m * rx_range_m * rx_range_m;
  return rcs_m2 * wavelength_factor(carrier_frequency_hz) / (4.0 * kPi * r2);
}

double flat_effective_bandwidth(double bandwidth_hz) { return bandwidth_hz / std::sqrt(12.0); }

double sensing_constant(double eff_bandwidth_hz, double obs_duration_s, double noise_level) {
  return 8.0 * kPi * kPi * eff_bandwidth_hz * eff_bandwidth_hz * obs_duration_s /
         (noise_level * kSpeedOfLight * kSpeedOfLight);
}

RadarChannels make_radar_channels(Eigen::MatrixXcd h_rad, double noise_level, Eigen::VectorXd eff_bandwidth,
                                  double obs_duration) {
  RadarChannels r;
  r.h_rad = std::move(h_rad);
  r.noise_level = noise_level;
  r.eff_bandwidth = std::move(eff_bandwidth);
  r.obs_duration = obs_duration;
  r.xi.resize(r.eff_bandwidth.size());
  for (Eigen::Index m = 0; m < r.xi.size(); ++m)
    r.xi(m) = sensing_constant(r.eff_bandwidth(m), obs_duration, noise_level);
  r.validate();
  return r;
}

CommChannels generate_comm_channels(const Scene<double>& scene, const ChannelConfig& cfg) {
  validate(scene);
  cfg.validate();
  const auto M = static_cast<Eigen::Index>(scene.num_transmitters());
  const double k = std::pow(10.0, cfg.rician_k_db / 10.0);
  const double los = std::sqrt(k / (k + 1.0));
  const double nlos = std::sqrt(1.0 / (k + 1.0));
  const double isolation = std::pow(10.0, -cfg.cross_link_isolation_db / 10.0);

  CommChannels out;
  out.h.resize(M, M);
  for (Eigen::Index m = 0; m < M; ++m) {
    for (Eigen::Index l = 0; l < M; ++l) {
      const double d = (scene.cu_receivers[m] - scene.transmitters[l]).norm();
      if (d < kMinDistance)
        throw SceneError("CU receiver " + std::to_string(m) + " coincides with transmitter " + std::to_string(l));
      double pl = comm_pathloss(d, cfg.carrier_frequency_hz, cfg.pathloss_exponent_comm);
      if (l != m) pl *= isolation;
      const auto mu = static_cast<std::uint64_t>(m), lu = static_cast<std::uint64_t>(l);
      RandomStream phase_rng(cfg.seed, StreamTag::CommPhase, {mu, lu});
      RandomStream scatter_rng(cfg.seed, StreamTag::CommScatter, {mu, lu});
      const double theta = phase_rng.phase();
      const double re = scatter_rng.normal();
      const double im = scatter_rng.normal();
      const std::complex<double> g(re / std::numbers::sqrt2, im / std::numbers::sqrt2);
      out.h(m, l) = std::sqrt(pl) * (los * std::polar(1.0, theta) + nlos * g);
    }
  }
  out.noise_power = Eigen::VectorXd::Constant(M, noise_power_w(cfg.noise_psd_dbm_per_hz, cfg.bandwidth_hz));
  out.validate();
  return out;
}

RadarChannels generate_radar_channels(const Scene<double>& scene, const ChannelConfig& cfg) {
  validate(scene);
  cfg.validate();
  const auto M = static_cast<Eigen::Index>(scene.num_transmitters());
  const auto N = static_cast<Eigen::Index>(scene.num_receivers());
  Eigen::MatrixXcd h(N, M);
  for (Eigen::Index n = 0; n < N; ++n) {
    for (Eigen::Index m = 0; m < M; ++m) {
      const double mag2 = radar_gain_sq(tx_range(scene, static_cast<std::size_t>(m)),
                                        rx_range(scene, static_cast<std::size_t>(n)), cfg.carrier_frequency_hz,
                                        cfg.rcs_m2);
      RandomStream rng(cfg.seed, StreamTag::RadarPhase,
                       {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)});
      h(n, m) = std::polar(std::sqrt(mag2), rng.phase());
    }
  }
  return make_radar_channels(std::move(h), dbm_per_hz_to_w_per_hz(cfg.noise_psd_dbm_per_hz),
                             Eigen::VectorXd::Constant(M, flat_effective_bandwidth(cfg.bandwidth_hz)),
                             cfg.obs_duration_s);
}

ChannelSet generate_channels(const Scene<double>& scene, const ChannelConfig& cfg) {
  return {generate_comm_channels(scene, cfg), generate_radar_channels(scene, cfg)};
}

namespace {

using namespace json_fields;

Eigen::MatrixXcd complex_matrix(const json& block, std::string_view key, const std::string& path, Eigen::Index rows,
                                Eigen::Index cols) {
  const json& g = require(block, key, path);
  const auto gpath = child(path, key);
  check_keys(g, {"re", "im"}, gpath);
  Eigen::MatrixXd re = as_matrix(require(g, "re", gpath), child(gpath, "re"), rows, cols);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(rows, cols);
  if (g.contains("im")) im = as_matrix(g["im"], child(gpath, "im"), rows, cols);
  Eigen::MatrixXcd out(rows, cols);
  out.real() = re;
  out.imag() = im;
  return out;
}

}  // namespace

ChannelSet load_channels(const json& block, const Scene<double>& scene) {
  const std::string path = "/channel/explicit";
  check_keys(block,
             {"comm_gain", "noise_power_w", "radar_gain", "radar_noise_level_w_per_hz", "eff_bandwidth_hz",
              "obs_duration_s"},
             path);
  const auto M = static_cast<Eigen::Index>(scene.num_transmitters());
  const auto N = static_cast<Eigen::Index>(scene.num_receivers());

  ChannelSet out;
  out.comm.h = complex_matrix(block, "comm_gain", path, M, M);
  out.comm.noise_power = scalar_or_vector(require(block, "noise_power_w", path), child(path, "noise_power_w"), M);
  for (Eigen::Index m = 0; m < M; ++m) {
    if (!(std::abs(out.comm.h(m, m)) > 0.0))
      throw SchemaError(child(path, "comm_gain"), "direct link " + std::to_string(m) + " has zero gain");
    if (!(out.comm.noise_power(m) > 0.0))
      throw SchemaError(child(path, "noise_power_w"), "noise power must be strictly positive");
  }

  const Eigen::MatrixXcd h_rad = complex_matrix(block, "radar_gain", path, N, M);
  const double level = number(block, "radar_noise_level_w_per_hz", path);
  const double T = number(block, "obs_duration_s", path);
  const Eigen::VectorXd beta =
      scalar_or_vector(require(block, "eff_bandwidth_hz", path), child(path, "eff_bandwidth_hz"), M);
  if (!(level > 0.0)) throw SchemaError(child(path, "radar_noise_level_w_per_hz"), "must be positive");
  if (!(T > 0.0)) throw SchemaError(child(path, "obs_duration_s"), "must be positive");
  if (!(beta.array() > 0.0).all()) throw SchemaError(child(path, "eff_bandwidth_hz"), "must be positive");
  out.radar = make_radar_channels(h_rad, level, beta, T);
  return out;
}

json to_json(const ChannelConfig& cfg) {
  return json{{"carrier_frequency_hz", cfg.carrier_frequency_hz},
              {"bandwidth_hz", cfg.bandwidth_hz},
              {"rician_k_db", cfg.rician_k_db},
              {"noise_psd_dbm_per_hz", cfg.noise_psd_dbm_per_hz},
              {"pathloss_exponent_comm", cfg.pathloss_exponent_comm},
              {"cross_link_isolation_db", cfg.cross_link_isolation_db},
              {"rcs_m2", cfg.rcs_m2},
              {"obs_duration_s", cfg.obs_duration_s},
              {"seed", cfg.seed}};
}

ChannelConfig channel_config_from_json(const json& block) {
  const std::string path = "/channel/generate";
  check_keys(block,
             {"carrier_frequency_hz", "bandwidth_hz", "rician_k_db", "noise_psd_dbm_per_hz", "pathloss_exponent_comm",
              "cross_link_isolation_db", "rcs_m2", "obs_duration_s", "seed"},
             path);
  ChannelConfig c;
  c.carrier_frequency_hz = number_or(block, "carrier_frequency_hz", path, c.carrier_frequency_hz);
  c.bandwidth_hz = number_or(block, "bandwidth_hz", path, c.bandwidth_hz);
  c.rician_k_db = number_or(block, "rician_k_db", path, c.rician_k_db);
  c.noise_psd_dbm_per_hz = number_or(block, "noise_psd_dbm_per_hz", path, c.noise_psd_dbm_per_hz);
  c.pathloss_exponent_comm = number_or(block, "pathloss_exponent_comm", path, c.pathloss_exponent_comm);
  c.cross_link_isolation_db = number_or(block, "cross_link_isolation_db", path, c.cross_link_isolation_db);
  c.rcs_m2 = number_or(block, "rcs_m2", path, c.rcs_m2);
  c.obs_duration_s = number_or(block, "obs_duration_s", path, c.obs_duration_s);
  c.seed = unsigned_or(block, "seed", path, c.seed);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
  return c;
}

json channels_to_json(const ChannelSet& channels) {
  using json_fields::to_json;
  const auto& c = channels.comm;
  const auto& r = channels.radar;
  return json{{"comm_gain", {{"re", to_json(Eigen::MatrixXd(c.h.real()))}, {"im", to_json(Eigen::MatrixXd(c.h.imag()))}}},
              {"noise_power_w", to_json(c.noise_power)},
              {"radar_gain",
               {{"re", to_json(Eigen::MatrixXd(r.h_rad.real()))}, {"im", to_json(Eigen::MatrixXd(r.h_rad.imag()))}}},
              {"radar_noise_level_w_per_hz", r.noise_level},
              {"eff_bandwidth_hz", to_json(r.eff_bandwidth)},
              {"obs_duration_s", r.obs_duration}};
}

}  // namespace isac
