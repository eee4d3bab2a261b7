#include "doctest.h"

#include <cmath>
#include <numbers>

#include "isac/channel.hpp"
#include "isac/errors.hpp"

using namespace isac;
using P = Point2<double>;

namespace {

Scene<double> two_tx() {
  Scene<double> s;
  s.transmitters = {P(-50, 0), P(0, 50)};
  s.sensing_receivers = {P(-50, -10), P(50, 10)};
  s.cu_receivers = {P(-20, 0), P(20, 0)};
  s.target = P(30, 0);
  return s;
}

nlohmann::json explicit_identity() {
  return {{"comm_gain", {{"re", {{1.0, 0.0}, {0.0, 1.0}}}}},
          {"noise_power_w", 1.0},
          {"radar_gain", {{"re", {{1.0, 1.0}, {1.0, 1.0}}}}},
          {"radar_noise_level_w_per_hz", 1.0},
          {"eff_bandwidth_hz", 1.0},
          {"obs_duration_s", 1.0}};
}

}  // namespace

TEST_CASE("noise power from a density") {
  // -174 dBm/Hz over 1 MHz is 10^-11.4 mW.
  CHECK(noise_power_w(-174.0, 1e6) == doctest::Approx(std::pow(10.0, -14.4)).epsilon(1e-12));
  CHECK(noise_power_w(-174.0, 1e6) == doctest::Approx(3.981e-15).epsilon(1e-3));
}

TEST_CASE("sensing constant") {
  // Independent long double evaluation of 8 pi^2 beta^2 T / (sigma^2 c^2).
  const long double beta = 1e6L / std::sqrt(12.0L), T = 1e-3L, sigma = 3.981e-15L, c = 299792458.0L;
  const long double pi = 3.141592653589793238462643383279L;
  const long double expect = 8.0L * pi * pi * beta * beta * T / (sigma * c * c);
  CHECK(sensing_constant(flat_effective_bandwidth(1e6), 1e-3, 3.981e-15) ==
        doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
}

TEST_CASE("radar gain follows the two-way range law") {
  const double g = radar_gain_sq(40.0, 60.0, 6e9, 1.0);
  CHECK(radar_gain_sq(80.0, 120.0, 6e9, 1.0) == doctest::Approx(g / 16.0).epsilon(1e-14));
}

TEST_CASE("generation is a pure function of the seed") {
  ChannelConfig cfg;
  cfg.seed = 42;
  const auto a = generate_channels(two_tx(), cfg);
  const auto b = generate_channels(two_tx(), cfg);
  CHECK(a.comm.h == b.comm.h);
  CHECK(a.radar.h_rad == b.radar.h_rad);
  cfg.seed = 43;
  const auto c = generate_channels(two_tx(), cfg);
  CHECK(a.comm.h != c.comm.h);
  // Radar magnitudes are deterministic; only phases move with the seed.
  CHECK(a.radar.gain_sq().isApprox(c.radar.gain_sq(), 1e-14));
}

TEST_CASE("line-of-sight limit recovers the pathloss") {
  ChannelConfig cfg;
  cfg.rician_k_db = 90.0;  // K = 1e9
  cfg.cross_link_isolation_db = 0.0;
  const auto s = two_tx();
  const auto comm = generate_comm_channels(s, cfg);
  for (Eigen::Index m = 0; m < 2; ++m)
    for (Eigen::Index l = 0; l < 2; ++l) {
      const double d = (s.cu_receivers[m] - s.transmitters[l]).norm();
      const double expect = std::sqrt(comm_pathloss(d, cfg.carrier_frequency_hz, cfg.pathloss_exponent_comm));
      CHECK(std::abs(comm.h(m, l)) == doctest::Approx(expect).epsilon(1e-3));
    }
}

TEST_CASE("cross-link isolation only touches interfering links") {
  ChannelConfig a, b;
  a.cross_link_isolation_db = 0.0;
  b.cross_link_isolation_db = 20.0;
  const auto ha = generate_comm_channels(two_tx(), a).gain_sq();
  const auto hb = generate_comm_channels(two_tx(), b).gain_sq();
  CHECK(hb(0, 0) == doctest::Approx(ha(0, 0)));
  CHECK(hb(1, 1) == doctest::Approx(ha(1, 1)));
  CHECK(hb(0, 1) == doctest::Approx(ha(0, 1) / 100.0));
  CHECK(hb(1, 0) == doctest::Approx(ha(1, 0) / 100.0));
}

TEST_CASE("explicit channels") {
  Scene<double> s = two_tx();
  const auto set = load_channels(explicit_identity(), s);
  CHECK(set.comm.h(0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(set.comm.h(1, 1) == std::complex<double>(1.0, 0.0));
  CHECK(set.comm.h(0, 1) == std::complex<double>(0.0, 0.0));
  CHECK(set.comm.noise_power(1) == 1.0);

  auto zero_diag = explicit_identity();
  zero_diag["comm_gain"]["re"][1][1] = 0.0;
  CHECK_THROWS_AS(load_channels(zero_diag, s), SchemaError);

  auto wrong_n = explicit_identity();
  wrong_n["radar_gain"]["re"] = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  try {
    load_channels(wrong_n, s);
    FAIL("expected a dimension error");
  } catch (const DimensionError& e) {
    CHECK(e.field().find("radar_gain") != std::string::npos);
  }

  auto unknown = explicit_identity();
  unknown["bogus"] = 1;
  CHECK_THROWS_AS(load_channels(unknown, s), SchemaError);
}

TEST_CASE("explicit channels round trip") {
  ChannelConfig cfg;
  const auto set = generate_channels(two_tx(), cfg);
  const auto back = load_channels(channels_to_json(set), two_tx());
  CHECK(back.comm.h == set.comm.h);
  CHECK(back.comm.noise_power == set.comm.noise_power);
  CHECK(back.radar.h_rad == set.radar.h_rad);
  CHECK(back.radar.xi == set.radar.xi);
}

TEST_CASE("channel config validation") {
  ChannelConfig cfg;
  cfg.bandwidth_hz = 0.0;
  CHECK_THROWS(cfg.validate());
  CHECK_THROWS_AS(channel_config_from_json({{"carrier_frequency_hz", "6 GHz"}}), SchemaError);
  const auto back = channel_config_from_json(to_json(ChannelConfig{}));
  CHECK(back.carrier_frequency_hz == 6e9);
  CHECK(back.seed == 1);
}
