#include "doctest.h"

#include <cmath>
#include <random>

#include "isac/geometry.hpp"

using namespace isac;
using P = Point2<double>;

namespace {

Scene<double> single(P tx, P rx, P target) {
  Scene<double> s;
  s.transmitters = {tx};
  s.sensing_receivers = {rx};
  s.cu_receivers = {P(100, 100)};
  s.target = target;
  return s;
}

Scene<double> two_tx() {
  Scene<double> s;
  s.transmitters = {P(-50, 0), P(0, 50)};
  s.sensing_receivers = {P(-50, -10), P(50, 10)};
  s.cu_receivers = {P(-20, 0), P(20, 0)};
  s.target = P(30, 0);
  return s;
}

}  // namespace

TEST_CASE("ranges") {
  CHECK(tx_range(single(P(3, 4), P(0, 10), P(0, 0)), 0) == doctest::Approx(5.0));
  CHECK(rx_range(single(P(3, 4), P(0, 10), P(0, 0)), 0) == doctest::Approx(10.0));
  const auto s = two_tx();
  CHECK(tx_range(s, 0) == doctest::Approx(80.0));
  CHECK(rx_range(s, 1) == doctest::Approx(std::sqrt(500.0)));
  CHECK_THROWS_AS(tx_range(s, 2), std::out_of_range);
}

TEST_CASE("degenerate scenes are rejected") {
  CHECK_THROWS_AS(tx_range(single(P(0, 0), P(0, 10), P(0, 0)), 0), SceneError);
  CHECK_THROWS_AS(rx_range(single(P(3, 4), P(0, 0), P(0, 0)), 0), SceneError);
  CHECK_THROWS_AS(validate(single(P(0, 0), P(0, 10), P(0, 0))), SceneError);

  auto s = two_tx();
  s.cu_receivers.pop_back();
  CHECK_THROWS_AS(validate(s), SceneError);
  s = two_tx();
  s.target.x() = std::nan("");
  CHECK_THROWS_AS(validate(s), SceneError);
  CHECK_NOTHROW(validate(two_tx()));
}

TEST_CASE("propagation delay") {
  CHECK(propagation_delay(single(P(3, 4), P(0, 10), P(0, 0)), 0, 0) == doctest::Approx(15.0 / kSpeedOfLight));
  CHECK(propagation_delay(single(P(7, 0), P(7, 0), P(0, 0)), 0, 0) == doctest::Approx(14.0 / kSpeedOfLight));
  // Receiver 1 at [-50,-10]: sqrt(80^2 + 10^2) from the target.
  CHECK(propagation_delay(two_tx(), 0, 0) ==
        doctest::Approx((80.0 + std::sqrt(80.0 * 80.0 + 100.0)) / kSpeedOfLight));
}

TEST_CASE("direction terms") {
  auto d = direction_terms(single(P(1, 0), P(1, 0), P(0, 0)), 0, 0);
  CHECK(d.x() == doctest::Approx(2.0));
  CHECK(d.y() == doctest::Approx(0.0));
  d = direction_terms(single(P(1, 0), P(-1, 0), P(0, 0)), 0, 0);
  CHECK(d.norm() == doctest::Approx(0.0));
  d = direction_terms(single(P(0, 1), P(1, 0), P(0, 0)), 0, 0);
  CHECK(d.x() == doctest::Approx(1.0));
  CHECK(d.y() == doctest::Approx(1.0));
}

TEST_CASE("property: direction terms match a finite-difference gradient of the bistatic range") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    const auto s = single(P(u(gen), u(gen)), P(u(gen), u(gen)), P(u(gen), u(gen)));
    const auto d = direction_terms(s, 0, 0);
    CHECK(std::abs(d.x()) <= 2.0);
    CHECK(std::abs(d.y()) <= 2.0);
    const double h = 1e-6;
    auto range = [&](P t) { return (s.transmitters[0] - t).norm() + (s.sensing_receivers[0] - t).norm(); };
    const double gx = (range(s.target + P(h, 0)) - range(s.target - P(h, 0))) / (2 * h);
    const double gy = (range(s.target + P(0, h)) - range(s.target - P(0, h))) / (2 * h);
    CHECK(d.x() == doctest::Approx(-gx).epsilon(1e-5));
    CHECK(d.y() == doctest::Approx(-gy).epsilon(1e-5));
  }
}

TEST_CASE("long double scenes") {
  const auto s = single(P(3, 4), P(0, 10), P(0, 0)).cast<long double>();
  CHECK(static_cast<double>(tx_range(s, 0)) == doctest::Approx(5.0));
}
