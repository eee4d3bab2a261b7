#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace isac {

/// Exact SI speed of light, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

/// Distances below this are a degenerate scene (meters).
inline constexpr double kMinDistance = 1e-6;

class SceneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar = double>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

/// Positions of transmitters, sensing receivers, communication users (one per
/// transmitter) and the a-priori target location, all in meters.
template <typename Scalar = double>
struct Scene {
  std::vector<Point2<Scalar>> transmitters;
  std::vector<Point2<Scalar>> sensing_receivers;
  std::vector<Point2<Scalar>> cu_receivers;
  Point2<Scalar> target = Point2<Scalar>::Zero();

  std::size_t num_transmitters() const { return transmitters.size(); }
  std::size_t num_receivers() const { return sensing_receivers.size(); }

  template <typename Other>
  Scene<Other> cast() const {
    Scene<Other> out;
    for (const auto& p : transmitters) out.transmitters.push_back(p.template cast<Other>());
    for (const auto& p : sensing_receivers) out.sensing_receivers.push_back(p.template cast<Other>());
    for (const auto& p : cu_receivers) out.cu_receivers.push_back(p.template cast<Other>());
    out.target = target.template cast<Other>();
    return out;
  }
};

/// Throws SceneError unless the scene satisfies every structural invariant.
template <typename Scalar>
void validate(const Scene<Scalar>& scene) {
  using std::isfinite;
  if (scene.transmitters.empty()) throw SceneError("scene needs at least one transmitter");
  if (scene.sensing_receivers.empty()) throw SceneError("scene needs at least one sensing receiver");
  if (scene.cu_receivers.size() != scene.transmitters.size())
    throw SceneError("scene needs exactly one CU receiver per transmitter");
  auto finite = [](const Point2<Scalar>& p) { return isfinite(p.x()) && isfinite(p.y()); };
  auto check = [&](const std::vector<Point2<Scalar>>& pts, const char* what) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!finite(pts[i])) throw SceneError(std::string(what) + " " + std::to_string(i) + " is not finite");
  };
  check(scene.transmitters, "transmitter");
  check(scene.sensing_receivers, "sensing receiver");
  check(scene.cu_receivers, "CU receiver");
  if (!finite(scene.target)) throw SceneError("target is not finite");
  for (std::size_t i = 0; i < scene.transmitters.size(); ++i)
    if ((scene.transmitters[i] - scene.target).norm() < Scalar(kMinDistance))
      throw SceneError("target coincides with transmitter " + std::to_string(i));
  for (std::size_t i = 0; i < scene.sensing_receivers.size(); ++i)
    if ((scene.sensing_receivers[i] - scene.target).norm() < Scalar(kMinDistance))
      throw SceneError("target coincides with sensing receiver " + std::to_string(i));
}

namespace detail {
template <typename Scalar>
Scalar checked_range(const std::vector<Point2<Scalar>>& pts, std::size_t i, const Point2<Scalar>& target,
                     const char* what) {
  if (i >= pts.size())
    throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " out of range");
  const Scalar d = (pts[i] - target).norm();
  if (!(d >= Scalar(kMinDistance)))
    throw SceneError(std::string("degenerate scene: target coincides with ") + what + " " + std::to_string(i));
  return d;
}
}  // namespace detail

/// Distance from transmitter m (0-based) to the target.
template <typename Scalar>
Scalar tx_range(const Scene<Scalar>& scene, std::size_t m) {
  return detail::checked_range(scene.transmitters, m, scene.target, "transmitter");
}

/// Distance from sensing receiver n (0-based) to the target.
template <typename Scalar>
Scalar rx_range(const Scene<Scalar>& scene, std::size_t n) {
  return detail::checked_range(scene.sensing_receivers, n, scene.target, "sensing receiver");
}

/// Bistatic delay of the path transmitter m -> target -> receiver n, seconds.
template <typename Scalar>
Scalar propagation_delay(const Scene<Scalar>& scene, std::size_t n, std::size_t m) {
  return (tx_range(scene, m) + rx_range(scene, n)) / Scalar(kSpeedOfLight);
}

/// Gradient of the bistatic range R_tx + R_rx with respect to the target
/// position, negated: the sum of the unit vectors from the target towards
/// transmitter m and towards receiver n. Each component lies in [-2, 2].
template <typename Scalar>
Point2<Scalar> direction_terms(const Scene<Scalar>& scene, std::size_t n, std::size_t m) {
  const Scalar rt = tx_range(scene, m);
  const Scalar rr = rx_range(scene, n);
  return (scene.transmitters[m] - scene.target) / rt + (scene.sensing_receivers[n] - scene.target) / rr;
}

}  // namespace isac
