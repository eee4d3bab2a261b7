#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "isac/geometry.hpp"

namespace isac {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// The 2x2 Fisher information counts as singular when its determinant is at
/// most this fraction of the product of its diagonal. Relative, because the
/// entries scale with power and path gain over many decades.
inline constexpr double kFimRelativeFloor = 1e-12;

template <typename Scalar>
bool fim_singular(Scalar fxx, Scalar fyy, Scalar det) {
  return !(fxx > Scalar(0) && fyy > Scalar(0) && det > Scalar(kFimRelativeFloor) * fxx * fyy);
}

/// SINR floors Gamma_m (linear) and the CRLB ceiling tau (m^2).
template <typename Scalar = double>
struct ProblemSpec {
  VectorX<Scalar> sinr_thresholds;
  Scalar crlb_ceiling = Scalar(0);

  Eigen::Index size() const { return sinr_thresholds.size(); }

  void validate() const {
    if (sinr_thresholds.size() == 0) throw std::invalid_argument("problem needs at least one SINR threshold");
    if (!(sinr_thresholds.array() > Scalar(0)).all()) throw std::invalid_argument("SINR thresholds must be positive");
    if (!(crlb_ceiling > Scalar(0))) throw std::invalid_argument("CRLB ceiling must be positive");
  }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Row m of G is g_m = [-Gamma_m |h_m1|^2, ..., |h_mm|^2, ..., -Gamma_m |h_mM|^2]
/// and gamma_tilde(m) = Gamma_m sigma_m^2, so that the SINR floor of user m is
/// the linear row G.row(m) * p >= gamma_tilde(m).
template <typename Scalar = double>
struct SinrSystem {
  MatrixX<Scalar> G;
  VectorX<Scalar> gamma_tilde;

  Eigen::Index size() const { return G.rows(); }
};

/// Per-transmitter Fisher information weights. The Fisher information under
/// power p is sum_m p_m [[g_a, g_c], [g_c, g_b]]_m; b = g_a + g_b and
/// A = g_a g_b^T - g_c g_c^T give trace(CRLB) = b^T p / p^T A p.
template <typename Scalar = double>
struct SensingCoefficients {
  VectorX<Scalar> g_a, g_b, g_c;
  VectorX<Scalar> b;
  MatrixX<Scalar> A;

  Eigen::Index size() const { return g_a.size(); }

  static SensingCoefficients from_components(VectorX<Scalar> ga, VectorX<Scalar> gb, VectorX<Scalar> gc) {
    if (ga.size() != gb.size() || ga.size() != gc.size())
      throw std::invalid_argument("sensing coefficient vectors must share one length");
    SensingCoefficients s;
    s.g_a = std::move(ga);
    s.g_b = std::move(gb);
    s.g_c = std::move(gc);
    s.b = s.g_a + s.g_b;
    s.A = s.g_a * s.g_b.transpose() - s.g_c * s.g_c.transpose();
    return s;
  }
};

namespace detail {
template <typename Scalar>
void check_power(const VectorX<Scalar>& p, Eigen::Index size) {
  if (p.size() != size)
    throw std::invalid_argument("power vector has " + std::to_string(p.size()) + " entries, expected " +
                                std::to_string(size));
  if (!(p.array() >= Scalar(0)).all()) throw std::invalid_argument("power vector must be non-negative");
}
}  // namespace detail

/// SINR of user m: |h_mm|^2 p_m / (sum_{l != m} |h_ml|^2 p_l + sigma_m^2).
template <typename Scalar>
Scalar compute_sinr(const MatrixX<Scalar>& gain_sq, const VectorX<Scalar>& noise_power, const VectorX<Scalar>& p,
                    Eigen::Index m) {
  if (m < 0 || m >= gain_sq.rows()) throw std::out_of_range("user index out of range");
  detail::check_power(p, gain_sq.cols());
  Scalar interference = noise_power(m);
  for (Eigen::Index l = 0; l < gain_sq.cols(); ++l)
    if (l != m) interference += gain_sq(m, l) * p(l);
  return gain_sq(m, m) * p(m) / interference;
}

template <typename Scalar>
VectorX<Scalar> compute_sinrs(const MatrixX<Scalar>& gain_sq, const VectorX<Scalar>& noise_power,
                              const VectorX<Scalar>& p) {
  VectorX<Scalar> out(gain_sq.rows());
  for (Eigen::Index m = 0; m < out.size(); ++m) out(m) = compute_sinr(gain_sq, noise_power, p, m);
  return out;
}

inline double compute_sinr(const CommChannels& comm, const Eigen::VectorXd& p, Eigen::Index m) {
  return compute_sinr<double>(comm.gain_sq(), comm.noise_power, p, m);
}

inline Eigen::VectorXd compute_sinrs(const CommChannels& comm, const Eigen::VectorXd& p) {
  return compute_sinrs<double>(comm.gain_sq(), comm.noise_power, p);
}

template <typename Scalar>
SinrSystem<Scalar> build_sinr_system(const MatrixX<Scalar>& gain_sq, const VectorX<Scalar>& noise_power,
                                     const ProblemSpec<Scalar>& spec) {
  const auto M = gain_sq.rows();
  if (gain_sq.cols() != M || noise_power.size() != M || spec.size() != M)
    throw std::invalid_argument("SINR system dimensions disagree");
  SinrSystem<Scalar> sys;
  sys.G.resize(M, M);
  for (Eigen::Index m = 0; m < M; ++m)
    for (Eigen::Index l = 0; l < M; ++l)
      sys.G(m, l) = l == m ? gain_sq(m, m) : -spec.sinr_thresholds(m) * gain_sq(m, l);
  sys.gamma_tilde = spec.sinr_thresholds.cwiseProduct(noise_power);
  return sys;
}

inline SinrSystem<double> build_sinr_system(const CommChannels& comm, const ProblemSpec<double>& spec) {
  return build_sinr_system<double>(comm.gain_sq(), comm.noise_power, spec);
}

/// g_a(m) = xi_m sum_n |h_nm|^2 dx(n,m)^2, g_b with dy^2, g_c with dx dy.
template <typename Scalar>
SensingCoefficients<Scalar> sensing_coefficients(const Scene<Scalar>& scene, const MatrixX<Scalar>& radar_gain_sq,
                                                 const VectorX<Scalar>& xi) {
  validate(scene);
  const auto M = static_cast<Eigen::Index>(scene.num_transmitters());
  const auto N = static_cast<Eigen::Index>(scene.num_receivers());
  if (radar_gain_sq.rows() != N || radar_gain_sq.cols() != M || xi.size() != M)
    throw std::invalid_argument("radar channel dimensions disagree with the scene");
  VectorX<Scalar> ga = VectorX<Scalar>::Zero(M), gb = VectorX<Scalar>::Zero(M), gc = VectorX<Scalar>::Zero(M);
  for (Eigen::Index m = 0; m < M; ++m) {
    for (Eigen::Index n = 0; n < N; ++n) {
      const Point2<Scalar> d = direction_terms(scene, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
      const Scalar w = radar_gain_sq(n, m);
      ga(m) += w * d.x() * d.x();
      gb(m) += w * d.y() * d.y();
      gc(m) += w * d.x() * d.y();
    }
  }
  return SensingCoefficients<Scalar>::from_components(xi.cwiseProduct(ga), xi.cwiseProduct(gb), xi.cwiseProduct(gc));
}

inline SensingCoefficients<double> sensing_coefficients(const Scene<double>& scene, const RadarChannels& radar) {
  return sensing_coefficients<double>(scene, radar.gain_sq(), radar.xi);
}

/// Entries and determinant of the Fisher information under power p. The
/// determinant equals p^T A p. Sums run in extended precision because F is
/// badly conditioned when the target sits near the line through a transmitter
/// and a receiver, and det F cancels to a tiny fraction of F(0,0) F(1,1).
template <typename Scalar>
struct FimTerms {
  Scalar xx, yy, xy, det;
  bool singular() const { return fim_singular(xx, yy, det); }
};

template <typename Scalar>
FimTerms<Scalar> fim_terms(const SensingCoefficients<Scalar>& c, const VectorX<Scalar>& p) {
  detail::check_power(p, c.size());
  using Wide = std::conditional_t<std::is_same_v<Scalar, double>, long double, Scalar>;
  Wide xx(0), yy(0), xy(0);
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    xx += Wide(c.g_a(m)) * Wide(p(m));
    yy += Wide(c.g_b(m)) * Wide(p(m));
    xy += Wide(c.g_c(m)) * Wide(p(m));
  }
  return {Scalar(xx), Scalar(yy), Scalar(xy), Scalar(xx * yy - xy * xy)};
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> fisher_information(const SensingCoefficients<Scalar>& c, const VectorX<Scalar>& p) {
  const auto t = fim_terms(c, p);
  Eigen::Matrix<Scalar, 2, 2> F;
  F << t.xx, t.xy, t.xy, t.yy;
  return F;
}

/// Inverse of the Fisher information, by explicit 2x2 inversion. m^2.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> crlb_matrix(const SensingCoefficients<Scalar>& c, const VectorX<Scalar>& p) {
  const auto t = fim_terms(c, p);
  if (t.singular())
    throw SingularFimError("Fisher information is singular: target unobservable under this power vector");
  Eigen::Matrix<Scalar, 2, 2> C;
  C << t.yy, -t.xy, -t.xy, t.xx;
  return C / t.det;
}

/// b^T p / p^T A p: sum of the x and y CRLBs.
template <typename Scalar>
Scalar crlb_sum(const SensingCoefficients<Scalar>& c, const VectorX<Scalar>& p) {
  const auto t = fim_terms(c, p);
  if (t.singular()) throw SingularFimError("p^T A p is not positive: target unobservable");
  return (t.xx + t.yy) / t.det;
}

}  // namespace isac
