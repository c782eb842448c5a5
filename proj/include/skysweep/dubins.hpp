#ifndef SKYSWEEP_DUBINS_HPP_
#define SKYSWEEP_DUBINS_HPP_

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace skysweep {

/// Planar pose in math convention: heading is CCW from +x. Callers working
/// in compass bearings convert at the boundary (theta = pi/2 - psi).
template <class Scalar>
struct Pose2 {
  Eigen::Matrix<Scalar, 2, 1> position{Scalar(0), Scalar(0)};
  Scalar heading = Scalar(0);
};

enum class DubinsSeg : char { L = 'L', S = 'S', R = 'R' };

enum class DubinsWordId { LSL, RSR, LSR, RSL, RLR, LRL };

template <class Scalar>
struct DubinsPath {
  std::array<DubinsSeg, 3> segments{DubinsSeg::S, DubinsSeg::S, DubinsSeg::S};
  Eigen::Matrix<Scalar, 3, 1> lengths{Scalar(0), Scalar(0), Scalar(0)};  // normalized by radius
  Scalar radius = Scalar(1);
  Pose2<Scalar> start;
  DubinsWordId word = DubinsWordId::LSL;

  Scalar length() const { return lengths.sum() * radius; }

  /// Pose at arc length s from the start, s clamped to [0, length()].
  Pose2<Scalar> at(Scalar s) const;
};

namespace detail {

template <class Scalar>
Scalar mod2piT(Scalar x) {
  const Scalar two_pi = Scalar(2) * Scalar(M_PI);
  Scalar r = std::fmod(x, two_pi);
  if (r < Scalar(0)) r += two_pi;
  return r;
}

template <class Scalar>
using Lengths = std::optional<Eigen::Matrix<Scalar, 3, 1>>;

// The six canonical word solvers in the normalized frame: start at the
// origin with heading alpha, goal at (d, 0) with heading beta, unit radius.

template <class Scalar>
Lengths<Scalar> wordLSL(Scalar alpha, Scalar beta, Scalar d) {
  const Scalar tmp0 = d + std::sin(alpha) - std::sin(beta);
  const Scalar p_sq = Scalar(2) + d * d - Scalar(2) * std::cos(alpha - beta) +
                      Scalar(2) * d * (std::sin(alpha) - std::sin(beta));
  if (p_sq < Scalar(0)) return std::nullopt;
  const Scalar tmp1 = std::atan2(std::cos(beta) - std::cos(alpha), tmp0);
  return Eigen::Matrix<Scalar, 3, 1>{mod2piT(-alpha + tmp1), std::sqrt(p_sq),
                                     mod2piT(beta - tmp1)};
}

template <class Scalar>
Lengths<Scalar> wordRSR(Scalar alpha, Scalar beta, Scalar d) {
  const Scalar tmp0 = d - std::sin(alpha) + std::sin(beta);
  const Scalar p_sq = Scalar(2) + d * d - Scalar(2) * std::cos(alpha - beta) +
                      Scalar(2) * d * (std::sin(beta) - std::sin(alpha));
  if (p_sq < Scalar(0)) return std::nullopt;
  const Scalar tmp1 = std::atan2(std::cos(alpha) - std::cos(beta), tmp0);
  return Eigen::Matrix<Scalar, 3, 1>{mod2piT(alpha - tmp1), std::sqrt(p_sq),
                                     mod2piT(-beta + tmp1)};
}

template <class Scalar>
Lengths<Scalar> wordLSR(Scalar alpha, Scalar beta, Scalar d) {
  const Scalar p_sq = Scalar(-2) + d * d + Scalar(2) * std::cos(alpha - beta) +
                      Scalar(2) * d * (std::sin(alpha) + std::sin(beta));
  if (p_sq < Scalar(0)) return std::nullopt;
  const Scalar p = std::sqrt(p_sq);
  const Scalar tmp2 = std::atan2(-std::cos(alpha) - std::cos(beta),
                                 d + std::sin(alpha) + std::sin(beta)) -
                      std::atan2(Scalar(-2), p);
  return Eigen::Matrix<Scalar, 3, 1>{mod2piT(-alpha + tmp2), p, mod2piT(-mod2piT(beta) + tmp2)};
}

template <class Scalar>
Lengths<Scalar> wordRSL(Scalar alpha, Scalar beta, Scalar d) {
  const Scalar p_sq = d * d - Scalar(2) + Scalar(2) * std::cos(alpha - beta) -
                      Scalar(2) * d * (std::sin(alpha) + std::sin(beta));
  if (p_sq < Scalar(0)) return std::nullopt;
  const Scalar p = std::sqrt(p_sq);
  const Scalar tmp2 = std::atan2(std::cos(alpha) + std::cos(beta),
                                 d - std::sin(alpha) - std::sin(beta)) -
                      std::atan2(Scalar(2), p);
  return Eigen::Matrix<Scalar, 3, 1>{mod2piT(alpha - tmp2), p, mod2piT(beta - tmp2)};
}

template <class Scalar>
Lengths<Scalar> wordRLR(Scalar alpha, Scalar beta, Scalar d) {
  const Scalar tmp = (Scalar(6) - d * d + Scalar(2) * std::cos(alpha - beta) +
                      Scalar(2) * d * (std::sin(alpha) - std::sin(beta))) /
                     Scalar(8);
  if (std::abs(tmp) > Scalar(1)) return std::nullopt;
  const Scalar p = mod2piT(Scalar(2) * Scalar(M_PI) - std::acos(tmp));
  const Scalar t = mod2piT(alpha -
                           std::atan2(std::cos(alpha) - std::cos(beta),
                                      d - std::sin(alpha) + std::sin(beta)) +
                           mod2piT(p / Scalar(2)));
  return Eigen::Matrix<Scalar, 3, 1>{t, p, mod2piT(alpha - beta - t + mod2piT(p))};
}

template <class Scalar>
Lengths<Scalar> wordLRL(Scalar alpha, Scalar beta, Scalar d) {
  const Scalar tmp = (Scalar(6) - d * d + Scalar(2) * std::cos(alpha - beta) +
                      Scalar(2) * d * (std::sin(beta) - std::sin(alpha))) /
                     Scalar(8);
  if (std::abs(tmp) > Scalar(1)) return std::nullopt;
  const Scalar p = mod2piT(Scalar(2) * Scalar(M_PI) - std::acos(tmp));
  const Scalar t = mod2piT(-alpha -
                           std::atan2(std::cos(alpha) - std::cos(beta),
                                      d + std::sin(alpha) - std::sin(beta)) +
                           p / Scalar(2));
  return Eigen::Matrix<Scalar, 3, 1>{t, p, mod2piT(mod2piT(beta) - alpha - t + mod2piT(p))};
}

template <class Scalar>
constexpr std::array<DubinsSeg, 3> wordSegments(DubinsWordId id) {
  switch (id) {
    case DubinsWordId::LSL: return {DubinsSeg::L, DubinsSeg::S, DubinsSeg::L};
    case DubinsWordId::RSR: return {DubinsSeg::R, DubinsSeg::S, DubinsSeg::R};
    case DubinsWordId::LSR: return {DubinsSeg::L, DubinsSeg::S, DubinsSeg::R};
    case DubinsWordId::RSL: return {DubinsSeg::R, DubinsSeg::S, DubinsSeg::L};
    case DubinsWordId::RLR: return {DubinsSeg::R, DubinsSeg::L, DubinsSeg::R};
    case DubinsWordId::LRL: return {DubinsSeg::L, DubinsSeg::R, DubinsSeg::L};
  }
  return {DubinsSeg::S, DubinsSeg::S, DubinsSeg::S};
}

}  // namespace detail

/// Every feasible word between the two poses. CCC words are only candidates
/// when the endpoints are closer than 4 radii (beyond that CSC always wins).
template <class Scalar>
std::vector<DubinsPath<Scalar>> dubinsCandidates(const Pose2<Scalar>& a, const Pose2<Scalar>& b,
                                                 Scalar radius) {
  const Eigen::Matrix<Scalar, 2, 1> dp = b.position - a.position;
  const Scalar dist = dp.norm();
  const Scalar d = dist / radius;
  const Scalar theta = dist > Scalar(1e-15) ? std::atan2(dp.y(), dp.x()) : Scalar(0);
  const Scalar alpha = detail::mod2piT(a.heading - theta);
  const Scalar beta = detail::mod2piT(b.heading - theta);

  std::vector<DubinsPath<Scalar>> out;
  auto push = [&](DubinsWordId id, const detail::Lengths<Scalar>& lengths) {
    if (!lengths) return;
    DubinsPath<Scalar> path;
    path.segments = detail::wordSegments<Scalar>(id);
    path.lengths = *lengths;
    path.radius = radius;
    path.start = a;
    path.word = id;
    out.push_back(path);
  };
  push(DubinsWordId::LSL, detail::wordLSL(alpha, beta, d));
  push(DubinsWordId::RSR, detail::wordRSR(alpha, beta, d));
  push(DubinsWordId::LSR, detail::wordLSR(alpha, beta, d));
  push(DubinsWordId::RSL, detail::wordRSL(alpha, beta, d));
  if (dist < Scalar(4) * radius) {
    push(DubinsWordId::RLR, detail::wordRLR(alpha, beta, d));
    push(DubinsWordId::LRL, detail::wordLRL(alpha, beta, d));
  }
  return out;
}

/// Shortest bounded-curvature path between two poses. A path always exists;
/// ties resolve in word-enum order for reproducibility.
template <class Scalar>
DubinsPath<Scalar> shortestDubins(const Pose2<Scalar>& a, const Pose2<Scalar>& b, Scalar radius) {
  const auto candidates = dubinsCandidates(a, b, radius);
  const DubinsPath<Scalar>* best = nullptr;
  for (const auto& c : candidates)
    if (!best || c.length() < best->length() - Scalar(1e-12)) best = &c;
  return *best;  // the CSC family covers every pose pair
}

template <class Scalar>
Pose2<Scalar> DubinsPath<Scalar>::at(Scalar s) const {
  Scalar remaining = std::clamp(s, Scalar(0), length()) / radius;
  Scalar x = Scalar(0), y = Scalar(0), th = start.heading;
  for (int i = 0; i < 3; ++i) {
    const Scalar seg = std::min(remaining, lengths[i]);
    switch (segments[static_cast<std::size_t>(i)]) {
      case DubinsSeg::L:
        x += std::sin(th + seg) - std::sin(th);
        y += -std::cos(th + seg) + std::cos(th);
        th += seg;
        break;
      case DubinsSeg::R:
        x += -std::sin(th - seg) + std::sin(th);
        y += std::cos(th - seg) - std::cos(th);
        th -= seg;
        break;
      case DubinsSeg::S:
        x += seg * std::cos(th);
        y += seg * std::sin(th);
        break;
    }
    remaining -= seg;
    if (remaining <= Scalar(0)) break;
  }
  Pose2<Scalar> pose;
  pose.position = start.position + Eigen::Matrix<Scalar, 2, 1>{x * radius, y * radius};
  pose.heading = detail::mod2piT(th);
  return pose;
}

using Pose2d = Pose2<double>;
using DubinsPathd = DubinsPath<double>;

}  // namespace skysweep

#endif  // SKYSWEEP_DUBINS_HPP_
