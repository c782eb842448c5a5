#ifndef SKYSWEEP_COMMON_HPP_
#define SKYSWEEP_COMMON_HPP_

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace skysweep {

using Eigen::Vector2d;
using Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle to [0, 2*pi).
inline double mod2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

/// Wraps an angle to (-pi, pi].
inline double wrapPi(double a) {
  double r = mod2pi(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

/// Compass bearing of the displacement d, radians clockwise from north.
/// Local frame is ENU: x east, y north.
inline double bearingOf(const Vector2d& d) { return std::atan2(d.x(), d.y()); }

/// Unit direction vector of a compass bearing.
inline Vector2d bearingDir(double psi) { return {std::sin(psi), std::cos(psi)}; }

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct PlanningError : std::runtime_error {
  PlanningError(const std::string& what, int milestone = -1)
      : std::runtime_error(what), milestone_index(milestone) {}
  int milestone_index;
};

/// SplitMix64. Used to derive independent sub-seeds from one scenario seed
/// so that the sampling, clustering and bench streams do not alias.
struct SeedSequence {
  explicit SeedSequence(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro-free deterministic generator: std::mt19937_64 streams are stable
/// for raw draws, but distribution objects are not portable, so all bounded
/// draws below go through rejection sampling on the raw 64-bit output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed == 0 ? 0x6a09e667f3bcc909ULL : seed) {}

  std::uint64_t nextU64() {
    // xorshift64*
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545f4914f6cdd1dULL;
  }

  /// Uniform in [0, n), unbiased.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = nextU64();
    while (v >= limit) v = nextU64();
    return v % n;
  }

  /// Uniform in [0, 1).
  double uniform() { return double(nextU64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Draws k distinct indices from [0, n) by partial Fisher-Yates.
  std::vector<int> sampleIndices(int n, int k);

 private:
  std::uint64_t s_;
};

inline std::vector<int> Rng::sampleIndices(int n, int k) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  const int take = std::min(n, k);
  for (int i = 0; i < take; ++i) {
    const int j = i + static_cast<int>(bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(take));
  return idx;
}

}  // namespace skysweep

#endif  // SKYSWEEP_COMMON_HPP_
