#include "skysweep/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skysweep {

void Trajectory::append(const Trajectory& tail) {
  if (tail.samples.empty()) return;
  if (samples.empty()) {
    samples = tail.samples;
    return;
  }
  const double base = samples.back().s;
  std::size_t first = 0;
  if ((tail.samples.front().position - samples.back().position).norm() < 1e-9) first = 1;
  for (std::size_t i = first; i < tail.samples.size(); ++i) {
    TrajectorySample s = tail.samples[i];
    s.s += base;
    samples.push_back(s);
  }
}

Vector3d Trajectory::positionAt(double s) const {
  if (samples.empty()) return Vector3d::Zero();
  if (s <= samples.front().s) return samples.front().position;
  if (s >= samples.back().s) return samples.back().position;
  // Samples are monotone in s.
  auto it = std::lower_bound(samples.begin(), samples.end(), s,
                             [](const TrajectorySample& a, double v) { return a.s < v; });
  const TrajectorySample& hi = *it;
  const TrajectorySample& lo = *(it - 1);
  const double span = hi.s - lo.s;
  if (span < 1e-12) return lo.position;
  const double u = (s - lo.s) / span;
  return lo.position + u * (hi.position - lo.position);
}

double Trajectory::closestArcLength(const Vector3d& p, std::size_t hint) const {
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = hint; i + 1 < samples.size(); ++i) {
    const Vector3d& a = samples[i].position;
    const Vector3d& b = samples[i + 1].position;
    const Vector3d ab = b - a;
    const double len2 = ab.squaredNorm();
    double u = len2 > 1e-18 ? (p - a).dot(ab) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    const Vector3d q = a + u * ab;
    const double d2 = (p - q).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = samples[i].s + u * (samples[i + 1].s - samples[i].s);
    }
  }
  if (samples.size() == 1) best_s = samples.front().s;
  return best_s;
}

}  // namespace skysweep
