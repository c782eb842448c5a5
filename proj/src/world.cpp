#include "skysweep/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skysweep {

namespace {

// Proper segment intersection test (shared endpoints excluded by caller).
bool segmentsCross(const Vector2d& a, const Vector2d& b, const Vector2d& c, const Vector2d& d) {
  auto orient = [](const Vector2d& p, const Vector2d& q, const Vector2d& r) {
    const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
    return v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

bool Geofence::containsXY(const Vector2d& p) const {
  // Even-odd rule ray cast.
  bool inside = false;
  const std::size_t n = boundary.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vector2d& a = boundary[i];
    const Vector2d& b = boundary[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

Eigen::AlignedBox2d Geofence::boundingBox() const {
  Eigen::AlignedBox2d box;
  for (const auto& v : boundary) box.extend(v);
  return box;
}

double Geofence::area() const {
  double s = 0.0;
  const std::size_t n = boundary.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    s += boundary[j].x() * boundary[i].y() - boundary[i].x() * boundary[j].y();
  return 0.5 * std::abs(s);
}

Vector2d Geofence::centroid() const {
  Vector2d c{0.0, 0.0};
  for (const auto& v : boundary) c += v;
  return c / double(boundary.size());
}

void Geofence::validate() const {
  if (boundary.size() < 3) throw ValidationError("geofence boundary needs >= 3 vertices");
  if (!(alt_min < alt_max)) throw ValidationError("geofence requires alt_min < alt_max");
  if (area() < 1e-9) throw ValidationError("geofence polygon has zero area");
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share a vertex).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segmentsCross(boundary[i], boundary[(i + 1) % n], boundary[j], boundary[(j + 1) % n]))
        throw ValidationError("geofence polygon self-intersects");
    }
  }
}

Vector3d DynamicObstacle::positionAt(double t) const {
  if (t < spawn_time)
    throw std::invalid_argument("dynamic obstacle queried before its spawn time");
  double remaining = (t - spawn_time) * speed;
  Vector3d prev = initial_center;
  for (const auto& wp : waypoints) {
    const double leg = (wp - prev).norm();
    if (remaining <= leg) {
      if (leg < 1e-12) return wp;
      return prev + (wp - prev) * (remaining / leg);
    }
    remaining -= leg;
    prev = wp;
  }
  return prev;  // hold final waypoint
}

double clearance(const Vector3d& p, const StaticObstacle& o) {
  const double dh = (p.head<2>() - o.center).norm();
  if (p.z() <= o.height) return dh - o.radius;
  if (dh <= o.radius) return p.z() - o.height;  // above the cap
  return std::hypot(dh - o.radius, p.z() - o.height);  // above, off to the side: rim
}

double sphereClearance(const Vector3d& p, const Vector3d& center, double radius) {
  return (p - center).norm() - radius;
}

std::vector<const StaticObstacle*> WorldState::staticsAt(double t) const {
  std::vector<const StaticObstacle*> out;
  for (const auto& o : statics)
    if (o.spawn_time <= t) out.push_back(&o);
  return out;
}

std::vector<const DynamicObstacle*> WorldState::dynamicsAt(double t) const {
  std::vector<const DynamicObstacle*> out;
  for (const auto& o : dynamics)
    if (o.spawn_time <= t) out.push_back(&o);
  return out;
}

ObstacleField ObstacleField::at(const WorldState& world, double t) {
  ObstacleField f;
  for (const auto* o : world.staticsAt(t)) f.cylinders.push_back(*o);
  for (const auto* o : world.dynamicsAt(t)) f.spheres.push_back({o->positionAt(t), o->radius});
  return f;
}

double ObstacleField::minClearance(const Vector3d& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cylinders) best = std::min(best, clearance(p, c));
  for (const auto& s : spheres) best = std::min(best, sphereClearance(p, s.center, s.radius));
  return best;
}

}  // namespace skysweep
