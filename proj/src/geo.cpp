#include "skysweep/geo.hpp"

#include <cmath>

namespace skysweep {

double primeVerticalRadius(double lat_rad) {
  const double s = std::sin(lat_rad);
  return Wgs84::a / std::sqrt(1.0 - Wgs84::e2 * s * s);
}

EcefCoord geodeticToEcef(const GeodeticCoord& g) {
  const double lat = deg2rad(g.lat);
  const double lon = deg2rad(g.lon);
  const double n = primeVerticalRadius(lat);
  const double cl = std::cos(lat);
  return {(n + g.alt) * cl * std::cos(lon),
          (n + g.alt) * cl * std::sin(lon),
          (n * (1.0 - Wgs84::e2) + g.alt) * std::sin(lat)};
}

GeodeticCoord ecefToGeodetic(const EcefCoord& e) {
  const double p = std::hypot(e.x(), e.y());
  if (p < 1e-9) {
    // On the polar axis: longitude is conventionally 0.
    const double lat = e.z() >= 0.0 ? 90.0 : -90.0;
    return {lat, 0.0, std::abs(e.z()) - Wgs84::b};
  }
  const double lon = std::atan2(e.y(), e.x());
  const double omega = std::atan2(e.z() * Wgs84::a, p * Wgs84::b);
  const double so = std::sin(omega);
  const double co = std::cos(omega);
  const double lat = std::atan2(e.z() + Wgs84::ep2 * Wgs84::b * so * so * so,
                                p - Wgs84::e2 * Wgs84::a * co * co * co);
  const double n = primeVerticalRadius(lat);
  const double cl = std::cos(lat);
  // Near the poles p/cos(lat) degenerates; use the Z form there instead.
  const double h = std::abs(cl) > 1e-7 ? p / cl - n
                                       : e.z() / std::sin(lat) - n * (1.0 - Wgs84::e2);
  return {rad2deg(lat), rad2deg(lon), h};
}

LocalFrame::LocalFrame(const GeodeticCoord& anchor)
    : anchor_(anchor), anchor_ecef_(geodeticToEcef(anchor)) {
  anchor_.validate();
  const double lat = deg2rad(anchor.lat);
  const double lon = deg2rad(anchor.lon);
  const double sl = std::sin(lat), cl = std::cos(lat);
  const double so = std::sin(lon), co = std::cos(lon);
  ecef_to_enu_ << -so, co, 0.0,
      -sl * co, -sl * so, cl,
      cl * co, cl * so, sl;
}

LocalEnuCoord LocalFrame::toLocal(const GeodeticCoord& g) const {
  return ecef_to_enu_ * (geodeticToEcef(g) - anchor_ecef_);
}

GeodeticCoord LocalFrame::toGeodetic(const LocalEnuCoord& p) const {
  return ecefToGeodetic(anchor_ecef_ + ecef_to_enu_.transpose() * p);
}

}  // namespace skysweep
