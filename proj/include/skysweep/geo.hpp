#ifndef SKYSWEEP_GEO_HPP_
#define SKYSWEEP_GEO_HPP_

#include <Eigen/Core>

#include "skysweep/common.hpp"

namespace skysweep {

/// WGS84 ellipsoid constants.
struct Wgs84 {
  static constexpr double a = 6378137.0;              // semi-major axis [m]
  static constexpr double f = 1.0 / 298.257223563;    // flattening
  static constexpr double e2 = f * (2.0 - f);         // first eccentricity squared
  static constexpr double b = 6356752.314245179;      // a * sqrt(1 - e2) [m]
  static constexpr double ep2 = (a * a - b * b) / (b * b);  // second eccentricity squared
};

/// Geodetic position. lat/lon in degrees, alt in meters above the ellipsoid.
/// Throughout the library the symbol convention is: latitude drives the
/// prime-vertical radius and the Z component; longitude only rotates about
/// the polar axis.
struct GeodeticCoord {
  double lat = 0.0;  // [-90, 90]
  double lon = 0.0;  // (-180, 180]
  double alt = 0.0;

  void validate() const {
    if (!(lat >= -90.0 && lat <= 90.0))
      throw ValidationError("latitude out of [-90, 90]: " + std::to_string(lat));
    if (!(lon > -180.0 && lon <= 180.0))
      throw ValidationError("longitude out of (-180, 180]: " + std::to_string(lon));
    if (!std::isfinite(alt)) throw ValidationError("altitude not finite");
  }
};

using EcefCoord = Vector3d;     // meters, Earth-centered Earth-fixed
using LocalEnuCoord = Vector3d; // meters east/north/up of a fixed anchor

/// Prime vertical radius of curvature N(lat).
double primeVerticalRadius(double lat_rad);

EcefCoord geodeticToEcef(const GeodeticCoord& g);

/// Closed-form (Bowring) inverse, single evaluation of the parametric
/// latitude, no iteration. Points on the polar axis get longitude 0.
GeodeticCoord ecefToGeodetic(const EcefCoord& e);

/// East-north-up tangent frame fixed at an anchor point. The anchor is
/// immutable; all planner math runs in this frame.
class LocalFrame {
 public:
  explicit LocalFrame(const GeodeticCoord& anchor);

  LocalEnuCoord toLocal(const GeodeticCoord& g) const;
  GeodeticCoord toGeodetic(const LocalEnuCoord& p) const;

  const GeodeticCoord& anchor() const { return anchor_; }

 private:
  GeodeticCoord anchor_;
  EcefCoord anchor_ecef_;
  Eigen::Matrix3d ecef_to_enu_;  // rows: east, north, up
};

}  // namespace skysweep

#endif  // SKYSWEEP_GEO_HPP_
