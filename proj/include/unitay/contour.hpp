#pragma once

#include <variant>
#include <vector>

#include "unitay/geometry.hpp"

namespace unitay {

struct Circle {
  Point center;
  double radius = 0.0;
};

struct ClosedPolyline {
  std::vector<Point> points;  // implicitly closed; last point connects to the first
};

/// A closed Jordan curve together with a dense sampling of it.
class JordanContour {
 public:
  using Curve = std::variant<Circle, ClosedPolyline>;

  /// Builds the contour and its sampling (at least `min_samples` points).
  explicit JordanContour(Curve curve, std::size_t min_samples = 512);

  const Curve& curve() const { return curve_; }
  const std::vector<Point>& sampling() const { return sampling_; }
  /// Characteristic size used for the on-contour tolerance.
  double scale() const;
  /// Exact distance from z to the curve.
  double distance(Point z) const;
  /// Distance from the curve to a shape (zero when they meet or the curve lies inside it).
  double distance_to(const Shape& s) const;
  /// Point at normalized parameter t (angle for circles, arclength for
  /// polylines); periodic with period 1.
  Point at(double t) const;

 private:
  Curve curve_;
  std::vector<Point> sampling_;
  std::vector<double> cumulative_;  // polyline arclength at each vertex, normalized to end at 1
};

/// Winding number of the contour about z by accumulated argument.
/// Throws PointOnContour when z is within 1e-9 * scale of the curve.
int winding_number(const JordanContour& c, Point z);

/// One contour per component of L, each enclosing its own component only.
struct ContourFamily {
  std::vector<JordanContour> contours;
};

/// Checks every ContourFamily invariant for `set`; throws ContourCollision
/// (or ContourTouchesSet when a contour meets L) describing the first failure.
void check_contour_family(const ShapeUnion& set, const ContourFamily& family);

/// Circles around disks and rounded outward offsets around polygons, at
/// distance inflation * (half the gap to the rest of L).
ContourFamily build_contour_family(const ShapeUnion& set, double inflation);

}  // namespace unitay
