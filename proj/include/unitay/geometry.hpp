#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace unitay {

using Complex = std::complex<double>;
/// A point of the complex plane.
using Point = Complex;

struct Disk {
  Point center;
  double radius = 0.0;
};

/// Simple polygon, vertices counterclockwise.
struct Polygon {
  std::vector<Point> vertices;
};

using Shape = std::variant<Disk, Polygon>;

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  BoundingBox expanded(double margin) const {
    return {min_x - margin, min_y - margin, max_x + margin, max_y + margin};
  }
};

// --- single shapes -------------------------------------------------------

/// Throws DegenerateShape when the shape violates its invariants.
void check_shape(const Shape& s, std::size_t index);

bool contains(const Shape& s, Point z);
BoundingBox bounding_box(const Shape& s);
double polygon_signed_area(std::span<const Point> vertices);
double perimeter(const Shape& s);

/// Euclidean distance from z to the closed set s; zero iff z lies in s.
double dist_point_to_shape(Point z, const Shape& s);
/// Distance from z to the boundary curve of s (inside or outside).
double dist_to_boundary(Point z, const Shape& s);
/// r0 = dist(z0, complement of k0); throws PointNotInterior on the boundary or outside.
double dist_interior_point_to_complement(Point z0, const Shape& k0);

/// Lower bound of the distance between two shapes; zero when they touch or overlap.
double shape_distance(const Shape& a, const Shape& b);

/// A point well inside the shape (disk center, or an approximate pole of
/// inaccessibility for polygons) and its distance to the boundary.
struct InteriorAnchor {
  Point point;
  double clearance = 0.0;
};
InteriorAnchor interior_anchor(const Shape& s);

/// n points on the boundary, quasi-uniform in arclength. Polygon samples
/// contain every vertex.
std::vector<Point> boundary_sample(const Shape& s, std::size_t n);

/// Boundary points clustered geometrically toward polygon corners. Used for
/// collocation where corner singularities need resolving. Disks fall back to
/// uniform sampling with the given phase offset (fraction of a step).
std::vector<Point> clustered_boundary_sample(const Shape& s, std::size_t per_component, std::size_t corner_points,
                                             double phase = 0.0);

Shape translated(const Shape& s, Point offset);
Shape rotated(const Shape& s, double angle);

double segment_distance(Point z, Point a, Point b);
/// Zero when the closed segments meet.
double segment_segment_distance(Point p1, Point p2, Point q1, Point q2);

// --- unions of disjoint shapes -------------------------------------------

/// A finite union of pairwise disjoint disks and simple polygons (complement
/// connected by construction).
class ShapeUnion {
 public:
  /// Validates shapes and strict pairwise disjointness.
  explicit ShapeUnion(std::vector<Shape> components);

  const std::vector<Shape>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const Shape& operator[](std::size_t i) const { return components_[i]; }

  BoundingBox bounding_box() const { return box_; }
  /// Diagonal of the bounding box; geometric tolerances are relative to it.
  double diameter() const { return diameter_; }

  bool contains(Point z) const;
  /// Index of the component containing z, or -1.
  int component_of(Point z) const;
  double distance(Point z) const;
  /// Minimal distance from component i to the other components.
  double gap_to_others(std::size_t i) const;

 private:
  std::vector<Shape> components_;
  BoundingBox box_;
  double diameter_ = 0.0;
};

/// Candidate L = K0 ∪ K1 ∪ ... ∪ Km0 before validation.
struct CompactSetL {
  std::vector<Shape> components;
};

/// L with its designated K0 (component 0) and remainder Pi; m0 >= 1.
class ValidatedSet {
 public:
  const ShapeUnion& shapes() const { return shapes_; }
  const Shape& k0() const { return shapes_[0]; }
  std::size_t m0() const { return shapes_.size() - 1; }
  /// Pi = L minus K0.
  ShapeUnion pi() const;
  double diameter() const { return shapes_.diameter(); }

 private:
  explicit ValidatedSet(ShapeUnion shapes) : shapes_(std::move(shapes)) {}
  friend ValidatedSet validate_set(const CompactSetL& candidate);

  ShapeUnion shapes_;
};

ValidatedSet validate_set(const CompactSetL& candidate);

}  // namespace unitay
