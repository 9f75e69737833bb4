#include "unitay/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "unitay/error.hpp"

namespace unitay {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool finite(Point z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Orientation of c relative to the directed line a->b: +1 left, -1 right, 0 collinear.
int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Point a, Point b, Point c) {
  return std::min(a.real(), b.real()) <= c.real() && c.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= c.imag() && c.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

// Even-odd crossing test; points exactly on an edge may land either way, so
// callers that need closed-set semantics combine it with a boundary distance.
bool polygon_interior(const std::vector<Point>& v, Point z) {
  bool inside = false;
  const std::size_t m = v.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Point a = v[i];
    const Point b = v[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

double polygon_boundary_distance(const std::vector<Point>& v, Point z) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) best = std::min(best, segment_distance(z, v[i], v[(i + 1) % m]));
  return best;
}

void check_polygon(const Polygon& poly, std::size_t index) {
  const auto& v = poly.vertices;
  const std::string where = "component " + std::to_string(index);
  require(v.size() >= 3, ErrorCode::DegenerateShape, where + ": polygon needs at least 3 vertices");
  const std::size_t m = v.size();
  for (const Point& p : v) require(finite(p), ErrorCode::DegenerateShape, where + ": non-finite vertex");
  for (std::size_t i = 0; i < m; ++i)
    require(v[i] != v[(i + 1) % m], ErrorCode::DegenerateShape, where + ": repeated consecutive vertex");

  // Adjacent edges may only share their common vertex; a fold-back would put
  // the far endpoint of one edge on the other.
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = v[(i + m - 1) % m];
    const Point p = v[i];
    const Point b = v[(i + 1) % m];
    if (orientation(a, p, b) == 0) {
      const bool folds = std::real((a - p) * std::conj(b - p)) > 0.0;
      require(!folds, ErrorCode::DegenerateShape, where + ": polygon folds back on itself");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
      if (adjacent) continue;
      require(!segments_intersect(v[i], v[(i + 1) % m], v[j], v[(j + 1) % m]), ErrorCode::DegenerateShape,
              where + ": polygon is not simple (edges " + std::to_string(i) + " and " + std::to_string(j) +
                  " meet)");
    }
  }
  const double area = polygon_signed_area(v);
  const BoundingBox box = bounding_box(Shape{poly});
  const double scale = std::hypot(box.width(), box.height());
  require(std::abs(area) > 1e-12 * scale * scale, ErrorCode::DegenerateShape, where + ": polygon has zero area");
  require(area > 0.0, ErrorCode::DegenerateShape, where + ": polygon vertices must be counterclockwise");
}

// Exact cos/sin of 2*pi*k/n on the quarter turns, libm elsewhere.
Point unit_root(std::size_t k, std::size_t n) {
  if ((4 * k) % n == 0) {
    switch ((4 * k / n) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

// Split `extra` points among edges proportionally to length (largest remainder,
// ties to the lowest index).
std::vector<std::size_t> allocate_by_length(const std::vector<double>& lengths, std::size_t extra) {
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  std::vector<std::size_t> counts(lengths.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t used = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double exact = static_cast<double>(extra) * lengths[i] / total;
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    used += counts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; used < extra; ++r, ++used) ++counts[remainders[r % remainders.size()].second];
  return counts;
}

}  // namespace

double segment_segment_distance(Point p1, Point p2, Point q1, Point q2) {
  if (segments_intersect(p1, p2, q1, q2)) return 0.0;
  return std::min({segment_distance(p1, q1, q2), segment_distance(p2, q1, q2), segment_distance(q1, p1, p2),
                   segment_distance(q2, p1, p2)});
}

double segment_distance(Point z, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double t = std::real((z - a) * std::conj(ab)) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double polygon_signed_area(std::span<const Point> v) {
  double twice = 0.0;
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) twice += cross(v[i], v[(i + 1) % m]);
  return 0.5 * twice;
}

void check_shape(const Shape& s, std::size_t index) {
  if (const auto* d = std::get_if<Disk>(&s)) {
    require(finite(d->center) && std::isfinite(d->radius), ErrorCode::DegenerateShape,
            "component " + std::to_string(index) + ": non-finite disk");
    require(d->radius > 0.0, ErrorCode::DegenerateShape,
            "component " + std::to_string(index) + ": disk radius must be positive");
    return;
  }
  check_polygon(std::get<Polygon>(s), index);
}

bool contains(const Shape& s, Point z) { return dist_point_to_shape(z, s) == 0.0; }

BoundingBox bounding_box(const Shape& s) {
  if (const auto* d = std::get_if<Disk>(&s)) {
    return {d->center.real() - d->radius, d->center.imag() - d->radius, d->center.real() + d->radius,
            d->center.imag() + d->radius};
  }
  const auto& v = std::get<Polygon>(s).vertices;
  BoundingBox box{v[0].real(), v[0].imag(), v[0].real(), v[0].imag()};
  for (const Point& p : v) {
    box.min_x = std::min(box.min_x, p.real());
    box.min_y = std::min(box.min_y, p.imag());
    box.max_x = std::max(box.max_x, p.real());
    box.max_y = std::max(box.max_y, p.imag());
  }
  return box;
}

double perimeter(const Shape& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return kTwoPi * d->radius;
  const auto& v = std::get<Polygon>(s).vertices;
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += std::abs(v[(i + 1) % v.size()] - v[i]);
  return total;
}

double dist_point_to_shape(Point z, const Shape& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return std::max(0.0, std::abs(z - d->center) - d->radius);
  const auto& v = std::get<Polygon>(s).vertices;
  if (polygon_interior(v, z)) return 0.0;
  return polygon_boundary_distance(v, z);
}

double dist_to_boundary(Point z, const Shape& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return std::abs(std::abs(z - d->center) - d->radius);
  return polygon_boundary_distance(std::get<Polygon>(s).vertices, z);
}

double dist_interior_point_to_complement(Point z0, const Shape& k0) {
  double r = 0.0;
  if (const auto* d = std::get_if<Disk>(&k0)) {
    r = d->radius - std::abs(z0 - d->center);
  } else {
    const auto& v = std::get<Polygon>(k0).vertices;
    if (polygon_interior(v, z0)) r = polygon_boundary_distance(v, z0);
  }
  require(r > 0.0, ErrorCode::PointNotInterior, "z0 is not an interior point of K0");
  return r;
}

double shape_distance(const Shape& a, const Shape& b) {
  const auto* da = std::get_if<Disk>(&a);
  const auto* db = std::get_if<Disk>(&b);
  if (da && db) return std::max(0.0, std::abs(da->center - db->center) - da->radius - db->radius);
  if (da || db) {
    const Disk& disk = da ? *da : *db;
    const Shape& poly = da ? b : a;
    return std::max(0.0, dist_point_to_shape(disk.center, poly) - disk.radius);
  }
  const auto& va = std::get<Polygon>(a).vertices;
  const auto& vb = std::get<Polygon>(b).vertices;
  if (polygon_interior(vb, va[0]) || polygon_interior(va, vb[0])) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < va.size(); ++i) {
    for (std::size_t j = 0; j < vb.size(); ++j) {
      best = std::min(best, segment_segment_distance(va[i], va[(i + 1) % va.size()], vb[j], vb[(j + 1) % vb.size()]));
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

InteriorAnchor interior_anchor(const Shape& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return {d->center, d->radius};
  const auto& v = std::get<Polygon>(s).vertices;
  const BoundingBox box = bounding_box(s);
  constexpr int kGrid = 48;
  InteriorAnchor best{v[0], 0.0};
  const double hx = box.width() / kGrid;
  const double hy = box.height() / kGrid;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Point z{box.min_x + (i + 0.5) * hx, box.min_y + (j + 0.5) * hy};
      if (!polygon_interior(v, z)) continue;
      const double c = polygon_boundary_distance(v, z);
      if (c > best.clearance) best = {z, c};
    }
  }
  // Compass search from the best grid cell.
  double step = 0.5 * std::max(hx, hy);
  const Point dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0.7071067811865476, 0.7071067811865476},
                        {-0.7071067811865476, 0.7071067811865476}, {0.7071067811865476, -0.7071067811865476},
                        {-0.7071067811865476, -0.7071067811865476}};
  while (step > 1e-6 * std::max(hx, hy)) {
    bool moved = false;
    for (const Point& d : dirs) {
      const Point z = best.point + step * d;
      if (!polygon_interior(v, z)) continue;
      const double c = polygon_boundary_distance(v, z);
      if (c > best.clearance) {
        best = {z, c};
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

std::vector<Point> boundary_sample(const Shape& s, std::size_t n) {
  if (const auto* d = std::get_if<Disk>(&s)) {
    require(n >= 4, ErrorCode::TooFewPoints, "disk boundary sample needs n >= 4");
    std::vector<Point> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = d->center + d->radius * unit_root(k, n);
    return out;
  }
  const auto& v = std::get<Polygon>(s).vertices;
  const std::size_t m = v.size();
  require(n >= 2 * m, ErrorCode::TooFewPoints, "polygon boundary sample needs n >= 2 * vertex count");
  std::vector<double> lengths(m);
  for (std::size_t i = 0; i < m; ++i) lengths[i] = std::abs(v[(i + 1) % m] - v[i]);
  const auto counts = allocate_by_length(lengths, n - m);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % m];
    out.push_back(a);
    for (std::size_t j = 1; j <= counts[i]; ++j)
      out.push_back(a + (b - a) * (static_cast<double>(j) / static_cast<double>(counts[i] + 1)));
  }
  return out;
}

std::vector<Point> clustered_boundary_sample(const Shape& s, std::size_t per_component, std::size_t corner_points,
                                             double phase) {
  if (const auto* d = std::get_if<Disk>(&s)) {
    std::vector<Point> out(per_component);
    for (std::size_t k = 0; k < per_component; ++k) {
      const double t = kTwoPi * (static_cast<double>(k) + phase) / static_cast<double>(per_component);
      out[k] = d->center + d->radius * Point{std::cos(t), std::sin(t)};
    }
    return out;
  }
  const auto& v = std::get<Polygon>(s).vertices;
  const std::size_t m = v.size();
  std::vector<double> lengths(m);
  for (std::size_t i = 0; i < m; ++i) lengths[i] = std::abs(v[(i + 1) % m] - v[i]);
  const auto counts = allocate_by_length(lengths, std::max(per_component, m));
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  const double mean_edge = total / static_cast<double>(m);

  std::vector<Point> out;
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % m];
    const double len = lengths[i];
    std::vector<double> ts{0.0};
    const std::size_t cnt = std::max<std::size_t>(counts[i], 1);
    for (std::size_t k = 0; k < cnt; ++k) ts.push_back((static_cast<double>(k) + 0.5 + 0.5 * phase) / cnt);
    // Geometric clustering toward both corners resolves the corner singularity.
    const double reach = 0.5 * std::min(len, mean_edge);
    const double nc = static_cast<double>(corner_points);
    for (std::size_t j = 1; j <= corner_points; ++j) {
      const double jj = static_cast<double>(j) - 0.5 * phase;
      const double frac = reach * std::exp(-3.5 * (std::sqrt(nc) - std::sqrt(jj))) / len;
      if (frac < 0.5) {
        ts.push_back(frac);
        ts.push_back(1.0 - frac);
      }
    }
    std::sort(ts.begin(), ts.end());
    for (double t : ts) out.push_back(a + (b - a) * t);
  }
  return out;
}

Shape translated(const Shape& s, Point offset) {
  if (const auto* d = std::get_if<Disk>(&s)) return Disk{d->center + offset, d->radius};
  Polygon p = std::get<Polygon>(s);
  for (Point& z : p.vertices) z += offset;
  return p;
}

Shape rotated(const Shape& s, double angle) {
  const Point r{std::cos(angle), std::sin(angle)};
  if (const auto* d = std::get_if<Disk>(&s)) return Disk{d->center * r, d->radius};
  Polygon p = std::get<Polygon>(s);
  for (Point& z : p.vertices) z *= r;
  return p;
}

// --- ShapeUnion ------------------------------------------------------------

ShapeUnion::ShapeUnion(std::vector<Shape> components) : components_(std::move(components)) {
  require(!components_.empty(), ErrorCode::InvalidInput, "a set needs at least one component");
  for (std::size_t i = 0; i < components_.size(); ++i) check_shape(components_[i], i);
  box_ = unitay::bounding_box(components_[0]);
  for (const Shape& s : components_) {
    const BoundingBox b = unitay::bounding_box(s);
    box_.min_x = std::min(box_.min_x, b.min_x);
    box_.min_y = std::min(box_.min_y, b.min_y);
    box_.max_x = std::max(box_.max_x, b.max_x);
    box_.max_y = std::max(box_.max_y, b.max_y);
  }
  diameter_ = std::hypot(box_.width(), box_.height());
  const double min_gap = 1e-9 * diameter_;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    for (std::size_t j = i + 1; j < components_.size(); ++j) {
      const double gap = shape_distance(components_[i], components_[j]);
      require(gap >= min_gap && gap > 0.0, ErrorCode::OverlappingComponents,
              "components " + std::to_string(i) + " and " + std::to_string(j) + " overlap or touch");
    }
  }
}

bool ShapeUnion::contains(Point z) const { return component_of(z) >= 0; }

int ShapeUnion::component_of(Point z) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (unitay::contains(components_[i], z)) return static_cast<int>(i);
  return -1;
}

double ShapeUnion::distance(Point z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Shape& s : components_) best = std::min(best, dist_point_to_shape(z, s));
  return best;
}

double ShapeUnion::gap_to_others(std::size_t i) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < components_.size(); ++j)
    if (j != i) best = std::min(best, shape_distance(components_[i], components_[j]));
  return best;
}

ShapeUnion ValidatedSet::pi() const {
  std::vector<Shape> rest(shapes_.components().begin() + 1, shapes_.components().end());
  return ShapeUnion(std::move(rest));
}

ValidatedSet validate_set(const CompactSetL& candidate) {
  require(candidate.components.size() >= 2, ErrorCode::InvalidInput,
          "L needs K0 and at least one further component (m0 >= 1)");
  if (const auto* p = std::get_if<Polygon>(&candidate.components[0])) {
    if (p->vertices.size() >= 3 && std::abs(polygon_signed_area(p->vertices)) == 0.0)
      fail(ErrorCode::EmptyInteriorK0, "K0 has empty interior");
  }
  return ValidatedSet(ShapeUnion(candidate.components));
}

}  // namespace unitay
