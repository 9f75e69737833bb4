#include "unitay/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "unitay/error.hpp"

namespace unitay {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Point> circle_points(const Circle& c, std::size_t n) {
  std::vector<Point> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    out[k] = c.center + c.radius * Point{std::cos(t), std::sin(t)};
  }
  return out;
}

// Sum of argument increments along the closed polygon through `pts`.
int accumulated_winding(const std::vector<Point>& pts, Point z) {
  double total = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t k = 0; k < n; ++k) total += std::arg((pts[(k + 1) % n] - z) / (pts[k] - z));
  return static_cast<int>(std::lround(total / kTwoPi));
}

bool polyline_simple(const std::vector<Point>& v) {
  const std::size_t m = v.size();
  auto orient = [](Point a, Point b, Point c) {
    const double x = (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
    return (x > 0) - (x < 0);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const Point p1 = v[i], p2 = v[(i + 1) % m], q1 = v[j], q2 = v[(j + 1) % m];
      if (orient(p1, p2, q1) != orient(p1, p2, q2) && orient(q1, q2, p1) != orient(q1, q2, p2)) return false;
    }
  }
  return true;
}

// Distance between a circle and a segment: the distances from the centre to
// points of the segment fill [near, far], so the gap to radius R is explicit.
double circle_segment_distance(const Circle& c, Point a, Point b) {
  const double near = segment_distance(c.center, a, b);
  const double far = std::max(std::abs(a - c.center), std::abs(b - c.center));
  if (near <= c.radius && c.radius <= far) return 0.0;
  return std::min(std::abs(c.radius - near), std::abs(c.radius - far));
}

Polygon convex_hull(const Polygon& poly) {
  std::vector<Point> v = poly.vertices;
  std::sort(v.begin(), v.end(), [](Point a, Point b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  auto cross = [](Point o, Point a, Point b) {
    return (a - o).real() * (b - o).imag() - (a - o).imag() * (b - o).real();
  };
  std::vector<Point> h(2 * v.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], v[i]) <= 0.0) --k;
    h[k++] = v[i];
  }
  for (std::size_t i = v.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], v[i]) <= 0.0) --k;
    h[k++] = v[i];
  }
  h.resize(k - 1);
  return Polygon{std::move(h)};
}

std::vector<Point> rounded_offset(const Polygon& poly, double delta) {
  const auto& v = poly.vertices;
  const std::size_t m = v.size();
  auto outward = [&](std::size_t i) {
    const Point e = v[(i + 1) % m] - v[i];
    return Point{0.0, -1.0} * e / std::abs(e);
  };
  std::vector<Point> out;
  for (std::size_t i = 0; i < m; ++i) {
    const Point p = v[i];
    const Point n_in = outward((i + m - 1) % m);
    const Point n_out = outward(i);
    const Point e1 = p - v[(i + m - 1) % m];
    const Point e2 = v[(i + 1) % m] - p;
    const double turn = e1.real() * e2.imag() - e1.imag() * e2.real();
    if (turn > 0.0) {
      const double a0 = std::arg(n_in);
      double a1 = std::arg(n_out);
      while (a1 < a0) a1 += kTwoPi;
      const int steps = std::max(2, static_cast<int>(std::ceil((a1 - a0) / (std::numbers::pi / 32))));
      for (int s = 0; s <= steps; ++s) {
        const double t = a0 + (a1 - a0) * s / steps;
        out.push_back(p + delta * Point{std::cos(t), std::sin(t)});
      }
    } else {
      const double c = std::real(n_in * std::conj(n_out));
      out.push_back(p + delta * (n_in + n_out) / (1.0 + c));
    }
  }
  return out;
}

}  // namespace

JordanContour::JordanContour(Curve curve, std::size_t min_samples) : curve_(std::move(curve)) {
  min_samples = std::max<std::size_t>(min_samples, 8);
  if (const auto* c = std::get_if<Circle>(&curve_)) {
    require(c->radius > 0.0 && std::isfinite(c->radius), ErrorCode::InvalidInput, "circle radius must be positive");
    sampling_ = circle_points(*c, min_samples);
    return;
  }
  const auto& pts = std::get<ClosedPolyline>(curve_).points;
  require(pts.size() >= 3, ErrorCode::InvalidInput, "closed polyline needs at least 3 points");
  require(polyline_simple(pts), ErrorCode::ContourCollision, "closed polyline intersects itself");
  double total = 0.0;
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    total += std::abs(pts[(i + 1) % pts.size()] - pts[i]);
    cumulative_.push_back(total);
  }
  for (double& c : cumulative_) c /= total;
  const double step = total / static_cast<double>(min_samples);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point a = pts[i];
    const Point b = pts[(i + 1) % pts.size()];
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(b - a) / step)));
    for (std::size_t k = 0; k < pieces; ++k) sampling_.push_back(a + (b - a) * (double(k) / double(pieces)));
  }
}

double JordanContour::scale() const {
  if (const auto* c = std::get_if<Circle>(&curve_)) return c->radius;
  const auto& pts = std::get<ClosedPolyline>(curve_).points;
  double best = 0.0;
  for (const Point& p : pts) best = std::max(best, std::abs(p - pts[0]));
  return best;
}

Point JordanContour::at(double t) const {
  t -= std::floor(t);
  if (const auto* c = std::get_if<Circle>(&curve_)) {
    const double a = kTwoPi * t;
    return c->center + c->radius * Point{std::cos(a), std::sin(a)};
  }
  const auto& pts = std::get<ClosedPolyline>(curve_).points;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()) - 1, pts.size() - 1);
  const double span = cumulative_[i + 1] - cumulative_[i];
  const double local = span > 0.0 ? (t - cumulative_[i]) / span : 0.0;
  return pts[i] + (pts[(i + 1) % pts.size()] - pts[i]) * local;
}

double JordanContour::distance(Point z) const {
  if (const auto* c = std::get_if<Circle>(&curve_)) return std::abs(std::abs(z - c->center) - c->radius);
  const auto& pts = std::get<ClosedPolyline>(curve_).points;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    best = std::min(best, segment_distance(z, pts[i], pts[(i + 1) % pts.size()]));
  return best;
}

double JordanContour::distance_to(const Shape& s) const {
  if (contains(s, sampling_.front())) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (const auto* c = std::get_if<Circle>(&curve_)) {
    if (const auto* d = std::get_if<Disk>(&s)) {
      const double dc = std::abs(d->center - c->center);
      if (dc + d->radius <= c->radius) return c->radius - dc - d->radius;
      return std::max(0.0, dc - d->radius - c->radius);
    }
    const auto& v = std::get<Polygon>(s).vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
      best = std::min(best, circle_segment_distance(*c, v[i], v[(i + 1) % v.size()]));
    return best;
  }
  const auto& pts = std::get<ClosedPolyline>(curve_).points;
  const std::size_t n = pts.size();
  if (const auto* d = std::get_if<Disk>(&s)) {
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, segment_distance(d->center, pts[i], pts[(i + 1) % n]));
    return std::max(0.0, best - d->radius);
  }
  const auto& v = std::get<Polygon>(s).vertices;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      best = std::min(best, segment_segment_distance(pts[i], pts[(i + 1) % n], v[j], v[(j + 1) % v.size()]));
  return best;
}

int winding_number(const JordanContour& c, Point z) {
  const double d = c.distance(z);
  require(d > 1e-9 * c.scale(), ErrorCode::PointOnContour, "point lies on the contour");
  if (const auto* circle = std::get_if<Circle>(&c.curve())) {
    // The inscribed polygon misses a band of width R(1 - cos(pi/n)); refine
    // until z is clear of it.
    std::size_t n = c.sampling().size();
    while (circle->radius * (1.0 - std::cos(std::numbers::pi / static_cast<double>(n))) >= 0.5 * d) n *= 2;
    if (n == c.sampling().size()) return accumulated_winding(c.sampling(), z);
    return accumulated_winding(circle_points(*circle, n), z);
  }
  return accumulated_winding(std::get<ClosedPolyline>(c.curve()).points, z);
}

void check_contour_family(const ShapeUnion& set, const ContourFamily& family) {
  require(family.contours.size() == set.size(), ErrorCode::InvalidInput,
          "contour family needs one contour per component");
  const double tol = 1e-9 * set.diameter();
  std::vector<std::vector<Point>> probes(set.size());
  for (std::size_t j = 0; j < set.size(); ++j) {
    const Shape& s = set[j];
    const std::size_t n = std::holds_alternative<Disk>(s) ? 63 : std::max<std::size_t>(63, 2 * std::get<Polygon>(s).vertices.size());
    probes[j] = boundary_sample(s, n);
    probes[j].push_back(interior_anchor(s).point);
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    const JordanContour& ci = family.contours[i];
    for (std::size_t j = 0; j < set.size(); ++j) {
      const double dist = ci.distance_to(set[j]);
      require(dist > tol, ErrorCode::ContourTouchesSet,
              "contour " + std::to_string(i) + " meets component " + std::to_string(j));
      const int expected = i == j ? 1 : 0;
      for (const Point& x : probes[j]) {
        require(winding_number(ci, x) == expected, ErrorCode::ContourCollision,
                "contour " + std::to_string(i) + " has the wrong winding about component " + std::to_string(j));
      }
      if (j == i) continue;
      const JordanContour& cj = family.contours[j];
      for (const Point& x : cj.sampling()) {
        require(ci.distance(x) > tol && winding_number(ci, x) == 0, ErrorCode::ContourCollision,
                "contours " + std::to_string(i) + " and " + std::to_string(j) + " are not mutually exterior");
      }
    }
  }
}

ContourFamily build_contour_family(const ShapeUnion& set, double inflation) {
  require(inflation > 0.0 && std::isfinite(inflation), ErrorCode::InvalidInput, "inflation must be positive");
  ContourFamily family;
  for (std::size_t i = 0; i < set.size(); ++i) {
    double gap = 0.5 * set.gap_to_others(i);
    if (!std::isfinite(gap)) gap = 0.5 * set.diameter();
    const double delta = inflation * gap;
    if (const auto* d = std::get_if<Disk>(&set[i])) {
      family.contours.emplace_back(Circle{d->center, d->radius + delta});
    } else {
      const Polygon& poly = std::get<Polygon>(set[i]);
      auto pts = rounded_offset(poly, delta);
      // A deep notch closes up before the offset reaches the requested
      // distance; the hull's offset encloses the same component.
      if (!polyline_simple(pts)) pts = rounded_offset(convex_hull(poly), delta);
      if (!polyline_simple(pts))
        fail(ErrorCode::ContourCollision, "offset of component " + std::to_string(i) + " self-intersects");
      family.contours.emplace_back(ClosedPolyline{std::move(pts)});
    }
  }
  try {
    check_contour_family(set, family);
  } catch (const Error& e) {
    fail(ErrorCode::ContourCollision, std::string("inflation too large: ") + e.what());
  }
  return family;
}

}  // namespace unitay
