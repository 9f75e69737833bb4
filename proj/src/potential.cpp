#include "unitay/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "unitay/error.hpp"

namespace unitay {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

// Charge-placement constants for polygons, tuned on the hexagon/square pair.
constexpr double kOffsetFraction = 0.25;   // inward offset of log charges, in units of 2*area/perimeter
constexpr double kCornerSpread = 3.0;      // corner charges per vertex = ceil(kCornerSpread * sqrt(N))
constexpr double kCornerGrading = 3.5;     // exponent of the geometric grading toward corners
constexpr double kCornerReach = 0.4;       // farthest corner charge, relative to the local length scale
constexpr double kConstraintWeight = 1e6;  // weight of the sum-of-weights row against unit-norm columns

struct ChargeLayout {
  std::vector<Point> log_points;
  std::vector<Point> dipole_points;
  std::vector<Point> collocation;
  std::vector<Point> test_grid;
};

std::size_t corner_count(std::size_t charges) {
  return static_cast<std::size_t>(std::ceil(kCornerSpread * std::sqrt(static_cast<double>(charges))));
}

// Distance along the ray p + t*dir (t > 0) to the first edge that does not
// touch vertex i.
double ray_exit(const std::vector<Point>& v, std::size_t i, Point dir) {
  const std::size_t m = v.size();
  const Point p = v[i];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    if (k == i || (k + 1) % m == i) continue;
    const Point a = v[k];
    const Point e = v[(k + 1) % m] - a;
    // Solve p + t*dir = a + s*e.
    const double den = dir.real() * (-e.imag()) - dir.imag() * (-e.real());
    if (den == 0.0) continue;
    const Point r = a - p;
    const double t = (r.real() * (-e.imag()) - r.imag() * (-e.real())) / den;
    const double s = (dir.real() * r.imag() - dir.imag() * r.real()) / den;
    if (t > 0.0 && s >= 0.0 && s <= 1.0) best = std::min(best, t);
  }
  return best;
}

void place_polygon(const Polygon& poly, std::size_t charges, std::size_t colloc, ChargeLayout& out) {
  const auto& v = poly.vertices;
  const Shape shape{poly};
  const std::size_t m = v.size();
  const double area = polygon_signed_area(v);
  const double per = perimeter(shape);
  const double h = 2.0 * area / per;
  const double offset = kOffsetFraction * h;

  // Log charges along the inward offset of each edge.
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % m];
    const Point inward = Point{0.0, 1.0} * (b - a) / std::abs(b - a);
    const auto cnt = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(charges) * std::abs(b - a) / per)));
    for (std::size_t k = 0; k < cnt; ++k) {
      const Point q = a + (b - a) * ((static_cast<double>(k) + 0.5) / static_cast<double>(cnt)) + offset * inward;
      if (dist_point_to_shape(q, shape) == 0.0 && dist_to_boundary(q, shape) >= 0.5 * offset) out.log_points.push_back(q);
    }
  }

  // Dipoles graded geometrically toward each vertex along the interior bisector.
  const std::size_t nc = corner_count(charges);
  for (std::size_t i = 0; i < m; ++i) {
    const Point p = v[i];
    const Point a = v[(i + m - 1) % m];
    const Point b = v[(i + 1) % m];
    const Point u = (b - p) / std::abs(b - p);
    const Point w = (a - p) / std::abs(a - p);
    Point bis = u + w;
    const Point e1 = p - a;
    const Point e2 = b - p;
    const bool reflex = e1.real() * e2.imag() - e1.imag() * e2.real() < 0.0;
    if (std::abs(bis) < 1e-12) {
      bis = Point{0.0, 1.0} * u;  // straight angle: inward normal
    } else {
      bis /= std::abs(bis);
      if (reflex) bis = -bis;
    }
    double reach = kCornerReach * std::min({std::abs(b - p), std::abs(a - p), ray_exit(v, i, bis)});
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<Point> cluster;
      bool ok = true;
      for (std::size_t j = 1; j <= nc && ok; ++j) {
        const double r = reach * std::exp(-kCornerGrading * (std::sqrt(double(nc)) - std::sqrt(double(j))));
        const Point q = p + r * bis;
        ok = dist_point_to_shape(q, shape) == 0.0 && dist_to_boundary(q, shape) > 0.0;
        cluster.push_back(q);
      }
      if (ok) {
        out.dipole_points.insert(out.dipole_points.end(), cluster.begin(), cluster.end());
        break;
      }
      reach *= 0.5;
    }
  }

  const std::size_t corner_colloc = 2 * nc;
  auto col = clustered_boundary_sample(shape, colloc, corner_colloc, 0.0);
  out.collocation.insert(out.collocation.end(), col.begin(), col.end());
  auto test = clustered_boundary_sample(shape, 4 * colloc, 4 * corner_colloc, 0.5);
  out.test_grid.insert(out.test_grid.end(), test.begin(), test.end());
}

void place_disk(const Disk& d, std::size_t charges, std::size_t colloc, ChargeLayout& out) {
  for (std::size_t k = 0; k < charges; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(charges);
    out.log_points.push_back(d.center + 0.7 * d.radius * Point{std::cos(t), std::sin(t)});
  }
  auto col = clustered_boundary_sample(Shape{d}, colloc, 0, 0.0);
  out.collocation.insert(out.collocation.end(), col.begin(), col.end());
  auto test = clustered_boundary_sample(Shape{d}, 4 * colloc, 0, 0.5);
  out.test_grid.insert(out.test_grid.end(), test.begin(), test.end());
}

double golden_max(const std::function<double(double)>& f, double a, double b, int iterations = 60) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

// Max of f over a closed curve given by a periodic parametrization, from a
// uniform scan refined around the best sample.
double max_on_closed_curve(const std::function<double(double)>& f, std::size_t samples) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double v = f(static_cast<double>(k) / static_cast<double>(samples));
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  const double step = 1.0 / static_cast<double>(samples);
  const double t = static_cast<double>(arg) * step;
  return std::max(best, golden_max(f, t - step, t + step));
}

void require_disjoint(const GreenModel& model, const Shape& s, ErrorCode code, const std::string& what) {
  for (const Shape& c : model.source().components())
    require(shape_distance(s, c) > 0.0, code, what + " meets the set of the Green function");
}

}  // namespace

double GreenModel::value(Point z) const {
  double g = robin_constant_;
  for (std::size_t j = 0; j < charge_points_.size(); ++j) g += 0.5 * charge_weights_[j] * std::log(std::norm(z - charge_points_[j]));
  for (std::size_t k = 0; k < dipole_points_.size(); ++k) g += std::real(dipole_moments_[k] / (z - dipole_points_[k]));
  return g;
}

Complex GreenModel::derivative(Point z) const {
  Complex d{0.0, 0.0};
  for (std::size_t j = 0; j < charge_points_.size(); ++j) d += charge_weights_[j] / (z - charge_points_[j]);
  for (std::size_t k = 0; k < dipole_points_.size(); ++k) {
    const Complex r = 1.0 / (z - dipole_points_[k]);
    d -= dipole_moments_[k] * r * r;
  }
  return d;
}

Complex GreenModel::second_derivative(Point z) const {
  Complex d{0.0, 0.0};
  for (std::size_t j = 0; j < charge_points_.size(); ++j) {
    const Complex r = 1.0 / (z - charge_points_[j]);
    d -= charge_weights_[j] * r * r;
  }
  for (std::size_t k = 0; k < dipole_points_.size(); ++k) {
    const Complex r = 1.0 / (z - dipole_points_[k]);
    d += 2.0 * dipole_moments_[k] * r * r * r;
  }
  return d;
}

GreenModel solve_green_once(const ShapeUnion& set, std::size_t charges_per_component,
                            std::size_t colloc_per_component) {
  require(charges_per_component >= 16, ErrorCode::PreconditionViolated, "need at least 16 charges per component");
  require(colloc_per_component >= 2 * charges_per_component, ErrorCode::PreconditionViolated,
          "need at least twice as many collocation points as charges");

  ChargeLayout layout;
  for (const Shape& s : set.components()) {
    if (const auto* d = std::get_if<Disk>(&s))
      place_disk(*d, charges_per_component, colloc_per_component, layout);
    else
      place_polygon(std::get<Polygon>(s), charges_per_component, colloc_per_component, layout);
  }

  const std::size_t nq = layout.log_points.size();
  const std::size_t np = layout.dipole_points.size();
  const std::size_t cols = nq + 1 + 2 * np;
  const std::size_t rows = layout.collocation.size();
  require(rows >= cols, ErrorCode::PreconditionViolated, "collocation grid smaller than the unknown count");

  Eigen::MatrixXd a(rows + 1, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Point z = layout.collocation[i];
    for (std::size_t j = 0; j < nq; ++j) a(i, j) = 0.5 * std::log(std::norm(z - layout.log_points[j]));
    a(i, nq) = 1.0;
    for (std::size_t k = 0; k < np; ++k) {
      const Complex r = 1.0 / (z - layout.dipole_points[k]);
      a(i, nq + 1 + 2 * k) = r.real();
      a(i, nq + 2 + 2 * k) = r.imag();
    }
  }
  // Unit-norm columns, then the weight-sum row.
  Eigen::VectorXd scale(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const double n = a.col(j).head(rows).norm();
    scale(j) = n > 0.0 ? n : 1.0;
    a.col(j).head(rows) /= scale(j);
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + 1);
  for (std::size_t j = 0; j < cols; ++j) a(rows, j) = j < nq ? kConstraintWeight / scale(j) : 0.0;
  rhs(rows) = kConstraintWeight;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-14);
  const Eigen::VectorXd y = qr.solve(rhs);

  GreenModel model(set);
  model.charges_per_component_ = charges_per_component;
  const auto r = qr.matrixR();
  const double top = std::abs(r(0, 0));
  const auto rank = qr.rank();
  model.condition_estimate_ = rank > 0 ? top / std::abs(r(rank - 1, rank - 1)) : std::numeric_limits<double>::infinity();

  double total = 0.0;
  model.charge_points_ = layout.log_points;
  model.charge_weights_.resize(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    model.charge_weights_[j] = y(j) / scale(j);
    total += model.charge_weights_[j];
  }
  // The weighted row leaves a sum of 1 - O(1e-12); remove the remainder.
  for (double& w : model.charge_weights_) w /= total;
  model.robin_constant_ = y(nq) / scale(nq);
  model.dipole_points_ = layout.dipole_points;
  model.dipole_moments_.resize(np);
  for (std::size_t k = 0; k < np; ++k) {
    const double cr = y(nq + 1 + 2 * k) / scale(nq + 1 + 2 * k);
    const double ci = y(nq + 2 + 2 * k) / scale(nq + 2 + 2 * k);
    // cr*Re(1/(z-p)) + ci*Im(1/(z-p)) = Re((cr - i ci)/(z-p))
    model.dipole_moments_[k] = Complex{cr, -ci};
  }

  double residual = 0.0;
  for (const Point& z : layout.test_grid) residual = std::max(residual, std::abs(model.value(z)));
  model.residual_norm_ = residual;
  return model;
}

GreenModel solve_green(const ShapeUnion& set, std::size_t charges_per_component, std::size_t colloc_per_component,
                       double residual_limit, int max_refinements) {
  std::size_t charges = charges_per_component;
  std::size_t colloc = colloc_per_component;
  for (int attempt = 0;; ++attempt) {
    GreenModel model = solve_green_once(set, charges, colloc);
    require(std::isfinite(model.residual_norm()), ErrorCode::IllConditioned,
            "non-finite residual; condition estimate " + std::to_string(model.condition_estimate()));
    if (model.residual_norm() <= residual_limit) return model;
    if (attempt >= max_refinements) {
      const std::string detail = "residual " + std::to_string(model.residual_norm()) + " with " +
                                 std::to_string(charges) + " charges per component, condition estimate " +
                                 std::to_string(model.condition_estimate());
      if (model.condition_estimate() > 1e15) fail(ErrorCode::IllConditioned, detail);
      fail(ErrorCode::ResidualTooLarge, detail);
    }
    charges *= 2;
    colloc *= 2;
  }
}

GreenModel solve_green(const ShapeUnion& set, const GreenOptions& options) {
  return solve_green(set, options.charges_per_component, options.colloc_factor * options.charges_per_component,
                     options.residual_limit, options.max_refinements);
}

double eval_green(const GreenModel& model, Point z) {
  require(!model.source().contains(z), ErrorCode::PointInsideSet, "point lies in the set");
  return model.value(z);
}

double capacity(const GreenModel& model) { return std::exp(-model.robin_constant()); }

double max_green_over_disk(const GreenModel& model, const Disk& disk) {
  require(disk.radius >= 0.0, ErrorCode::InvalidInput, "disk radius must be non-negative");
  require_disjoint(model, Shape{disk}, ErrorCode::DiskIntersectsSet, "disk");
  if (disk.radius == 0.0) return model.value(disk.center);
  auto f = [&](double t) { return model.value(disk.center + disk.radius * Point{std::cos(kTwoPi * t), std::sin(kTwoPi * t)}); };
  return max_on_closed_curve(f, 2048);
}

double max_green_over_shape(const GreenModel& model, const Shape& shape) {
  if (const auto* d = std::get_if<Disk>(&shape)) return max_green_over_disk(model, *d);
  require_disjoint(model, shape, ErrorCode::DiskIntersectsSet, "shape");
  const auto& v = std::get<Polygon>(shape).vertices;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    constexpr std::size_t kPerEdge = 512;
    std::size_t arg = 0;
    double edge_best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= kPerEdge; ++k) {
      const double val = model.value(a + (b - a) * (double(k) / kPerEdge));
      if (val > edge_best) {
        edge_best = val;
        arg = k;
      }
    }
    const double lo = std::max(0.0, (double(arg) - 1.0) / kPerEdge);
    const double hi = std::min(1.0, (double(arg) + 1.0) / kPerEdge);
    edge_best = std::max(edge_best, golden_max([&](double t) { return model.value(a + (b - a) * t); }, lo, hi));
    best = std::max(best, edge_best);
  }
  return best;
}

double theta_for_contour(const GreenModel& model, const ContourFamily& family) {
  double worst = 0.0;
  for (const JordanContour& c : family.contours) {
    for (const Shape& s : model.source().components())
      require(c.distance_to(s) > 0.0, ErrorCode::ContourTouchesSet, "contour meets the set");
    const std::size_t samples = std::max<std::size_t>(512, c.sampling().size());
    // e^{-g} is largest where g is smallest.
    auto f = [&](double t) { return -model.value(c.at(t)); };
    worst = std::max(worst, std::exp(max_on_closed_curve(f, samples)));
  }
  return worst;
}

}  // namespace unitay
