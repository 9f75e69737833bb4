#include "unitay/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "unitay/error.hpp"

namespace unitay {

PiecewiseTarget PiecewiseTarget::constants(const std::vector<Complex>& values) {
  PiecewiseTarget t;
  for (const Complex& v : values) t.pieces.push_back(PolynomialC::constant(v));
  return t;
}

bool PiecewiseTarget::has_distinct_pieces() const {
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const PolynomialC diff = pieces[i] + Complex{-1.0, 0.0} * pieces[0];
    if (!diff.is_zero()) return true;
  }
  return false;
}

// --- Arnoldi basis ---------------------------------------------------------

ArnoldiBasis::ArnoldiBasis(const std::vector<Point>& points, std::size_t degree) : degree_(degree) {
  require(points.size() > degree, ErrorCode::GridTooCoarse, "fewer grid points than basis polynomials");
  const auto m = static_cast<Eigen::Index>(points.size());
  Complex mean{};
  for (const Point& z : points) mean += z;
  center_ = mean / static_cast<double>(points.size());
  scale_ = 0.0;
  for (const Point& z : points) scale_ = std::max(scale_, std::abs(z - center_));
  if (scale_ == 0.0) scale_ = 1.0;

  Eigen::VectorXcd u(m);
  for (Eigen::Index i = 0; i < m; ++i) u(i) = (points[static_cast<std::size_t>(i)] - center_) / scale_;
  const double root_m = std::sqrt(static_cast<double>(m));
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  q_ = Eigen::MatrixXcd::Zero(m, cols);
  h_ = Eigen::MatrixXcd::Zero(cols, std::max<Eigen::Index>(cols - 1, 0));
  q_.col(0).setOnes();
  for (Eigen::Index k = 0; k + 1 < cols; ++k) {
    Eigen::VectorXcd v = u.cwiseProduct(q_.col(k));
    // Classical Gram-Schmidt, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd proj = q_.leftCols(k + 1).adjoint() * v / static_cast<double>(m);
      v -= q_.leftCols(k + 1) * proj;
      h_.col(k).head(k + 1) += proj;
    }
    const double norm = v.norm() / root_m;
    require(norm > 0.0, ErrorCode::GridTooCoarse, "grid cannot support the requested degree");
    h_(k + 1, k) = norm;
    q_.col(k + 1) = v / norm;
  }
}

Eigen::MatrixXcd ArnoldiBasis::evaluate(const std::vector<Point>& points, std::size_t columns) const {
  require(columns >= 1 && columns <= degree_ + 1, ErrorCode::InvalidInput, "column count outside the basis");
  const auto m = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(columns);
  Eigen::VectorXcd u(m);
  for (Eigen::Index i = 0; i < m; ++i) u(i) = (points[static_cast<std::size_t>(i)] - center_) / scale_;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, cols);
  w.col(0).setOnes();
  for (Eigen::Index k = 0; k + 1 < cols; ++k) {
    Eigen::VectorXcd v = u.cwiseProduct(w.col(k)) - w.leftCols(k + 1) * h_.col(k).head(k + 1);
    w.col(k + 1) = v / h_(k + 1, k);
  }
  return w;
}

Complex ArnoldiBasis::evaluate(Point z, const Eigen::VectorXcd& a) const {
  const Complex u = (z - center_) / scale_;
  const auto cols = a.size();
  std::vector<Complex> w(static_cast<std::size_t>(cols));
  w[0] = 1.0;
  Complex acc = a(0);
  for (Eigen::Index k = 0; k + 1 < cols; ++k) {
    Complex v = u * w[static_cast<std::size_t>(k)];
    for (Eigen::Index j = 0; j <= k; ++j) v -= h_(j, k) * w[static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(k + 1)] = v / h_(k + 1, k);
    acc += a(k + 1) * w[static_cast<std::size_t>(k + 1)];
  }
  return acc;
}

PolynomialC ArnoldiBasis::to_polynomial(const Eigen::VectorXcd& a) const {
  const auto cols = static_cast<std::size_t>(a.size());
  // basis[k] holds the monomial coefficients (in u) of q_k.
  std::vector<std::vector<Complex>> basis(cols);
  basis[0] = {Complex{1.0, 0.0}};
  std::vector<Complex> total(cols);
  total[0] = a(0);
  for (std::size_t k = 0; k + 1 < cols; ++k) {
    std::vector<Complex> next(k + 2);
    for (std::size_t i = 0; i <= k; ++i) next[i + 1] += basis[k][i];
    for (std::size_t j = 0; j <= k; ++j) {
      const Complex hjk = h_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      for (std::size_t i = 0; i < basis[j].size(); ++i) next[i] -= hjk * basis[j][i];
    }
    const Complex sub = h_(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k));
    for (Complex& c : next) c /= sub;
    for (std::size_t i = 0; i < next.size(); ++i) total[i] += a(static_cast<Eigen::Index>(k + 1)) * next[i];
    basis[k + 1] = std::move(next);
  }
  return PolynomialC(center_, std::move(total), scale_);
}

std::size_t BasisPolynomial::degree() const {
  for (Eigen::Index k = coefficients.size() - 1; k > 0; --k)
    if (coefficients(k) != Complex{}) return static_cast<std::size_t>(k);
  return 0;
}

// --- Lawson iteration ------------------------------------------------------

namespace {

struct Grid {
  std::vector<Point> points;
  Eigen::VectorXcd target;
};

Grid build_grid(const ShapeUnion& set, const PiecewiseTarget& target, std::size_t density) {
  require(target.pieces.size() == set.size(), ErrorCode::InvalidInput,
          "target needs exactly one polynomial per component");
  Grid g;
  std::vector<Complex> values;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (const Point& z : component_grid(set[i], density)) {
      g.points.push_back(z);
      values.push_back(target.pieces[i](z));
    }
  }
  g.target = Eigen::Map<Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return g;
}

struct LawsonResult {
  Eigen::VectorXcd coefficients;
  double d_hat = 0.0;
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  Eigen::VectorXd weights;
};

// Iteratively reweighted least squares on the first `columns` basis vectors.
LawsonResult lawson(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& f, Eigen::Index columns,
                    Eigen::VectorXd weights, const MinimaxOptions& options) {
  const auto a = basis.leftCols(columns);
  const double floor = 1e-14 * std::max(1.0, f.cwiseAbs().maxCoeff());
  LawsonResult best;
  best.d_hat = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd sw = weights.cwiseSqrt();
    const Eigen::MatrixXcd wa = sw.asDiagonal() * a;
    const Eigen::VectorXcd wf = sw.asDiagonal() * f;
    const Eigen::VectorXcd c = wa.colPivHouseholderQr().solve(wf);
    const Eigen::VectorXcd e = f - a * c;
    const Eigen::VectorXd ae = e.cwiseAbs();
    const double d = ae.maxCoeff();
    const double lb = std::sqrt(std::max(0.0, weights.dot(ae.cwiseAbs2())));
    best.iterations = it;
    if (d < best.d_hat) {
      best.d_hat = d;
      best.coefficients = c;
      best.weights = weights;
    }
    best.lower_bound = std::max(best.lower_bound, std::min(lb, best.d_hat));
    if (best.d_hat <= floor || (best.d_hat - best.lower_bound) <= options.relative_gap * best.d_hat) {
      best.converged = true;
      break;
    }
    Eigen::VectorXd next = weights.cwiseProduct(ae);
    const double total = next.sum();
    if (!(total > 0.0)) break;
    weights = next / total;
  }
  return best;
}

DeviationRecord make_record(const std::shared_ptr<const ArnoldiBasis>& basis, const Grid& grid, std::size_t n,
                            const LawsonResult& r) {
  DeviationRecord rec;
  rec.n = n;
  rec.d_hat = r.d_hat;
  rec.lower_bound = std::min(r.lower_bound, r.d_hat);
  rec.iterations = r.iterations;
  rec.converged = r.converged;
  rec.stable_witness.basis = basis;
  rec.stable_witness.coefficients = r.coefficients;
  rec.witness = basis->to_polynomial(r.coefficients);
  double err = 0.0;
  const Eigen::VectorXcd stable = basis->values().leftCols(r.coefficients.size()) * r.coefficients;
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    err = std::max(err, std::abs(rec.witness(grid.points[i]) - stable(static_cast<Eigen::Index>(i))));
  rec.conversion_error = err;
  return rec;
}

}  // namespace

std::vector<Point> component_grid(const Shape& s, std::size_t density) {
  if (const auto* p = std::get_if<Polygon>(&s)) density = std::max(density, 2 * p->vertices.size());
  return boundary_sample(s, std::max<std::size_t>(density, 4));
}

DeviationRecord best_polynomial(const ShapeUnion& set, const PiecewiseTarget& target, std::size_t n,
                                std::size_t grid_density, const MinimaxOptions& options) {
  require(grid_density >= 8 * (n + 1), ErrorCode::GridTooCoarse,
          "grid density must be at least 8 (n + 1) points per component");
  const Grid grid = build_grid(set, target, grid_density);
  auto basis = std::make_shared<const ArnoldiBasis>(grid.points, n);
  const Eigen::Index m = static_cast<Eigen::Index>(grid.points.size());
  const Eigen::VectorXd w0 = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  const LawsonResult r = lawson(basis->values(), grid.target, static_cast<Eigen::Index>(n + 1), w0, options);
  return make_record(basis, grid, n, r);
}

std::vector<DeviationRecord> deviation_sequence(const ShapeUnion& set, const PiecewiseTarget& target,
                                                std::size_t n_min, std::size_t n_max, std::size_t grid_density,
                                                const MinimaxOptions& options) {
  require(n_min >= 1 && n_min < n_max && n_max <= 200, ErrorCode::PreconditionViolated,
          "need 1 <= n_min < n_max <= 200");
  const std::size_t density = std::max(grid_density, 8 * (n_max + 1));
  const Grid grid = build_grid(set, target, density);
  auto basis = std::make_shared<const ArnoldiBasis>(grid.points, n_max);
  const Eigen::Index m = static_cast<Eigen::Index>(grid.points.size());
  Eigen::VectorXd weights = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));

  std::vector<DeviationRecord> out;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    LawsonResult r = lawson(basis->values(), grid.target, static_cast<Eigen::Index>(n + 1), weights, options);
    if (!out.empty() && r.d_hat > out.back().d_hat) {
      // The basis is nested, so the previous witness is a degree-n candidate.
      Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n + 1));
      padded.head(out.back().stable_witness.coefficients.size()) = out.back().stable_witness.coefficients;
      r.coefficients = padded;
      r.d_hat = out.back().d_hat;
    }
    // Warm start near the previous extremal set; the uniform share keeps every
    // point reachable, since multiplicative updates cannot revive a zero weight.
    if (r.weights.size() == m) weights = 0.5 * r.weights + Eigen::VectorXd::Constant(m, 0.5 / static_cast<double>(m));
    out.push_back(make_record(basis, grid, n, r));
  }
  return out;
}

TargetIndependenceReport target_independence_check(const ShapeUnion& set, const std::vector<PiecewiseTarget>& targets,
                                                   std::size_t n_min, std::size_t n_max) {
  require(targets.size() >= 2, ErrorCode::PreconditionViolated, "need at least two targets");
  for (const PiecewiseTarget& t : targets)
    require(t.has_distinct_pieces(), ErrorCode::PreconditionViolated, "each target needs distinct component pieces");
  TargetIndependenceReport report;
  for (const PiecewiseTarget& t : targets) report.estimates.push_back(rho_from_deviations(deviation_sequence(set, t, n_min, n_max)));
  report.pass = true;
  for (std::size_t i = 0; i < report.estimates.size(); ++i) {
    for (std::size_t j = i + 1; j < report.estimates.size(); ++j) {
      const double diff = std::abs(report.estimates[i].value - report.estimates[j].value);
      const double tol = std::max(0.02, report.estimates[i].width() + report.estimates[j].width());
      if (diff > report.max_difference) {
        report.max_difference = diff;
        report.tolerance = tol;
      }
      if (diff > tol) report.pass = false;
    }
  }
  if (report.tolerance == 0.0) report.tolerance = 0.02;
  return report;
}

// --- Bernstein inequality --------------------------------------------------

BernsteinReport bernstein_check(const PolynomialEvaluator& p, std::size_t degree, const ShapeUnion& set,
                                const GreenModel& model, const std::vector<Point>& test_points, double tolerance) {
  require(degree >= 1, ErrorCode::PreconditionViolated, "Bernstein check needs degree >= 1");
  BernsteinReport report;
  for (const Shape& s : set.components())
    for (const Point& z : component_grid(s, 8192)) report.sup_norm = std::max(report.sup_norm, std::abs(p(z)));
  require(report.sup_norm > 0.0, ErrorCode::PreconditionViolated, "polynomial vanishes on the set");
  report.worst_margin = -std::numeric_limits<double>::infinity();
  for (const Point& z : test_points) {
    require(!set.contains(z), ErrorCode::PointInsideSet, "Bernstein test point lies in the set");
    const double lhs = std::pow(std::abs(p(z)) / report.sup_norm, 1.0 / static_cast<double>(degree));
    const double rhs = std::exp(model.value(z));
    const double margin = lhs - rhs;
    ++report.points_checked;
    if (margin > report.worst_margin) {
      report.worst_margin = margin;
      report.worst_point = z;
    }
    if (margin > tolerance) ++report.violations;
  }
  if (report.violations > 0) {
    fail(ErrorCode::ViolationFound, std::to_string(report.violations) + " violation(s); worst margin " +
                                        std::to_string(report.worst_margin) + " at (" +
                                        std::to_string(report.worst_point.real()) + ", " +
                                        std::to_string(report.worst_point.imag()) + ")");
  }
  return report;
}

BernsteinReport bernstein_check(const PolynomialC& p, const ShapeUnion& set, const GreenModel& model,
                                const std::vector<Point>& test_points, double tolerance) {
  return bernstein_check([&](Point z) { return p(z); }, p.degree(), set, model, test_points, tolerance);
}

}  // namespace unitay
