#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "unitay/geometry.hpp"
#include "unitay/polynomial.hpp"
#include "unitay/potential.hpp"
#include "unitay/rho.hpp"

namespace unitay {

/// One polynomial per component of L.
struct PiecewiseTarget {
  std::vector<PolynomialC> pieces;

  /// (c_0, c_1, ...) constant on each component.
  static PiecewiseTarget constants(const std::vector<Complex>& values);
  /// True when at least two pieces differ as functions.
  bool has_distinct_pieces() const;
};

/// Orthonormal polynomial basis on a fixed point set built by Arnoldi
/// iteration on the scaled variable u = (z - center) / scale (Vandermonde
/// with Arnoldi). Columns are normalized to Euclidean norm sqrt(#points).
class ArnoldiBasis {
 public:
  ArnoldiBasis(const std::vector<Point>& points, std::size_t degree);

  std::size_t degree() const { return degree_; }
  Point center() const { return center_; }
  double scale() const { return scale_; }
  /// Basis values at the construction points (points x (degree+1)).
  const Eigen::MatrixXcd& values() const { return q_; }
  /// The first `columns` basis polynomials evaluated at arbitrary points.
  Eigen::MatrixXcd evaluate(const std::vector<Point>& points, std::size_t columns) const;
  Complex evaluate(Point z, const Eigen::VectorXcd& coefficients) const;
  /// Monomial form of sum_k a_k q_k about center() with scale().
  PolynomialC to_polynomial(const Eigen::VectorXcd& coefficients) const;

 private:
  std::size_t degree_;
  Point center_;
  double scale_ = 1.0;
  Eigen::MatrixXcd q_;
  Eigen::MatrixXcd h_;  // (degree+1) x degree Hessenberg recurrence
};

/// A polynomial held in a stable basis; cheap to evaluate accurately.
struct BasisPolynomial {
  std::shared_ptr<const ArnoldiBasis> basis;
  Eigen::VectorXcd coefficients;

  Complex operator()(Point z) const { return basis->evaluate(z, coefficients); }
  std::size_t degree() const;
};

struct DeviationRecord {
  std::size_t n = 0;
  double d_hat = 0.0;        // max grid error of the witness
  double lower_bound = 0.0;  // weighted least-squares bound, never above the grid minimax
  PolynomialC witness;       // monomial form about the basis center
  BasisPolynomial stable_witness;
  double conversion_error = 0.0;  // grid max of |witness - stable_witness|
  int iterations = 0;
  bool converged = false;
};

struct MinimaxOptions {
  double relative_gap = 1e-3;  // stop when (d_hat - lower_bound) / d_hat is below this
  int max_iterations = 200;
};

/// Boundary grid used for a component: `density` points from boundary_sample.
std::vector<Point> component_grid(const Shape& s, std::size_t density);

/// Lawson iteration for the best uniform approximation of the target by
/// polynomials of degree <= n on the boundary grids of L.
/// A non-converged run still returns a valid upper bound with converged = false.
DeviationRecord best_polynomial(const ShapeUnion& set, const PiecewiseTarget& target, std::size_t n,
                                std::size_t grid_density, const MinimaxOptions& options = {});

/// Records for n = n_min..n_max on one common grid of density 8 (n_max + 1)
/// or `grid_density`, whichever is larger. d_hat is non-increasing in n.
std::vector<DeviationRecord> deviation_sequence(const ShapeUnion& set, const PiecewiseTarget& target,
                                                std::size_t n_min, std::size_t n_max, std::size_t grid_density = 0,
                                                const MinimaxOptions& options = {});

/// Fits ln d_n = a + n ln(rho) + c ln(n) on the longest tail with R^2 >= 0.98.
RhoEstimate rho_from_deviations(const std::vector<DeviationRecord>& records);
/// Same fit on raw (n, d_n) pairs.
RhoEstimate rho_from_deviations(const std::vector<std::pair<std::size_t, double>>& samples);

struct TargetIndependenceReport {
  std::vector<RhoEstimate> estimates;
  double max_difference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

TargetIndependenceReport target_independence_check(const ShapeUnion& set, const std::vector<PiecewiseTarget>& targets,
                                                   std::size_t n_min, std::size_t n_max);

struct BernsteinReport {
  std::size_t points_checked = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // max of lhs - rhs over the test points
  Point worst_point{};
  double sup_norm = 0.0;      // ||p||_L on the dense grid
};

using PolynomialEvaluator = std::function<Complex(Point)>;

/// Checks (|p(z)| / ||p||_L)^{1/deg p} <= e^{g(z)} + tolerance at each test point.
/// Throws ViolationFound naming the worst point when any check fails.
BernsteinReport bernstein_check(const PolynomialEvaluator& p, std::size_t degree, const ShapeUnion& set,
                                const GreenModel& model, const std::vector<Point>& test_points,
                                double tolerance = 1e-6);
BernsteinReport bernstein_check(const PolynomialC& p, const ShapeUnion& set, const GreenModel& model,
                                const std::vector<Point>& test_points, double tolerance = 1e-6);

}  // namespace unitay
