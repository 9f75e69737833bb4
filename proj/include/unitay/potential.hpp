#pragma once

#include <cstddef>
#include <vector>

#include "unitay/contour.hpp"
#include "unitay/geometry.hpp"
#include "unitay/rho.hpp"

namespace unitay {

/// Knobs of the charge-simulation solver.
struct GreenOptions {
  std::size_t charges_per_component = 128;
  /// Collocation points per component, as a multiple of the charge count (>= 2).
  std::size_t colloc_factor = 2;
  /// Largest acceptable boundary residual after refinement.
  double residual_limit = 1e-4;
  /// How often the charge count may double while the residual is too large.
  int max_refinements = 2;
};

/// Discrete representation of the Green function of the complement of a
/// union of shapes, with pole at infinity:
///
///   g(z) = sum_j w_j ln|z - q_j| + sum_k Re(b_k / (z - p_k)) + robin_constant
///
/// The log weights sum to one, so g(z) - ln|z| tends to the Robin constant.
/// The dipole terms only appear for polygons, clustered toward the corners
/// where the boundary is not smooth.
class GreenModel {
 public:
  const ShapeUnion& source() const { return source_; }
  const std::vector<Point>& charge_points() const { return charge_points_; }
  const std::vector<double>& charge_weights() const { return charge_weights_; }
  const std::vector<Point>& dipole_points() const { return dipole_points_; }
  const std::vector<Complex>& dipole_moments() const { return dipole_moments_; }
  double robin_constant() const { return robin_constant_; }
  double residual_norm() const { return residual_norm_; }
  /// Ratio of the extreme pivots of the column-pivoted QR factor.
  double condition_estimate() const { return condition_estimate_; }
  std::size_t charges_per_component() const { return charges_per_component_; }

  /// g(z) without the membership check (meaningless inside L).
  double value(Point z) const;
  /// Complex potential derivative; grad g = conj(derivative).
  Complex derivative(Point z) const;
  Complex second_derivative(Point z) const;

 private:
  explicit GreenModel(ShapeUnion source) : source_(std::move(source)) {}
  friend GreenModel solve_green_once(const ShapeUnion&, std::size_t, std::size_t);

  ShapeUnion source_;
  std::vector<Point> charge_points_;
  std::vector<double> charge_weights_;
  std::vector<Point> dipole_points_;
  std::vector<Complex> dipole_moments_;
  double robin_constant_ = 0.0;
  double residual_norm_ = 0.0;
  double condition_estimate_ = 0.0;
  std::size_t charges_per_component_ = 0;
};

/// One least-squares fit without refinement.
GreenModel solve_green_once(const ShapeUnion& set, std::size_t charges_per_component,
                            std::size_t colloc_per_component);

/// Fits the model and doubles the charge count while the residual exceeds
/// the limit. Throws ResidualTooLarge or IllConditioned when refinement fails.
GreenModel solve_green(const ShapeUnion& set, std::size_t charges_per_component, std::size_t colloc_per_component,
                       double residual_limit = 1e-4, int max_refinements = 2);
GreenModel solve_green(const ShapeUnion& set, const GreenOptions& options = {});

/// Throws PointInsideSet for z in L.
double eval_green(const GreenModel& model, Point z);

double capacity(const GreenModel& model);

/// Maximum of g over a closed disk disjoint from the source set, found on the
/// boundary circle. Throws DiskIntersectsSet.
double max_green_over_disk(const GreenModel& model, const Disk& disk);

/// Maximum of g over a shape disjoint from the source set, found on the
/// shape's boundary. Throws DiskIntersectsSet.
double max_green_over_shape(const GreenModel& model, const Shape& shape);

/// Largest e^{-g} over all contours of the family. Throws ContourTouchesSet.
double theta_for_contour(const GreenModel& model, const ContourFamily& family);

/// Saddle-level route: rasterizes g, bisects on sublevel connectivity until
/// the level bracket is below `level_tolerance`, then polishes the merge point
/// with Newton's method on the complex derivative.
RhoEstimate estimate_rho_green(const GreenModel& model, std::size_t grid_resolution = 256,
                               double level_tolerance = 1e-4);
RhoEstimate estimate_rho_green(const ShapeUnion& set, std::size_t grid_resolution = 256,
                               const GreenOptions& options = {});

}  // namespace unitay
