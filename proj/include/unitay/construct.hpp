#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "unitay/geometry.hpp"
#include "unitay/polynomial.hpp"
#include "unitay/rho.hpp"

namespace unitay {

/// Errors of one candidate degree in the search.
struct StepRecord {
  std::size_t n = 0;
  double err_k0 = 0.0;     // max |S - p0| on K0, validation grid
  double err_pi = 0.0;     // max |lambda^n S - u| on Pi, validation grid
  double deviation = 0.0;  // max |F_n - S| on L, construction grid
  double scaled_deviation = 0.0;  // deviation * |lambda|^n
  bool accepted = false;
};

/// Geometric upper envelope c0^n * constant of the scaled deviations.
struct RateEnvelope {
  double c0 = 0.0;
  double constant = 0.0;
  std::size_t points = 0;
};

struct UniversalStep {
  std::size_t n0 = 0;
  PolynomialC s;  // centered at z0, degree <= n0
  double err_k0 = 0.0;
  double err_pi = 0.0;
  double random_err_k0 = 0.0;
  double random_err_pi = 0.0;
  std::size_t random_points_per_component = 0;
  Complex beta_n0;
  std::vector<StepRecord> trajectory;  // the search plus a few degrees past n0
  RateEnvelope envelope;
};

struct ConstructOptions {
  double eps0 = 0.1;
  double s0 = 10.0;
  std::size_t n_max = 200;
  /// Degrees computed past the accepted one for the rate envelope.
  std::size_t extra_degrees = 12;
  std::size_t random_points = 1000;
  unsigned long long seed = 20240611ULL;
};

/// Searches n = 1..n_max for a polynomial S of degree <= n close to p0 on K0
/// whose weighted n-th partial sum lambda^n S is close to u on Pi.
/// Refuses lambda outside (rho.upper, 1/rho.upper) with RefusedOutsideInterval;
/// throws NotFoundWithinNmax when no degree passes validation.
UniversalStep construct_step(const ValidatedSet& set, Point z0, const PolynomialC& p0, const PolynomialC& u,
                             double lambda, const RhoEstimate& rho, const ConstructOptions& options = {});

/// Least-squares fit of ln(values) against n, shifted up so every point lies on or below it.
RateEnvelope fit_rate_envelope(const std::vector<std::pair<std::size_t, double>>& values);

/// lambda = numerator / denominator kept apart so that lambda^n is formed exactly when possible.
struct RationalWeight {
  double numerator = 1.0;
  double denominator = 1.0;
};

struct TracePoint {
  std::size_t n = 0;
  double modulus = 0.0;  // may be +infinity when beyond double range
  double log10_modulus = 0.0;
};

/// |lambda^n S_n(f, z0)(w)| for n in [n_first, n_last], where S_n is the n-th
/// partial sum of the Taylor series with the given coefficients about z0.
/// Coefficients repeat cyclically when `periodic` is set and are zero past
/// the list otherwise. Requires n_last <= 500.
std::vector<TracePoint> weighted_sum_trace(const std::vector<Complex>& coefficients, bool periodic,
                                           RationalWeight lambda, Point w, Point z0, std::size_t n_first,
                                           std::size_t n_last);

}  // namespace unitay
