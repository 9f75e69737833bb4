// Approximation-route estimate of the convergence factor from a deviation
// sequence.
//
// Best deviations on sets with corners or several components decay like
// C n^c rho^n rather than C rho^n, and the algebraic factor biases a straight
// line through (n, ln d_n) at the degrees reachable in double precision. The
// fit therefore carries a ln(n) column; for exactly geometric data its
// coefficient is zero and the plain slope is recovered.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "unitay/error.hpp"
#include "unitay/minimax.hpp"

namespace unitay {

namespace {

constexpr double kNoiseFloor = 1e-13;
constexpr double kMinR2 = 0.98;
constexpr std::size_t kMinPoints = 8;

struct Fit {
  double slope = 0.0;
  double slope_se = 0.0;
  double log_coefficient = 0.0;
  double r2 = 0.0;
};

Fit fit_tail(const std::vector<std::pair<std::size_t, double>>& s, std::size_t start) {
  const auto k = static_cast<Eigen::Index>(s.size() - start);
  Eigen::MatrixXd x(k, 3);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double n = static_cast<double>(s[start + static_cast<std::size_t>(i)].first);
    x(i, 0) = 1.0;
    x(i, 1) = n;
    x(i, 2) = std::log(n);
    y(i) = std::log(s[start + static_cast<std::size_t>(i)].second);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - x * beta;
  const double ss_res = resid.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  Fit f;
  f.slope = beta(1);
  f.log_coefficient = beta(2);
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  const double sigma2 = ss_res / static_cast<double>(k - 3);
  const Eigen::MatrixXd cov = (x.transpose() * x).inverse() * sigma2;
  f.slope_se = std::sqrt(std::max(0.0, cov(1, 1)));
  return f;
}

}  // namespace

RhoEstimate rho_from_deviations(const std::vector<std::pair<std::size_t, double>>& samples) {
  std::vector<std::pair<std::size_t, double>> usable;
  for (const auto& [n, d] : samples)
    if (n >= 1 && d > kNoiseFloor && std::isfinite(d)) usable.emplace_back(n, d);
  std::sort(usable.begin(), usable.end());
  require(usable.size() >= kMinPoints, ErrorCode::PreconditionViolated,
          "need at least 8 deviations above the noise floor, got " + std::to_string(usable.size()));
  double dmax = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (const auto& [n, d] : usable) {
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  require(dmax >= 100.0 * dmin, ErrorCode::InsufficientDecadeRange,
          "deviations span less than two orders of magnitude");

  RhoEstimate est;
  est.method = RhoMethod::DeviationFit;
  // Longest tail with a good fit; the statement being estimated is a limsup.
  std::size_t chosen = usable.size();
  Fit fit;
  Fit best_fit;
  std::size_t best_start = 0;
  best_fit.r2 = -std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start + kMinPoints <= usable.size(); ++start) {
    const Fit f = fit_tail(usable, start);
    if (f.r2 >= kMinR2) {
      chosen = start;
      fit = f;
      break;
    }
    if (f.r2 > best_fit.r2) {
      best_fit = f;
      best_start = start;
    }
  }
  if (chosen == usable.size()) {
    chosen = best_start;
    fit = best_fit;
    est.notes.push_back("no tail reached R^2 >= 0.98; using the best-fitting tail");
  }
  require(fit.slope < 0.0, ErrorCode::NonConvergence,
          "deviations do not decay geometrically (fitted slope " + std::to_string(fit.slope) + ")");
  est.value = std::exp(fit.slope);
  est.lower = std::exp(fit.slope - 2.0 * fit.slope_se);
  est.upper = std::exp(fit.slope + 2.0 * fit.slope_se);
  if (est.upper >= 1.0) {
    est.upper = std::nextafter(1.0, 0.0);
    est.notes.push_back("upper bracket clipped below 1");
  }
  est.value = std::min(est.value, est.upper);
  est.add_metric("tail_first_n", static_cast<double>(usable[chosen].first));
  est.add_metric("tail_last_n", static_cast<double>(usable.back().first));
  est.add_metric("tail_points", static_cast<double>(usable.size() - chosen));
  est.add_metric("r_squared", fit.r2);
  est.add_metric("slope", fit.slope);
  est.add_metric("slope_standard_error", fit.slope_se);
  est.add_metric("log_n_coefficient", fit.log_coefficient);
  return est;
}

RhoEstimate rho_from_deviations(const std::vector<DeviationRecord>& records) {
  std::vector<std::pair<std::size_t, double>> samples;
  for (const DeviationRecord& r : records) samples.emplace_back(r.n, r.d_hat);
  return rho_from_deviations(samples);
}

}  // namespace unitay
