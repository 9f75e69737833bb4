#include "unitay/construct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "unitay/error.hpp"
#include "unitay/minimax.hpp"

namespace unitay {

namespace {

// Point at fraction t in [0, 1) of the boundary length.
Point boundary_point(const Shape& s, double t) {
  if (const auto* d = std::get_if<Disk>(&s)) return d->center + std::polar(d->radius, 2.0 * std::numbers::pi * t);
  const auto& v = std::get<Polygon>(s).vertices;
  double target = t * perimeter(s);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    const double len = std::abs(b - a);
    if (target <= len || i + 1 == v.size()) return a + (b - a) * std::min(1.0, target / len);
    target -= len;
  }
  return v.front();
}

struct Errors {
  double k0 = 0.0;
  double pi = 0.0;
};

template <typename PointsFor>
Errors validation_errors(const ValidatedSet& set, const PolynomialC& s, const PolynomialC& p0, const PolynomialC& u,
                         Complex beta, PointsFor points_for) {
  Errors e;
  const ShapeUnion& shapes = set.shapes();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (const Point& z : points_for(i)) {
      if (i == 0)
        e.k0 = std::max(e.k0, std::abs(s(z) - p0(z)));
      else
        e.pi = std::max(e.pi, std::abs(beta * s(z) - u(z)));
    }
  }
  return e;
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

RateEnvelope fit_rate_envelope(const std::vector<std::pair<std::size_t, double>>& values) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, v] : values)
    if (v > 0.0 && std::isfinite(v)) pts.emplace_back(static_cast<double>(n), std::log(v));
  require(pts.size() >= 3, ErrorCode::PreconditionViolated, "rate envelope needs at least three positive values");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  const double slope = sxy / sxx;
  double intercept = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pts) intercept = std::max(intercept, y - slope * x);
  RateEnvelope env;
  env.c0 = std::exp(slope);
  env.constant = std::exp(intercept);
  env.points = pts.size();
  return env;
}

UniversalStep construct_step(const ValidatedSet& set, Point z0, const PolynomialC& p0, const PolynomialC& u,
                             double lambda, const RhoEstimate& rho, const ConstructOptions& options) {
  require(!u.is_zero(), ErrorCode::PreconditionViolated, "u must not vanish identically");
  require(options.eps0 > 0.0 && options.s0 > 0.0, ErrorCode::PreconditionViolated, "eps0 and s0 must be positive");
  require(options.n_max >= 1 && options.n_max <= 200, ErrorCode::PreconditionViolated, "n_max must lie in 1..200");
  dist_interior_point_to_complement(z0, set.k0());
  const double mag = std::abs(lambda);
  if (!(mag > rho.upper && mag < 1.0 / rho.upper))
    fail(ErrorCode::RefusedOutsideInterval, "|lambda| = " + describe(mag) + " is outside (" + describe(rho.upper) +
                                                ", " + describe(1.0 / rho.upper) + ")");

  const ShapeUnion& shapes = set.shapes();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  UniversalStep step;
  step.random_points_per_component = options.random_points;
  bool found = false;
  std::size_t last = options.n_max;
  double best_k0 = std::numeric_limits<double>::infinity();
  double best_pi = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= last; ++n) {
    const Complex beta = std::pow(Complex(lambda, 0.0), static_cast<double>(n));
    PiecewiseTarget target;
    target.pieces.push_back(p0);
    for (std::size_t i = 1; i < shapes.size(); ++i) target.pieces.push_back((1.0 / beta) * u);
    const std::size_t density = 8 * (n + 1);
    const DeviationRecord rec = best_polynomial(shapes, target, n, density);
    const PolynomialC s = partial_sum(rec.witness, n, z0);

    const Errors dense = validation_errors(set, s, p0, u, beta,
                                           [&](std::size_t i) { return component_grid(shapes[i], 4 * density); });
    StepRecord r;
    r.n = n;
    r.err_k0 = dense.k0;
    r.err_pi = dense.pi;
    r.deviation = rec.d_hat;
    r.scaled_deviation = rec.d_hat * std::pow(mag, static_cast<double>(n));
    best_k0 = std::min(best_k0, dense.k0);
    best_pi = std::min(best_pi, dense.pi);

    if (!found && dense.k0 < options.eps0 && dense.pi < 1.0 / options.s0) {
      const Errors fresh = validation_errors(set, s, p0, u, beta, [&](std::size_t i) {
        std::vector<Point> pts;
        pts.reserve(options.random_points);
        for (std::size_t k = 0; k < options.random_points; ++k) pts.push_back(boundary_point(shapes[i], unit(rng)));
        return pts;
      });
      if (fresh.k0 < options.eps0 && fresh.pi < 1.0 / options.s0) {
        found = true;
        r.accepted = true;
        step.n0 = n;
        step.s = s;
        step.err_k0 = dense.k0;
        step.err_pi = dense.pi;
        step.random_err_k0 = fresh.k0;
        step.random_err_pi = fresh.pi;
        step.beta_n0 = beta;
        last = std::min<std::size_t>(200, n + options.extra_degrees);
      }
    }
    step.trajectory.push_back(r);
  }
  if (!found)
    fail(ErrorCode::NotFoundWithinNmax, "no degree up to " + std::to_string(options.n_max) +
                                            " passed validation; best err_K0 " + describe(best_k0) +
                                            ", best err_Pi " + describe(best_pi));

  std::vector<std::pair<std::size_t, double>> scaled;
  for (const StepRecord& r : step.trajectory) scaled.emplace_back(r.n, r.scaled_deviation);
  step.envelope = fit_rate_envelope(scaled);
  return step;
}

std::vector<TracePoint> weighted_sum_trace(const std::vector<Complex>& coefficients, bool periodic,
                                           RationalWeight lambda, Point w, Point z0, std::size_t n_first,
                                           std::size_t n_last) {
  require(!coefficients.empty(), ErrorCode::InvalidInput, "at least one coefficient is required");
  for (const Complex& c : coefficients)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorCode::InvalidInput, "coefficients must be finite");
  require(std::isfinite(lambda.numerator) && std::isfinite(lambda.denominator) && lambda.denominator != 0.0,
          ErrorCode::InvalidInput, "lambda must be a finite ratio");
  require(n_first <= n_last && n_last <= 500, ErrorCode::PreconditionViolated, "need n_first <= n_last <= 500");

  using LC = std::complex<long double>;
  const LC zeta(static_cast<long double>(w.real() - z0.real()), static_cast<long double>(w.imag() - z0.imag()));
  const long double num = std::fabs(static_cast<long double>(lambda.numerator));
  const long double den = std::fabs(static_cast<long double>(lambda.denominator));
  auto coefficient = [&](std::size_t k) -> LC {
    if (k >= coefficients.size() && !periodic) return {};
    const Complex c = coefficients[k % coefficients.size()];
    return {static_cast<long double>(c.real()), static_cast<long double>(c.imag())};
  };

  std::vector<TracePoint> out;
  LC partial{};
  LC power(1.0L, 0.0L);
  long double num_pow = 1.0L;
  long double den_pow = 1.0L;
  for (std::size_t n = 0; n <= n_last; ++n) {
    partial += coefficient(n) * power;
    power *= zeta;
    if (n >= 1) {
      num_pow *= num;
      den_pow *= den;
    }
    if (n < n_first) continue;
    const long double value = std::abs(partial) * num_pow / den_pow;
    TracePoint t;
    t.n = n;
    t.modulus = static_cast<double>(value);
    t.log10_modulus = value > 0.0L ? static_cast<double>(std::log10(std::abs(partial)) + n * std::log10(num) -
                                                         n * std::log10(den))
                                   : -std::numeric_limits<double>::infinity();
    out.push_back(t);
  }
  return out;
}

}  // namespace unitay
