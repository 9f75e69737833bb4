#include "unitay/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "unitay/error.hpp"

namespace unitay {

namespace {

constexpr double kExactSlack = 1e-12;

Margin exp_margin(double level, double level_error) {
  const double v = std::exp(level);
  return {v, v * std::expm1(level_error)};
}

bool is_unit_disk_at_origin(const Shape& s) {
  const auto* d = std::get_if<Disk>(&s);
  return d && std::abs(d->center) <= kExactSlack && std::abs(d->radius - 1.0) <= kExactSlack;
}

bool inside_open_annulus(const Shape& s) {
  const auto* d = std::get_if<Disk>(&s);
  if (!d) return false;
  const double c = std::abs(d->center);
  return c - d->radius > 1.0 && c + d->radius < 2.0;
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

SequenceSpec SequenceSpec::from_lambda(double lambda) {
  require(std::isfinite(lambda), ErrorCode::InvalidInput, "lambda must be finite");
  SequenceSpec s;
  s.limit_points = {std::abs(lambda)};
  s.generator = lambda;
  return s;
}

SequenceSpec SequenceSpec::from_limit_points(std::vector<double> points) {
  require(!points.empty(), ErrorCode::InvalidInput, "at least one limit point is required");
  for (double p : points)
    require(p >= 0.0 && !std::isnan(p), ErrorCode::InvalidInput, "limit points must be non-negative");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  SequenceSpec s;
  s.limit_points = std::move(points);
  return s;
}

double SequenceSpec::limsup() const { return *std::max_element(limit_points.begin(), limit_points.end()); }

double SequenceSpec::liminf() const { return *std::min_element(limit_points.begin(), limit_points.end()); }

PiecewiseTarget default_deviation_target(std::size_t components) {
  std::vector<Complex> values;
  for (std::size_t i = 0; i < components; ++i) values.emplace_back(static_cast<double>(i), 0.0);
  return PiecewiseTarget::constants(values);
}

Bounds compute_bounds(const ValidatedSet& set, Point z0, const BoundsOptions& options) {
  Bounds b;
  b.z0 = z0;
  b.r0 = dist_interior_point_to_complement(z0, set.k0());
  const ShapeUnion pi = set.pi();
  b.R0 = pi.distance(z0);

  const bool want_green = options.rho_method != RhoMethodChoice::Deviation;
  const bool want_deviation = options.rho_method != RhoMethodChoice::Green;
  if (want_green) b.rho_candidates.push_back(estimate_rho_green(set.shapes(), options.grid_resolution, options.green));
  if (want_deviation) {
    try {
      const auto records = deviation_sequence(set.shapes(), default_deviation_target(set.shapes().size()),
                                              options.deviation_n_min, options.deviation_n_max);
      b.rho_candidates.push_back(rho_from_deviations(records));
    } catch (const Error& e) {
      if (!want_green) throw;
      b.notes.push_back(std::string("deviation route unavailable: ") + e.what());
    }
  }
  b.rho = *std::min_element(b.rho_candidates.begin(), b.rho_candidates.end(),
                            [](const RhoEstimate& x, const RhoEstimate& y) { return x.width() < y.width(); });

  const GreenModel outer = solve_green(pi, options.green);
  const double slack = 4.0 * outer.residual_norm();
  b.k0_is_disk = std::holds_alternative<Disk>(set.k0());
  b.M = exp_margin(max_green_over_shape(outer, set.k0()), slack);
  b.M0 = exp_margin(max_green_over_disk(outer, Disk{z0, b.r0}), slack);
  b.annulus_geometry = is_unit_disk_at_origin(set.k0()) && std::abs(z0) <= kExactSlack && pi.size() == 1 &&
                       inside_open_annulus(pi[0]);
  return b;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Nonempty: return "NONEMPTY";
    case Outcome::Empty: return "EMPTY";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::Thm22i: return "Thm2.2(i)";
    case Rule::Prop41: return "Prop4.1";
    case Rule::Prop42: return "Prop4.2";
    case Rule::QuestionGap: return "QuestionGap";
  }
  return "QuestionGap";
}

Verdict classify_sequence(const Bounds& bounds, const SequenceSpec& sequence) {
  Verdict v;
  const double limsup = sequence.limsup();
  const double liminf = sequence.liminf();
  const double ratio = bounds.r0 / bounds.R0;
  const double width = bounds.rho.width();
  const double rho_up = bounds.rho.upper;

  const bool decay = limsup < ratio - kExactSlack;
  const bool blow_up = liminf > bounds.M0.value + bounds.M0.uncertainty;

  // Witness for the nonemptiness rule: the limit point with the largest
  // distance to the ends of (rho_upper, 1/rho_upper).
  bool dense = false;
  double best_left = -std::numeric_limits<double>::infinity();
  double best_right = -std::numeric_limits<double>::infinity();
  double witness = std::numeric_limits<double>::quiet_NaN();
  for (double p : sequence.limit_points) {
    if (!std::isfinite(p)) continue;
    const double left = p - rho_up;
    const double right = 1.0 / rho_up - p;
    if (std::isnan(witness) || std::min(left, right) > std::min(best_left, best_right)) {
      best_left = left;
      best_right = right;
      witness = p;
    }
    if (p == 1.0 || (left > width && right > width)) {
      dense = true;
      best_left = left;
      best_right = right;
      witness = p;
      break;
    }
  }

  if ((decay || blow_up) && dense)
    fail(ErrorCode::ConsistencyAlarm, "an emptiness rule and the nonemptiness rule fired together (limit point " +
                                          format(witness) + ", rho bracket [" + format(bounds.rho.lower) + ", " +
                                          format(bounds.rho.upper) + "])");

  v.margins.emplace_back("r0_over_R0_minus_limsup", Margin{ratio - limsup, kExactSlack});
  v.margins.emplace_back("liminf_minus_M0", Margin{liminf - bounds.M0.value, bounds.M0.uncertainty});
  if (!std::isnan(witness)) {
    v.margins.emplace_back("limit_point_minus_rho_upper", Margin{best_left, width});
    v.margins.emplace_back("inv_rho_upper_minus_limit_point", Margin{best_right, width});
  }

  std::ostringstream text;
  if (decay) {
    v.outcome = Outcome::Empty;
    v.rule = Rule::Prop41;
    text << "limsup " << format(limsup) << " < r0/R0 = " << format(ratio);
  } else if (blow_up) {
    v.outcome = Outcome::Empty;
    v.rule = Rule::Prop42;
    text << "liminf " << format(liminf) << " > M0 = " << format(bounds.M0.value);
  } else if (dense) {
    v.outcome = Outcome::Nonempty;
    v.rule = Rule::Thm22i;
    text << "limit point " << format(witness) << " lies in (" << format(rho_up) << ", " << format(1.0 / rho_up) << ")";
    if (witness == 1.0) text << "; the unweighted case";
  } else {
    v.outcome = Outcome::Unknown;
    v.rule = Rule::QuestionGap;
    text << "no rule applies with the available margins; limit points lie in [r0/R0, rho] or [1/rho, M0] up to "
            "uncertainty";
  }
  if (bounds.annulus_geometry && v.outcome != Outcome::Empty && sequence.limit_points.size() == 1 &&
      sequence.limit_points.front() == 2.0)
    text << ". The introduction asserts emptiness for lambda = 2 on disks inside 1 < |w| < 2, but here r0/R0 = "
         << format(ratio) << " and M0 = " << format(bounds.M0.value)
         << ", so neither emptiness proposition applies";
  v.narrative = text.str();
  return v;
}

ChainReport verify_chain(const Bounds& bounds) {
  require(bounds.rho.width() < 0.05, ErrorCode::PreconditionViolated,
          "rho bracket width " + format(bounds.rho.width()) + " is not below 0.05");
  ChainReport r;
  r.inv_R0 = 1.0 / bounds.R0;
  r.rho_lower = bounds.rho.lower;
  r.rho_upper = bounds.rho.upper;
  r.inv_rho_lower = 1.0 / bounds.rho.lower;
  r.M = bounds.M;
  r.left = r.inv_R0 < r.rho_lower;
  r.middle = r.rho_upper < 1.0;
  r.right = r.inv_rho_lower < r.M.value + r.M.uncertainty;
  r.pass = r.left && r.middle && r.right;
  return r;
}

}  // namespace unitay
