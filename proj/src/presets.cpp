#include "unitay/presets.hpp"

#include <cmath>
#include <numbers>

#include "unitay/error.hpp"

namespace unitay {

namespace {

Polygon hexagon() { return Polygon{{{-5, 1.5}, {-5.75, 2.25}, {-8, 0}, {-5.75, -2.25}, {-5, -1.5}, {-6.5, 0}}}; }

Polygon square() { return Polygon{{{9.5, 0}, {8.75, 0.75}, {8, 0}, {8.75, -0.75}}}; }

// (1 + 1/h)(2 + 1/h)^(m0-1) decreases in h toward 2^(m0-1); find where it
// drops below 2^(m0+1).
double product_threshold(int m0) {
  auto excess = [m0](double h) {
    return std::log1p(1.0 / h) + (m0 - 1) * std::log(2.0 + 1.0 / h) - (m0 + 1) * std::log(2.0);
  };
  double lo = 1e-6;
  double hi = 1.0;
  while (excess(hi) >= 0.0) hi *= 2.0;
  if (excess(lo) < 0.0) return lo;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Derived: return "derived";
    case Provenance::Trivial: return "trivial";
  }
  return "derived";
}

double ex31_rho_bound(double theta0) {
  const double half = theta0 / 2.0;
  return std::sqrt((1.0 + theta0) / (half * half - 1.0));
}

ScenarioPreset preset_ex31(double theta0) {
  require(std::isfinite(theta0) && theta0 > 4.0, ErrorCode::BadTheta, "theta0 must exceed 4");
  ScenarioPreset p;
  p.name = "ex31";
  p.geometry.components = {Disk{{0.0, 0.0}, 1.0}, Disk{{theta0, 0.0}, 1.0}};
  p.z0 = {0.0, 0.0};
  p.parameters = {{"theta0", theta0}};
  const double bound = ex31_rho_bound(theta0);
  p.facts.push_back({"rho_L", "<=", bound, 0.0, Provenance::Paper});
  p.facts.push_back({"r0", "=", 1.0, 0.0, Provenance::Trivial});
  p.facts.push_back({"R0", "=", theta0 - 1.0, 0.0, Provenance::Trivial});
  p.facts.push_back({"M", "=", theta0 + 1.0, 0.0, Provenance::Trivial});
  p.facts.push_back({"M0", "=", theta0 + 1.0, 0.0, Provenance::Trivial});
  if (bound < 0.5) p.facts.push_back({"verdict_lambda_2_nonempty", "verdict", 2.0, 0.0, Provenance::Paper});
  return p;
}

Ex32Constants ex32_constants(double beta0, int m0, double h_search_max) {
  require(m0 >= 7, ErrorCode::PreconditionViolated, "m0 must be at least 7");
  require(beta0 > 0.0 && beta0 < 1.0, ErrorCode::PreconditionViolated, "beta0 must lie in (0, 1)");
  const double s = std::sin(std::numbers::pi / m0);
  Ex32Constants c;
  c.ell0 = 0.5 * s * (1.0 - 0.5 * s) * std::pow(1.5 * s, m0 - 1);
  c.ell0_used = std::min(c.ell0, std::ldexp(1.0, -(m0 + 1)));
  // 2 / (ell h)^(1/(m0+1)) < beta0  <=>  h > (2 / beta0)^(m0+1) / ell.
  const double from_bound = std::pow(2.0 / beta0, m0 + 1) / c.ell0_used;
  const double threshold = std::max({2.0 / s, product_threshold(m0), from_bound});
  c.h0 = threshold * (1.0 + 1e-12);
  require(c.h0 <= h_search_max, ErrorCode::SearchExhausted,
          "no admissible h0 below " + std::to_string(h_search_max));
  return c;
}

ScenarioPreset preset_ex32(double beta0, int m0, double h_search_max) {
  const Ex32Constants c = ex32_constants(beta0, m0, h_search_max);
  ScenarioPreset p;
  p.name = "ex32";
  p.geometry.components.push_back(Disk{{0.0, 0.0}, 1.0});
  for (int j = 0; j < m0; ++j)
    p.geometry.components.push_back(Disk{std::polar(c.h0, 2.0 * std::numbers::pi * j / m0), 1.0});
  p.z0 = {0.0, 0.0};
  p.parameters = {{"beta0", beta0}, {"m0", m0}, {"ell0", c.ell0}, {"ell0_used", c.ell0_used}, {"h0", c.h0}};
  p.facts.push_back({"rho_L", "<", beta0, 0.0, Provenance::Paper});
  if (c.ell0_used != c.ell0)
    p.notes.push_back("ell0 exceeds 2^-(m0+1), so (h0/2)^(m0+1) > ell0 h0^(m0+1) fails; using ell0' = 2^-(m0+1)");
  return p;
}

ScenarioPreset preset_ex33() {
  ScenarioPreset p;
  p.name = "ex33";
  p.geometry.components = {hexagon(), square()};
  p.z0 = {-7.0, 0.0};
  p.facts.push_back({"rho_L", "approx", 0.529966, 0.01, Provenance::Paper});
  p.facts.push_back({"verdict_lambda_1_nonempty", "verdict", 1.0, 0.0, Provenance::Paper});
  return p;
}

ScenarioPreset preset_ex33_unit_disk() {
  ScenarioPreset p;
  p.name = "ex33-unit-disk";
  p.geometry.components = {Disk{{0.0, 0.0}, 1.0}, hexagon()};
  p.z0 = {0.0, 0.0};
  p.facts.push_back({"R0", "=", std::sqrt(27.25), 0.0, Provenance::Trivial});
  return p;
}

}  // namespace unitay
