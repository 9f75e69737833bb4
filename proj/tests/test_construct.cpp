#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "unitay/classify.hpp"
#include "unitay/construct.hpp"
#include "unitay/presets.hpp"

using namespace unitay;
using testing::code_of;

namespace {

const ValidatedSet& ex31_set() {
  static const ValidatedSet s = validate_set(preset_ex31(18.0).geometry);
  return s;
}

const RhoEstimate& ex31_rho() {
  static const RhoEstimate r = estimate_rho_green(ShapeUnion(ex31_set().shapes().components()));
  return r;
}

UniversalStep run(double lambda) {
  return construct_step(ex31_set(), {0, 0}, PolynomialC::constant(0.0), PolynomialC::constant(1.0), lambda, ex31_rho());
}

void check_step(const UniversalStep& step, const ConstructOptions& opts = {}) {
  CHECK(step.n0 >= 1);
  CHECK(step.n0 <= 200);
  CHECK(step.err_k0 < opts.eps0);
  CHECK(step.err_pi < 1.0 / opts.s0);
  CHECK(step.random_err_k0 < opts.eps0);
  CHECK(step.random_err_pi < 1.0 / opts.s0);
  CHECK(step.random_points_per_component == 1000);
  CHECK(step.s.degree() <= step.n0);
  CHECK(step.s.center() == Point{0, 0});
  const PolynomialC again = partial_sum(step.s, step.n0, {0, 0});
  CHECK(again.coefficients() == step.s.coefficients());
  CHECK(step.envelope.c0 < 1.0);
  CHECK(step.envelope.c0 > 0.0);
  for (const StepRecord& r : step.trajectory)
    CHECK(r.scaled_deviation <=
          step.envelope.constant * std::pow(step.envelope.c0, static_cast<double>(r.n)) * (1.0 + 1e-9));
  bool accepted_seen = false;
  for (const StepRecord& r : step.trajectory) {
    if (r.n < step.n0) CHECK_FALSE(r.accepted);
    if (r.n == step.n0) accepted_seen = r.accepted;
  }
  CHECK(accepted_seen);
}

}  // namespace

TEST_CASE("universality step for lambda = 2") {
  const UniversalStep step = run(2.0);
  check_step(step);
  CHECK(std::abs(step.beta_n0 - std::pow(Complex{2.0, 0.0}, static_cast<double>(step.n0))) < 1e-12);
  MESSAGE("lambda = 2: N0 = " << step.n0 << ", c0 = " << step.envelope.c0);
}

TEST_CASE("universality step for lambda = 1") {
  const UniversalStep one = run(1.0);
  check_step(one);
  const UniversalStep two = run(2.0);
  MESSAGE("N0(lambda = 1) = " << one.n0 << ", N0(lambda = 2) = " << two.n0);
  CHECK(one.n0 <= two.n0);
}

TEST_CASE("construction is refused outside the interval") {
  CHECK(code_of([] { run(10.0); }) == ErrorCode::RefusedOutsideInterval);
  CHECK(code_of([] { run(0.3); }) == ErrorCode::RefusedOutsideInterval);
  CHECK(code_of([] {
          construct_step(ex31_set(), {0, 0}, PolynomialC::constant(0.0), PolynomialC::constant(0.0), 2.0, ex31_rho());
        }) == ErrorCode::PreconditionViolated);
}

TEST_CASE("impossible accuracy is reported with the best margins") {
  ConstructOptions opts;
  opts.eps0 = 1e-15;
  opts.n_max = 4;
  try {
    construct_step(ex31_set(), {0, 0}, PolynomialC::constant(0.0), PolynomialC::constant(1.0), 2.0, ex31_rho(), opts);
    FAIL("expected NotFoundWithinNmax");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFoundWithinNmax);
    CHECK(std::string(e.what()).find("best") != std::string::npos);
  }
}

TEST_CASE("rate envelope lies above every point") {
  std::vector<std::pair<std::size_t, double>> pts;
  for (std::size_t n = 1; n <= 15; ++n) pts.emplace_back(n, std::pow(0.6, static_cast<double>(n)) * (n % 3 == 0 ? 2.0 : 1.0));
  const RateEnvelope e = fit_rate_envelope(pts);
  CHECK(e.points == 15);
  CHECK(e.c0 == doctest::Approx(0.6).epsilon(0.05));
  for (const auto& [n, v] : pts) CHECK(v <= e.constant * std::pow(e.c0, static_cast<double>(n)) * (1.0 + 1e-12));
}

TEST_CASE("decay and blow-up traces of the geometric series") {
  const std::vector<Complex> ones{1.0};
  const auto decay = weighted_sum_trace(ones, true, {1.0, 20.0}, {18, 0}, {0, 0}, 1, 500);
  REQUIRE(decay.size() == 500);
  CHECK(decay.front().n == 1);
  CHECK(decay.front().modulus == 0.95);
  CHECK(decay.back().modulus < 1e-6);
  for (std::size_t k = 1; k < decay.size(); ++k) CHECK(decay[k].modulus < decay[k - 1].modulus);

  const auto growth = weighted_sum_trace(ones, true, {20.0, 1.0}, {18, 0}, {0, 0}, 1, 500);
  CHECK(growth[99].n == 100);
  CHECK(growth[99].modulus > 1e6);
  for (std::size_t k = 1; k < growth.size(); ++k) CHECK(growth[k].log10_modulus > growth[k - 1].log10_modulus);
  CHECK(std::isinf(growth.back().modulus));
  CHECK(std::isfinite(growth.back().log10_modulus));
}

TEST_CASE("trace of a finite polynomial") {
  // 1 + 2z about z0 = 1 has coefficients (3, 2): S_0 = 3, S_1(w) = 3 + 2 (w - 1).
  const auto t = weighted_sum_trace({3.0, 2.0}, false, {2.0, 1.0}, {2, 0}, {1, 0}, 0, 3);
  REQUIRE(t.size() == 4);
  CHECK(t[0].modulus == 3.0);
  CHECK(t[1].modulus == 10.0);
  CHECK(t[2].modulus == 20.0);
  CHECK(t[3].modulus == 40.0);
  CHECK(code_of([] { weighted_sum_trace({1.0}, true, {1.0, 2.0}, {0, 0}, {0, 0}, 0, 501); }) ==
        ErrorCode::PreconditionViolated);
  CHECK(code_of([] { weighted_sum_trace({NAN}, true, {1.0, 2.0}, {0, 0}, {0, 0}, 0, 5); }) == ErrorCode::InvalidInput);
}
