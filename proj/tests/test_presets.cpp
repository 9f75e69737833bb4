#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "unitay/presets.hpp"

using namespace unitay;
using testing::code_of;

namespace {

const ExpectedFact* find_fact(const ScenarioPreset& p, const std::string& quantity) {
  for (const ExpectedFact& f : p.facts)
    if (f.quantity == quantity) return &f;
  return nullptr;
}

double parameter(const ScenarioPreset& p, const std::string& name) {
  for (const auto& [key, v] : p.parameters)
    if (key == name) return v;
  FAIL("missing parameter " << name);
  return 0.0;
}

// The bound is below 1/2 exactly when theta^2 - 16 theta - 20 > 0.
bool quadratic_condition(int theta) { return theta * theta - 16 * theta - 20 > 0; }

}  // namespace

TEST_CASE("two-disk threshold") {
  int first = 0;
  for (int theta = 5; theta <= 30; ++theta) {
    const bool below = ex31_rho_bound(theta) < 0.5;
    CHECK(below == quadratic_condition(theta));
    if (below && first == 0) first = theta;
  }
  CHECK(first == 18);
  CHECK(ex31_rho_bound(18.0) == doctest::Approx(std::sqrt(19.0 / 80.0)).epsilon(1e-15));
  CHECK(ex31_rho_bound(17.0) >= 0.5);
  CHECK(17 * 17 - 16 * 17 - 20 == -3);
}

TEST_CASE("two-disk preset") {
  const ScenarioPreset p = preset_ex31(18.0);
  CHECK(p.name == "ex31");
  REQUIRE(p.geometry.components.size() == 2);
  CHECK(std::get<Disk>(p.geometry.components[1]).center == Point{18, 0});
  const ExpectedFact* bound = find_fact(p, "rho_L");
  REQUIRE(bound != nullptr);
  CHECK(bound->relation == "<=");
  CHECK(bound->provenance == Provenance::Paper);
  CHECK(find_fact(p, "verdict_lambda_2_nonempty") != nullptr);
  CHECK(find_fact(preset_ex31(17.0), "verdict_lambda_2_nonempty") == nullptr);
  CHECK(code_of([] { preset_ex31(4.0); }) == ErrorCode::BadTheta);
  CHECK(code_of([] { preset_ex31(3.0); }) == ErrorCode::BadTheta);
  CHECK_NOTHROW(preset_ex31(4.5));
}

TEST_CASE("ring of disks constants") {
  const double s9 = std::sin(std::numbers::pi / 9.0);
  const double ell9 = 0.5 * s9 * (1.0 - 0.5 * s9) * std::pow(1.5 * s9, 8.0);
  const Ex32Constants c9 = ex32_constants(0.5, 9, 1e12);
  CHECK(c9.ell0 == doctest::Approx(6.80e-4).epsilon(0.01));
  CHECK(c9.ell0 == doctest::Approx(ell9).epsilon(1e-14));
  CHECK(c9.ell0 < std::pow(2.0, -10.0));
  CHECK(c9.ell0_used == c9.ell0);
  CHECK(std::isfinite(c9.h0));
  CHECK(c9.h0 > 2.0 / s9);
  // Final bound with the ring radius found.
  CHECK(2.0 / std::pow(c9.ell0_used, 1.0 / 10.0) / std::pow(c9.h0, 1.0 / 10.0) < 0.5);
  MESSAGE("m0 = 9: ell0 = " << c9.ell0 << ", h0 = " << c9.h0);

  const Ex32Constants c7 = ex32_constants(0.5, 7, 1e12);
  CHECK(c7.ell0 == doctest::Approx(1.29e-2).epsilon(0.01));
  CHECK(c7.ell0_used == std::pow(2.0, -8.0));
  CHECK(c7.ell0_used != c7.ell0);

  CHECK(code_of([] { ex32_constants(0.5, 6, 1e12); }) == ErrorCode::PreconditionViolated);
  CHECK(code_of([] { ex32_constants(1.0, 9, 1e12); }) == ErrorCode::PreconditionViolated);
  CHECK(code_of([] { ex32_constants(0.0, 9, 1e12); }) == ErrorCode::PreconditionViolated);
  CHECK(code_of([] { ex32_constants(0.5, 9, 1e3); }) == ErrorCode::SearchExhausted);
}

TEST_CASE("ring of disks preset") {
  const ScenarioPreset p = preset_ex32(0.5, 9, 1e12);
  REQUIRE(p.geometry.components.size() == 10);
  const double h0 = parameter(p, "h0");
  for (std::size_t j = 1; j < 10; ++j) {
    const Disk& d = std::get<Disk>(p.geometry.components[j]);
    CHECK(d.radius == 1.0);
    CHECK(std::abs(d.center) == doctest::Approx(h0).epsilon(1e-14));
  }
  CHECK_NOTHROW(validate_set(p.geometry));
  const ExpectedFact* f = find_fact(p, "rho_L");
  REQUIRE(f != nullptr);
  CHECK(f->relation == "<");
  CHECK(f->value == 0.5);
  CHECK(preset_ex32(0.5, 7, 1e12).notes.size() >= 1);
}

TEST_CASE("hexagon and square preset") {
  const ScenarioPreset p = preset_ex33();
  REQUIRE(p.geometry.components.size() == 2);
  const Polygon& hex = std::get<Polygon>(p.geometry.components[0]);
  CHECK(hex.vertices.size() == 6);
  CHECK(polygon_signed_area(hex.vertices) > 0.0);
  CHECK(contains(hex, p.z0));
  const ExpectedFact* f = find_fact(p, "rho_L");
  REQUIRE(f != nullptr);
  CHECK(f->relation == "approx");
  CHECK(f->value == 0.529966);
  CHECK(f->tolerance == 0.01);
  CHECK_NOTHROW(validate_set(p.geometry));

  const ScenarioPreset u = preset_ex33_unit_disk();
  CHECK(u.name == "ex33-unit-disk");
  CHECK(u.z0 == Point{0, 0});
  CHECK_NOTHROW(validate_set(u.geometry));
  CHECK(ShapeUnion({std::get<Polygon>(u.geometry.components[1])}).distance({0, 0}) ==
        doctest::Approx(std::sqrt(27.25)));
}
