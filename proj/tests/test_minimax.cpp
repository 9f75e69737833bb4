#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/lp_minimax.hpp"
#include "support.hpp"
#include "unitay/potential.hpp"

using namespace unitay;
using testing::code_of;

namespace {

const std::vector<DeviationRecord>& ex31_sequence() {
  static const std::vector<DeviationRecord> seq =
      deviation_sequence(testing::two_disks(), PiecewiseTarget::constants({0.0, 1.0}), 1, 40);
  return seq;
}

double grid_error(const testing::TargetGrid& g, const std::function<Complex(Point)>& p) {
  double e = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) e = std::max(e, std::abs(p(g.points[i]) - g.values[i]));
  return e;
}

}  // namespace

TEST_CASE("best constant between 0 and 1 is 1/2") {
  const DeviationRecord r = best_polynomial(testing::two_disks(), PiecewiseTarget::constants({0.0, 1.0}), 0, 64);
  CHECK(r.d_hat == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(r.witness({3, 1}) - Complex{0.5, 0}) < 1e-9);
  CHECK(r.lower_bound <= r.d_hat);
}

TEST_CASE("identical pieces are reproduced exactly") {
  const PolynomialC p = PolynomialC::monomial({1.0, {0.5, -0.25}, 0.125});
  PiecewiseTarget t;
  t.pieces = {p, p};
  CHECK_FALSE(t.has_distinct_pieces());
  for (std::size_t n : {2u, 5u}) {
    const DeviationRecord r = best_polynomial(testing::hexagon_and_square(), t, n, 8 * (n + 1));
    CHECK(r.d_hat <= 1e-10);
    CHECK(std::abs(r.witness({1, 1}) - p({1, 1})) < 1e-8);
  }
  for (const DeviationRecord& r : deviation_sequence(testing::two_disks(), t, 2, 10)) CHECK(r.d_hat <= 1e-10);
}

TEST_CASE("grid density below 8 (n + 1) is rejected") {
  CHECK(code_of([] { best_polynomial(testing::two_disks(), PiecewiseTarget::constants({0.0, 1.0}), 10, 80); }) ==
        ErrorCode::GridTooCoarse);
  CHECK(code_of([] { deviation_sequence(testing::two_disks(), PiecewiseTarget::constants({0.0, 1.0}), 0, 10); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("Lawson agrees with the linear-programming oracle") {
  const ShapeUnion set = testing::two_disks();
  const PiecewiseTarget target = PiecewiseTarget::constants({0.0, 1.0});
  for (std::size_t n = 1; n <= 12; ++n) {
    const std::size_t density = 8 * (n + 1);
    const DeviationRecord r = best_polynomial(set, target, n, density);
    const testing::TargetGrid g = testing::target_grid(set, target, density);
    const oracle::LpResult lp = oracle::lp_minimax(g.points, g.values, n);
    CAPTURE(n);
    CHECK(std::abs(r.d_hat - lp.value) <= 0.02 * lp.value);
    // Nothing beats the true grid minimax, which is at least the LP value.
    CHECK(r.d_hat >= lp.value * (1.0 - 1e-9));
    CHECK(r.lower_bound <= lp.upper * (1.0 + 1e-9));
  }
}

TEST_CASE("deviation sequence invariants") {
  const auto& seq = ex31_sequence();
  REQUIRE(seq.size() == 40);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    CAPTURE(seq[k].n);
    CHECK(seq[k].lower_bound <= seq[k].d_hat);
    // Below 1e-13 both numbers are rounding noise.
    if (seq[k].converged && seq[k].d_hat > 1e-13) CHECK(seq[k].d_hat <= 1.1 * seq[k].lower_bound);
    if (k > 0) CHECK(seq[k].d_hat <= seq[k - 1].d_hat + 1e-12);
  }
}

TEST_CASE("deviation fit on two disks") {
  const RhoEstimate rho = rho_from_deviations(ex31_sequence());
  CHECK(rho.method == RhoMethod::DeviationFit);
  CHECK(rho.value < 0.5);
  CHECK(rho.lower <= rho.value);
  CHECK(rho.value <= rho.upper);
  CHECK(rho.lower > 0.0);
  CHECK(rho.upper < 1.0);
  double r2 = 0.0;
  for (const auto& [name, v] : rho.metrics)
    if (name == "r_squared") r2 = v;
  CHECK(r2 >= 0.98);
}

TEST_CASE("deviation fit on the hexagon and square") {
  const auto seq = deviation_sequence(testing::hexagon_and_square(), PiecewiseTarget::constants({0.0, 1.0}), 4, 40);
  const RhoEstimate rho = rho_from_deviations(seq);
  CHECK(std::abs(rho.value - 0.53) <= 0.03);
}

TEST_CASE("synthetic deviation data") {
  std::vector<std::pair<std::size_t, double>> exact;
  std::vector<std::pair<std::size_t, double>> wobbly;
  for (std::size_t n = 1; n <= 40; ++n) {
    exact.emplace_back(n, 0.5 * std::pow(0.53, static_cast<double>(n)));
    wobbly.emplace_back(n, std::pow(0.53, static_cast<double>(n)) * (1.0 + (n % 2 == 0 ? 0.1 : -0.1)));
  }
  CHECK(std::abs(rho_from_deviations(exact).value - 0.53) <= 1e-6);
  CHECK(std::abs(rho_from_deviations(wobbly).value - 0.53) <= 0.01);

  std::vector<std::pair<std::size_t, double>> flat;
  for (std::size_t n = 1; n <= 20; ++n) flat.emplace_back(n, std::pow(0.99, static_cast<double>(n)));
  CHECK(code_of([&] { rho_from_deviations(flat); }) == ErrorCode::InsufficientDecadeRange);

  std::vector<std::pair<std::size_t, double>> few(exact.begin(), exact.begin() + 5);
  CHECK(code_of([&] { rho_from_deviations(few); }) == ErrorCode::PreconditionViolated);

  std::vector<std::pair<std::size_t, double>> growing;
  for (std::size_t n = 1; n <= 20; ++n) growing.emplace_back(n, std::pow(1.5, static_cast<double>(n)));
  CHECK(code_of([&] { rho_from_deviations(growing); }) == ErrorCode::NonConvergence);
}

TEST_CASE("swapping the component targets gives the same estimate") {
  const ShapeUnion set = testing::two_disks();
  const TargetIndependenceReport report = target_independence_check(
      set, {PiecewiseTarget::constants({0.0, 1.0}), PiecewiseTarget::constants({1.0, 0.0})}, 4, 40);
  REQUIRE(report.estimates.size() == 2);
  CHECK(report.pass);
  // The two problems differ only by p -> 1 - p; rounding in the smallest
  // deviations of the tail moves the fitted slope in the fifth digit.
  CHECK(std::abs(report.estimates[0].value - report.estimates[1].value) < 1e-4);

  PiecewiseTarget same;
  same.pieces = {PolynomialC::constant(1.0), PolynomialC::constant(1.0)};
  CHECK(code_of([&] { target_independence_check(set, {PiecewiseTarget::constants({0.0, 1.0}), same}, 4, 40); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("Bernstein extremal cases on the unit disk") {
  const ShapeUnion disk({Disk{{0, 0}, 1}});
  const GreenModel model = solve_green(disk);
  const BernsteinReport linear = bernstein_check(PolynomialC::monomial({0.0, 1.0}), disk, model, {{3, 0}});
  CHECK(linear.violations == 0);
  CHECK(std::abs(linear.worst_margin) < 1e-6);
  const BernsteinReport square = bernstein_check(PolynomialC::monomial({0.0, 0.0, 1.0}), disk, model, {{3, 0}});
  CHECK(std::abs(square.worst_margin) < 1e-6);
  CHECK(code_of([&] { bernstein_check(PolynomialC::monomial({0.0, 1.0}), disk, model, {{0.5, 0}}); }) ==
        ErrorCode::PointInsideSet);
  // Pairing the set with the Green function of a larger disk must be caught.
  const GreenModel wrong = solve_green(ShapeUnion({Disk{{0, 0}, 2}}));
  CHECK(code_of([&] { bernstein_check(PolynomialC::monomial({0.0, 1.0}), disk, wrong, {{3, 0}}); }) ==
        ErrorCode::ViolationFound);
}

TEST_CASE("random perturbations never beat the witness") {
  const ShapeUnion set = testing::two_disks();
  const PiecewiseTarget target = PiecewiseTarget::constants({0.0, 1.0});
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n01;
  for (std::size_t n : {3u, 8u}) {
    const std::size_t density = 8 * (n + 1);
    const DeviationRecord r = best_polynomial(set, target, n, density);
    const testing::TargetGrid g = testing::target_grid(set, target, density);
    const BasisPolynomial& w = r.stable_witness;
    const double base = grid_error(g, [&](Point z) { return w(z); });
    CHECK(base == doctest::Approx(r.d_hat).epsilon(1e-9));
    const Eigen::MatrixXcd q_values = w.basis->evaluate(g.points, n + 1);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXcd q(static_cast<Eigen::Index>(n + 1));
      for (Eigen::Index k = 0; k < q.size(); ++k) q(k) = {n01(rng), n01(rng)};
      const Eigen::VectorXcd qv = q_values * q;
      const double scale = 0.01 * r.d_hat / qv.cwiseAbs().maxCoeff();
      const Eigen::VectorXcd pv = q_values * (w.coefficients + scale * q);
      double err = 0.0;
      for (std::size_t i = 0; i < g.points.size(); ++i)
        err = std::max(err, std::abs(pv(static_cast<Eigen::Index>(i)) - g.values[i]));
      CHECK(err >= base);
    }
  }
}

TEST_CASE("witnesses satisfy the Bernstein inequality at random exterior points") {
  const ShapeUnion set = testing::two_disks();
  const GreenModel model = solve_green(set);
  std::mt19937_64 rng(23);
  const auto points = testing::exterior_points(set, 50, 1e-3, rng);
  for (std::size_t k = 0; k < ex31_sequence().size(); k += 6) {
    const DeviationRecord& r = ex31_sequence()[k];
    const BasisPolynomial& w = r.stable_witness;
    CHECK_NOTHROW(bernstein_check([&](Point z) { return w(z); }, r.n, set, model, points));
  }
}
