#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "unitay/contour.hpp"
#include "unitay/error.hpp"

using namespace unitay;

namespace {

Polygon square_ex33() { return Polygon{{{9.5, 0}, {8.75, 0.75}, {8, 0}, {8.75, -0.75}}}; }
Polygon hexagon_ex33() { return Polygon{{{-5, 1.5}, {-5.75, 2.25}, {-8, 0}, {-5.75, -2.25}, {-5, -1.5}, {-6.5, 0}}}; }

// Random points inside a shape by rejection from its bounding box.
std::vector<Point> interior_points(const Shape& s, std::size_t count, std::mt19937_64& rng) {
  const BoundingBox box = bounding_box(s);
  std::uniform_real_distribution<double> ux(box.min_x, box.max_x);
  std::uniform_real_distribution<double> uy(box.min_y, box.max_y);
  std::vector<Point> out;
  while (out.size() < count) {
    const Point z{ux(rng), uy(rng)};
    if (contains(s, z)) out.push_back(z);
  }
  return out;
}

}  // namespace

TEST_CASE("winding numbers of circles") {
  const JordanContour c2(Circle{{0, 0}, 2});
  CHECK(winding_number(c2, {0, 0}) == 1);
  CHECK(winding_number(c2, {5, 0}) == 0);
  CHECK(winding_number(JordanContour(Circle{{18, 0}, 8}), {0, 0}) == 0);
  CHECK_THROWS_AS(winding_number(c2, {2, 0}), Error);
  try {
    winding_number(c2, {0, 2});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOnContour);
  }
}

TEST_CASE("winding numbers of polylines") {
  const JordanContour square(ClosedPolyline{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
  CHECK(winding_number(square, {0.5, 0.5}) == 1);
  CHECK(winding_number(square, {1.5, 0.5}) == 0);
  const JordanContour clockwise(ClosedPolyline{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}});
  CHECK(winding_number(clockwise, {0.5, 0.5}) == -1);
}

TEST_CASE("the two circles of radius 8 form an admissible family") {
  const ShapeUnion set({Disk{{0, 0}, 1}, Disk{{18, 0}, 1}});
  const ContourFamily family{{JordanContour(Circle{{0, 0}, 8}), JordanContour(Circle{{18, 0}, 8})}};
  CHECK_NOTHROW(check_contour_family(set, family));

  const ContourFamily built = build_contour_family(set, 7.0 / 8.0);
  REQUIRE(built.contours.size() == 2);
  const auto* c0 = std::get_if<Circle>(&built.contours[0].curve());
  REQUIRE(c0 != nullptr);
  CHECK(c0->radius == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("too much inflation collides") {
  const ShapeUnion set({Disk{{0, 0}, 1}, Disk{{4, 0}, 1}});
  try {
    build_contour_family(set, 10.0);
    FAIL("expected ContourCollision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ContourCollision);
  }
  // A circle enclosing both components is not admissible.
  const ContourFamily bad{{JordanContour(Circle{{0, 0}, 6}), JordanContour(Circle{{4, 0}, 1.5})}};
  CHECK_THROWS_AS(check_contour_family(set, bad), Error);
}

TEST_CASE("families enclose exactly their own component") {
  std::mt19937_64 rng(3);
  const std::vector<ShapeUnion> sets{ShapeUnion({Disk{{0, 0}, 1}, Disk{{18, 0}, 1}}),
                                     ShapeUnion({hexagon_ex33(), square_ex33()}),
                                     ShapeUnion({Disk{{0, 0}, 1}, hexagon_ex33()})};
  for (const ShapeUnion& set : sets) {
    for (double inflation : {1e-6, 0.1, 0.5, 0.9}) {
      const ContourFamily family = build_contour_family(set, inflation);
      REQUIRE(family.contours.size() == set.size());
      for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = 0; j < set.size(); ++j) {
          for (Point x : interior_points(set[j], 64, rng))
            CHECK(winding_number(family.contours[i], x) == (i == j ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("polyline contours are sampled densely") {
  const ShapeUnion set({hexagon_ex33(), square_ex33()});
  const ContourFamily family = build_contour_family(set, 0.5);
  for (const JordanContour& c : family.contours) {
    CHECK(c.sampling().size() >= 512);
    for (Point p : c.sampling()) CHECK(c.distance(p) <= 1e-9 * c.scale());
  }
}
