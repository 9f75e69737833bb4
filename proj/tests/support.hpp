#pragma once

#include <doctest.h>

#include <random>
#include <vector>

#include "unitay/error.hpp"
#include "unitay/geometry.hpp"
#include "unitay/minimax.hpp"

namespace testing {

using unitay::Disk;
using unitay::Point;
using unitay::Polygon;
using unitay::ShapeUnion;

inline Polygon square_ex33() { return Polygon{{{9.5, 0}, {8.75, 0.75}, {8, 0}, {8.75, -0.75}}}; }
inline Polygon hexagon_ex33() {
  return Polygon{{{-5, 1.5}, {-5.75, 2.25}, {-8, 0}, {-5.75, -2.25}, {-5, -1.5}, {-6.5, 0}}};
}
inline ShapeUnion two_disks(double theta = 18.0) { return ShapeUnion({Disk{{0, 0}, 1}, Disk{{theta, 0}, 1}}); }
inline ShapeUnion hexagon_and_square() { return ShapeUnion({hexagon_ex33(), square_ex33()}); }

template <class F>
unitay::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const unitay::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return unitay::ErrorCode::InvalidInput;
}

/// Grid points and target values exactly as best_polynomial lays them out.
struct TargetGrid {
  std::vector<Point> points;
  std::vector<unitay::Complex> values;
};

inline TargetGrid target_grid(const ShapeUnion& set, const unitay::PiecewiseTarget& target, std::size_t density) {
  TargetGrid g;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (Point z : unitay::component_grid(set[i], density)) {
      g.points.push_back(z);
      g.values.push_back(target.pieces[i](z));
    }
  }
  return g;
}

/// Random points outside the set within a box twice its diameter.
inline std::vector<Point> exterior_points(const ShapeUnion& set, std::size_t count, double clearance,
                                          std::mt19937_64& rng) {
  const unitay::BoundingBox box = set.bounding_box().expanded(0.5 * set.diameter());
  std::uniform_real_distribution<double> ux(box.min_x, box.max_x);
  std::uniform_real_distribution<double> uy(box.min_y, box.max_y);
  std::vector<Point> out;
  while (out.size() < count) {
    const Point z{ux(rng), uy(rng)};
    if (set.distance(z) > clearance) out.push_back(z);
  }
  return out;
}

}  // namespace testing
