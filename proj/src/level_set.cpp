// Saddle-level estimate of the convergence factor: the largest level s at
// which the sublevel set {g < s} still keeps every component of L in its own
// connected region.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "unitay/error.hpp"
#include "unitay/potential.hpp"

namespace unitay {

namespace {

class Raster {
 public:
  Raster(const GreenModel& model, std::size_t resolution) : n_(resolution) {
    const ShapeUnion& set = model.source();
    const BoundingBox raw = set.bounding_box();
    const double margin = 0.1 * std::max(raw.width(), raw.height());
    box_ = raw.expanded(margin);
    hx_ = box_.width() / static_cast<double>(n_);
    hy_ = box_.height() / static_cast<double>(n_);
    values_.assign(n_ * n_, 0.0);
    owner_.assign(n_ * n_, -1);
    for (std::size_t iy = 0; iy < n_; ++iy) {
      for (std::size_t ix = 0; ix < n_; ++ix) {
        const Point z = center(ix, iy);
        const int c = set.component_of(z);
        const std::size_t k = index(ix, iy);
        owner_[k] = c;
        values_[k] = c >= 0 ? 0.0 : model.value(z);
      }
    }
    // Small components may fall between pixel centres; their anchor pixel
    // stands in for them.
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Point a = interior_anchor(set[i]).point;
      const std::size_t k = locate(a);
      owner_[k] = static_cast<int>(i);
      values_[k] = 0.0;
    }
  }

  std::size_t size() const { return n_; }
  std::size_t cells() const { return n_ * n_; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * n_ + ix; }
  Point center(std::size_t ix, std::size_t iy) const {
    return {box_.min_x + (static_cast<double>(ix) + 0.5) * hx_, box_.min_y + (static_cast<double>(iy) + 0.5) * hy_};
  }
  Point center(std::size_t k) const { return center(k % n_, k / n_); }
  std::size_t locate(Point z) const {
    const auto clampi = [&](double t) {
      return static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(n_ - 1)));
    };
    return index(clampi((z.real() - box_.min_x) / hx_), clampi((z.imag() - box_.min_y) / hy_));
  }
  double value(std::size_t k) const { return values_[k]; }
  int owner(std::size_t k) const { return owner_[k]; }
  double pixel() const { return std::max(hx_, hy_); }
  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

  template <class F>
  void for_neighbours(std::size_t k, F&& f) const {
    const std::size_t ix = k % n_;
    const std::size_t iy = k / n_;
    if (ix > 0) f(k - 1);
    if (ix + 1 < n_) f(k + 1);
    if (iy > 0) f(k - n_);
    if (iy + 1 < n_) f(k + n_);
  }

 private:
  std::size_t n_;
  BoundingBox box_;
  double hx_ = 0.0;
  double hy_ = 0.0;
  std::vector<double> values_;
  std::vector<int> owner_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// 4-connected flood fill of {g < level} plus all pixels owned by L.
LevelProbe probe_level(const Raster& r, std::size_t components, double level) {
  std::vector<int> label(r.cells(), -1);
  int next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < r.cells(); ++start) {
    if (label[start] >= 0) continue;
    if (r.owner(start) < 0 && !(r.value(start) < level)) continue;
    label[start] = next;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      r.for_neighbours(k, [&](std::size_t nb) {
        if (label[nb] >= 0) return;
        if (r.owner(nb) < 0 && !(r.value(nb) < level)) return;
        label[nb] = next;
        queue.push_back(nb);
      });
    }
    ++next;
  }
  // Pixels of one component always belong together.
  DisjointSets regions(static_cast<std::size_t>(next));
  std::vector<int> first(components, -1);
  for (std::size_t k = 0; k < r.cells(); ++k) {
    const int c = r.owner(k);
    if (c < 0) continue;
    if (first[c] < 0)
      first[c] = label[k];
    else
      regions.unite(static_cast<std::size_t>(first[c]), static_cast<std::size_t>(label[k]));
  }
  LevelProbe probe;
  probe.level = level;
  probe.merged.assign(components, std::vector<bool>(components, false));
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < components; ++i) {
    const std::size_t ri = regions.find(static_cast<std::size_t>(first[i]));
    if (std::find(roots.begin(), roots.end(), ri) == roots.end()) roots.push_back(ri);
    for (std::size_t j = i + 1; j < components; ++j)
      probe.merged[i][j] = ri == regions.find(static_cast<std::size_t>(first[j]));
  }
  probe.component_count = static_cast<int>(roots.size());
  return probe;
}

struct Bridge {
  std::size_t pixel = 0;
  double level = 0.0;
};

// Adds pixels in increasing order of g and reports where two components of L
// first join.
Bridge first_bridge(const Raster& r, std::size_t components) {
  std::vector<std::size_t> order(r.cells());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.value(a) < r.value(b); });
  DisjointSets sets(r.cells() + components);
  std::vector<bool> active(r.cells(), false);
  // Extra nodes r.cells()+i stand for component i; tagged roots track ownership.
  std::vector<int> tag(r.cells() + components, -1);
  auto join = [&](std::size_t a, std::size_t b) -> bool {
    const std::size_t ra = sets.find(a);
    const std::size_t rb = sets.find(b);
    if (ra == rb) return false;
    const int ta = tag[ra];
    const int tb = tag[rb];
    sets.unite(ra, rb);
    const std::size_t root = sets.find(ra);
    tag[root] = ta >= 0 ? ta : tb;
    return ta >= 0 && tb >= 0 && ta != tb;
  };
  for (std::size_t i = 0; i < components; ++i) tag[r.cells() + i] = static_cast<int>(i);
  for (std::size_t k : order) {
    active[k] = true;
    bool bridged = false;
    if (r.owner(k) >= 0) bridged |= join(k, r.cells() + static_cast<std::size_t>(r.owner(k)));
    r.for_neighbours(k, [&](std::size_t nb) {
      if (active[nb]) bridged |= join(k, nb);
    });
    if (bridged) return {k, r.value(k)};
  }
  fail(ErrorCode::ResolutionTooCoarse, "components never merged on the raster");
}

}  // namespace

std::string to_string(RhoMethod method) {
  return method == RhoMethod::GreenSaddle ? "green-saddle" : "deviation-fit";
}

RhoEstimate estimate_rho_green(const GreenModel& model, std::size_t grid_resolution, double level_tolerance) {
  const ShapeUnion& set = model.source();
  require(set.size() >= 2, ErrorCode::PreconditionViolated, "the saddle route needs at least two components");
  require(grid_resolution >= 128, ErrorCode::PreconditionViolated, "grid resolution must be at least 128");
  const std::size_t m = set.size();
  const Raster raster(model, grid_resolution);

  LevelAnalysis scan;
  double lo = 1e-3 * level_tolerance;
  double hi = raster.max_value() * (1.0 + 1e-12) + level_tolerance;
  const LevelProbe bottom = probe_level(raster, m, lo);
  if (bottom.component_count != static_cast<int>(m))
    fail(ErrorCode::ResolutionTooCoarse, "components already touch on the raster at the lowest level");
  scan.probes.push_back(bottom);
  const LevelProbe top = probe_level(raster, m, hi);
  require(top.component_count < static_cast<int>(m), ErrorCode::ResolutionTooCoarse,
          "components never merge inside the raster");
  scan.probes.push_back(top);
  while (hi - lo >= level_tolerance) {
    const double mid = 0.5 * (lo + hi);
    LevelProbe p = probe_level(raster, m, mid);
    if (p.component_count == static_cast<int>(m))
      lo = mid;
    else
      hi = mid;
    scan.probes.push_back(std::move(p));
  }
  std::sort(scan.probes.begin(), scan.probes.end(),
            [](const LevelProbe& a, const LevelProbe& b) { return a.level < b.level; });

  // Newton on the complex derivative from the pixel where regions first join.
  const Bridge bridge = first_bridge(raster, m);
  Point z = raster.center(bridge.pixel);
  const Point start = z;
  bool converged = false;
  int iterations = 0;
  for (; iterations < 60; ++iterations) {
    const Complex d1 = model.derivative(z);
    const Complex d2 = model.second_derivative(z);
    if (std::abs(d2) == 0.0) break;
    const Complex step = d1 / d2;
    z -= step;
    if (std::abs(step) <= 1e-12 * set.diameter()) {
      converged = true;
      break;
    }
  }
  const double pixel = raster.pixel();
  const bool usable = converged && std::abs(z - start) <= 3.0 * pixel && !set.contains(z);

  RhoEstimate est;
  est.method = RhoMethod::GreenSaddle;
  // The merge level moves by at most the sup-norm error of the model, which
  // the boundary residual bounds through the maximum principle. The factor
  // covers the gaps between residual test points.
  const double res = model.residual_norm();
  const double slack = std::max(4.0 * res, 1e-12);
  double level = 0.5 * (lo + hi);
  double s_lo = lo;
  double s_hi = hi;
  if (usable) {
    level = model.value(z);
    s_lo = level - slack;
    s_hi = level + slack;
  } else {
    est.notes.push_back("saddle polish failed; value taken from the bisection bracket");
    s_lo -= slack;
    s_hi += slack;
  }
  s_lo = std::max(0.0, s_lo);
  est.value = std::exp(-level);
  est.lower = std::exp(-s_hi);
  est.upper = std::exp(-s_lo);
  est.add_metric("grid_resolution", static_cast<double>(grid_resolution));
  est.add_metric("pixel_size", pixel);
  est.add_metric("bisection_level_low", lo);
  est.add_metric("bisection_level_high", hi);
  est.add_metric("bridge_level", bridge.level);
  est.add_metric("saddle_re", usable ? z.real() : raster.center(bridge.pixel).real());
  est.add_metric("saddle_im", usable ? z.imag() : raster.center(bridge.pixel).imag());
  est.add_metric("saddle_level", level);
  est.add_metric("newton_iterations", iterations);
  est.add_metric("green_residual", res);
  est.add_metric("capacity", capacity(model));
  est.levels = std::move(scan);
  return est;
}

RhoEstimate estimate_rho_green(const ShapeUnion& set, std::size_t grid_resolution, const GreenOptions& options) {
  return estimate_rho_green(solve_green(set, options), grid_resolution);
}

}  // namespace unitay
