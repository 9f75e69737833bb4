#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unitay/geometry.hpp"

namespace unitay {

enum class RhoMethod { GreenSaddle, DeviationFit };

std::string to_string(RhoMethod method);

/// One probed level of the sublevel-set connectivity scan.
struct LevelProbe {
  double level = 0.0;
  int component_count = 0;  // connected sublevel regions that contain a component of L
  /// merged[i][j] for i < j: components i and j share a sublevel region.
  std::vector<std::vector<bool>> merged;
};

/// Levels in increasing order; merged flags are monotone in the level.
struct LevelAnalysis {
  std::vector<LevelProbe> probes;
};

struct RhoEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  RhoMethod method = RhoMethod::GreenSaddle;

  /// Named numeric diagnostics in insertion order.
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;
  LevelAnalysis levels;  // filled by the saddle route only

  double width() const { return upper - lower; }
  void add_metric(std::string name, double v) { metrics.emplace_back(std::move(name), v); }
};

}  // namespace unitay
