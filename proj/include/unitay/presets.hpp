#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unitay/geometry.hpp"

namespace unitay {

enum class Provenance { Paper, Derived, Trivial };

std::string to_string(Provenance p);

/// A statement the scenario is expected to satisfy, such as "rho_L <= 0.4873".
struct ExpectedFact {
  std::string quantity;
  std::string relation;  // one of "<", "<=", "=", "approx", "verdict"
  double value = 0.0;
  double tolerance = 0.0;  // for "approx"
  Provenance provenance = Provenance::Derived;
};

struct ScenarioPreset {
  std::string name;
  CompactSetL geometry;
  Point z0{};
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<ExpectedFact> facts;
  std::vector<std::string> notes;
};

/// Upper bound sqrt((1 + theta) / ((theta / 2)^2 - 1)) for two unit disks at distance theta.
double ex31_rho_bound(double theta0);

/// Two unit disks centered at 0 and theta0. Throws BadTheta unless theta0 > 4.
ScenarioPreset preset_ex31(double theta0 = 18.0);

struct Ex32Constants {
  double ell0 = 0.0;
  double ell0_used = 0.0;  // min(ell0, 2^-(m0+1))
  double h0 = 0.0;
};

/// Smallest admissible ring radius for m0 satellite disks. Throws
/// SearchExhausted when it exceeds h_search_max.
Ex32Constants ex32_constants(double beta0, int m0, double h_search_max);

/// The unit disk plus m0 unit disks on the circle of radius h0.
ScenarioPreset preset_ex32(double beta0 = 0.5, int m0 = 9, double h_search_max = 1e12);

/// Hexagon (K0) and square.
ScenarioPreset preset_ex33();

/// The unit disk about the origin as K0 with the hexagon of preset_ex33.
ScenarioPreset preset_ex33_unit_disk();

}  // namespace unitay
