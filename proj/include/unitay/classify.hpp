#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitay/geometry.hpp"
#include "unitay/minimax.hpp"
#include "unitay/potential.hpp"
#include "unitay/rho.hpp"

namespace unitay {

/// Growth descriptor of a weight sequence: the limit points of |beta_n|^{1/n}.
struct SequenceSpec {
  std::vector<double> limit_points;  // may contain +infinity
  std::optional<double> generator;   // beta_n = lambda^n

  static SequenceSpec from_lambda(double lambda);
  static SequenceSpec from_limit_points(std::vector<double> points);

  double limsup() const;
  double liminf() const;
};

enum class RhoMethodChoice { Green, Deviation, Both };

/// Target used by the approximation route: the constant i on component i.
PiecewiseTarget default_deviation_target(std::size_t components);

struct BoundsOptions {
  GreenOptions green;
  std::size_t grid_resolution = 256;
  RhoMethodChoice rho_method = RhoMethodChoice::Both;
  std::size_t deviation_n_min = 4;
  std::size_t deviation_n_max = 40;
};

/// A value with its absolute uncertainty.
struct Margin {
  double value = 0.0;
  double uncertainty = 0.0;
};

struct Bounds {
  Point z0;
  double r0 = 0.0;  // dist(z0, complement of K0)
  double R0 = 0.0;  // dist(z0, Pi)
  RhoEstimate rho;  // the tightest available bracket
  std::vector<RhoEstimate> rho_candidates;
  Margin M;   // exp(max over K0 of the Green function of the complement of Pi)
  Margin M0;  // same maximum over the closed disk D(z0, r0)
  bool k0_is_disk = false;
  /// Geometry of the introduction's annulus claim (K0 the unit disk about 0,
  /// Pi a single disk inside 1 < |w| < 2).
  bool annulus_geometry = false;
  std::vector<std::string> notes;
};

Bounds compute_bounds(const ValidatedSet& set, Point z0, const BoundsOptions& options = {});

enum class Outcome { Nonempty, Empty, Unknown };
enum class Rule { Thm22i, Prop41, Prop42, QuestionGap };

std::string to_string(Outcome outcome);
std::string to_string(Rule rule);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  Rule rule = Rule::QuestionGap;
  std::vector<std::pair<std::string, Margin>> margins;
  std::string narrative;
};

/// Decision order: Prop 4.1, Prop 4.2, Theorem 2.2(i), otherwise UNKNOWN.
/// Throws ConsistencyAlarm if an emptiness rule and the nonemptiness rule both fire.
Verdict classify_sequence(const Bounds& bounds, const SequenceSpec& sequence);

struct ChainReport {
  double inv_R0 = 0.0;
  double rho_lower = 0.0;
  double rho_upper = 0.0;
  double inv_rho_lower = 0.0;
  Margin M;
  bool left = false;    // 1/R0 < rho_lower
  bool middle = false;  // rho_upper < 1
  bool right = false;   // 1/rho_lower < M + uncertainty
  bool pass = false;
};

/// Requires a rho bracket narrower than 0.05 (PreconditionViolated otherwise).
ChainReport verify_chain(const Bounds& bounds);

}  // namespace unitay
