#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace unitay {

inline constexpr const char* kVersion = "1.0.0";

/// Every default tolerance and size used by the command-line front end.
/// Each field can be overridden by the flag named next to it.
struct CliDefaults {
  std::size_t charges_per_component = 128;  // --charges
  std::size_t colloc_factor = 2;            // --colloc-factor
  double residual_limit = 1e-4;             // --residual-limit
  int max_refinements = 2;                  // --refinements
  std::size_t grid_resolution = 256;        // --grid
  double level_tolerance = 1e-4;            // fixed bisection tolerance of the saddle route
  std::size_t deviation_n_min = 4;          // --nmin
  std::size_t deviation_n_max = 40;         // --nmax (rho, classify, example)
  double minimax_relative_gap = 1e-3;       // fixed Lawson stopping gap
  int minimax_max_iterations = 200;         // fixed Lawson iteration cap
  double eps0 = 0.1;                        // --eps0
  double s0 = 10.0;                         // --s0
  std::size_t construct_n_max = 200;        // --nmax (construct)
  std::size_t random_points = 1000;         // fixed fresh-validation points per component
  std::size_t csv_resolution = 200;         // --csv-resolution (green)
  double h_search_max = 1e12;               // --h-max (example ex32)
};

/// Runs one command. Structured results go to `out` as JSON, diagnostics and
/// the reproducibility header to `err`. Returns 0, 2 for invalid input or a
/// violated precondition, 3 for a numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unitay
