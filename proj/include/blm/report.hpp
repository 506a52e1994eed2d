#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace blm {

// Finite witness set for grid-based checks. Both axes strictly increasing,
// all points inside the open support.
struct Grid {
  std::vector<double> xs;
  std::vector<double> ys;
};

// Result of a grid-based diagnostic. worst_value is the minimum margin seen
// over every tested configuration (normalized where the check defines a
// scale); the check fails iff worst_value < -tol.
struct GridReport {
  std::string check;
  bool passed = true;
  double worst_value = 0.0;
  std::vector<double> witness;  // coordinates of the worst configuration
  std::size_t configurations_tested = 0;
};

// Default evaluation grid: n geometric points per axis over
// [0.05/theta, 8/theta], spanning the bulk of the mass without underflow.
Grid default_grid(double theta, int n = 20);

// One-axis variant of the same layout.
std::vector<double> default_axis(double theta, int n = 20);

}  // namespace blm
