#pragma once

#include <functional>
#include <vector>

#include "ptnoise/models.hpp"
#include "ptnoise/smatrix.hpp"

namespace ptnoise {

/// Real energy root of the closed-system quantization determinant.
struct BoundState {
  double energy = 0.0;
  double residual = 0.0;  // |det Im r'_L| at energy
  double e_lo = 0.0;
  double e_hi = 0.0;
  int iterations = 0;
};

// det Im[r' - t (I + r)^{-1} t'] of a single region closed off by a perfect
// mirror on its left. Throws SingularMatrix if I + r is singular.
double quantization_determinant(const ScatteringMatrix& region);
double quantization_determinant(const RegionModel& model, double energy);

struct RootSearchOptions {
  double bisection_tolerance = 1e-12;
  double residual_tolerance = 1e-10;  // relative to max |det| on the scan grid
  int max_iterations = 200;
  int jobs = 1;
};

// Scans det on the grid e_min, e_min + step, ..., e_max, brackets every
// strict sign change and bisects it. Sign changes whose refined residual
// is not small (poles of the determinant) are dropped. Tangential zeros
// are not found. Results are sorted ascending.
std::vector<BoundState> find_bound_states(const std::function<double(double)>& det,
                                          double e_min, double e_max, double grid_step,
                                          const RootSearchOptions& options = {});

std::vector<BoundState> find_bound_states(const RegionModel& model, double e_min,
                                          double e_max, double grid_step,
                                          const RootSearchOptions& options = {});

}  // namespace ptnoise
