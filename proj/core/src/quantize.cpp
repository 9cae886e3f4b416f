#include "ptnoise/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "ptnoise/errors.hpp"

namespace ptnoise {

double quantization_determinant(const ScatteringMatrix& region) {
  const auto n = region.n_modes();
  const CMatrix one_plus_r = CMatrix::Identity(n, n) + region.r();
  const double cond = condition_number(one_plus_r);
  if (!(cond <= kDefaultConditionCap)) {
    throw SingularMatrix("quantization determinant: I + r is singular", cond);
  }
  const CMatrix closed = region.rp() - region.t() * one_plus_r.fullPivLu().solve(region.tp());
  const RMatrix im = closed.imag();
  return im.fullPivLu().determinant();
}

double quantization_determinant(const RegionModel& model, double energy) {
  return quantization_determinant(evaluate(model, energy));
}

std::vector<BoundState> find_bound_states(const std::function<double(double)>& det,
                                          double e_min, double e_max, double grid_step,
                                          const RootSearchOptions& options) {
  if (!(e_min > 0.0 && e_min < e_max)) {
    throw InvalidParam("root search needs 0 < e_min < e_max");
  }
  if (!(grid_step > 0.0)) {
    throw InvalidParam("root search needs grid_step > 0");
  }

  const auto interior = static_cast<std::size_t>(std::floor((e_max - e_min) / grid_step));
  std::vector<double> grid;
  grid.reserve(interior + 2);
  for (std::size_t i = 0; i <= interior; ++i) {
    grid.push_back(e_min + static_cast<double>(i) * grid_step);
  }
  if (grid.back() < e_max) grid.push_back(e_max);

  std::vector<double> values(grid.size());
  detail::parallel_for(grid.size(), options.jobs, [&](std::size_t i) { values[i] = det(grid[i]); });

  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double tol = options.residual_tolerance * (scale > 0.0 ? scale : 1.0);

  std::vector<BoundState> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double v0 = values[i];
    const double v1 = values[i + 1];
    if (v0 == 0.0) {
      // Exact hit on a grid point: keep it if the neighbours change sign.
      if (i > 0 && values[i - 1] * v1 < 0.0) {
        roots.push_back({grid[i], 0.0, grid[i - 1], grid[i + 1], 0});
      }
      continue;
    }
    if (v1 == 0.0 || v0 * v1 > 0.0) continue;

    double lo = grid[i], hi = grid[i + 1];
    double f_lo = v0;
    int it = 0;
    while (hi - lo > options.bisection_tolerance && it < options.max_iterations) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double f_mid = det(mid);
      ++it;
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    const double e0 = 0.5 * (lo + hi);
    const double residual = std::abs(det(e0));
    if (residual > tol) continue;  // a pole, not a zero
    roots.push_back({e0, residual, grid[i], grid[i + 1], it});
  }
  std::sort(roots.begin(), roots.end(),
            [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
  return roots;
}

std::vector<BoundState> find_bound_states(const RegionModel& model, double e_min,
                                          double e_max, double grid_step,
                                          const RootSearchOptions& options) {
  model.validate();
  return find_bound_states([&](double e) { return quantization_determinant(model, e); }, e_min,
                           e_max, grid_step, options);
}

}  // namespace ptnoise
