#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "chanopt/grid.hpp"

namespace chanopt {

/// Normalization tolerance for probability weights and kernel rows.
inline constexpr double kWeightTol = 1e-12;

/// Probability measure on a Grid: one nonnegative weight per point, summing
/// to 1 within kWeightTol.  Rejected at construction otherwise; weights are
/// never silently renormalized.
class DiscreteMeasure {
public:
  DiscreteMeasure(GridPtr grid, std::vector<double> weights);

  static DiscreteMeasure uniform(GridPtr grid);
  static DiscreteMeasure point_mass(GridPtr grid, std::size_t index);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

private:
  GridPtr grid_;
  std::vector<double> weights_;
};

/// Finite family of test sets, each a list of grid point indices.  The family
/// always contains the full index set; sets are non-empty.
class TestSetFamily {
public:
  TestSetFamily(std::size_t grid_size, std::vector<std::vector<std::size_t>> sets);

  /// All singletons plus the full space.
  static TestSetFamily singletons_and_full(std::size_t grid_size);
  /// Every subset of the grid (guarded to grid_size <= 20).
  static TestSetFamily all_subsets(std::size_t grid_size);
  /// All dyadic sub-intervals of a contiguous 1-D cell grid down to
  /// resolution 2^depth (depth = 0 gives just the full space).  The grid size
  /// must be a multiple of 2^depth.
  static TestSetFamily dyadic_intervals(const Grid& grid, unsigned depth);
  /// Product family {A x B} on an x-major flattened product grid.
  static TestSetFamily product(const TestSetFamily& x_family, const TestSetFamily& y_family,
                               std::size_t nx, std::size_t ny);

  std::size_t grid_size() const { return grid_size_; }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }

private:
  std::size_t grid_size_;
  std::vector<std::vector<std::size_t>> sets_;
};

/// Total variation distance: sum_i |mu_i - nu_i|, i.e. the sup over functions
/// bounded by 1 of the integral difference.  Ranges over [0, 2]; twice the
/// sup over sets of the set-mass difference.
double tv_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// max over A in `family` of |mu(A) - nu(A)|, in [0, 1].
double setwise_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const TestSetFamily& family);

/// Exact sup over *all* subsets of |mu(A) - nu(A)| (positive/negative part
/// of the weight difference; no enumeration).
double setwise_gap_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Bounded-Lipschitz distance: sup over f with |f| <= 1 and
/// |f(p) - f(q)| <= dist(p, q) of the integral difference.  Solved as an
/// exact linear program over the function values at the support points.
/// Guarded to grids of at most 512 points.
double bl_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Weighted sum of f over the support.
double integrate(const DiscreteMeasure& mu, const std::function<double(const std::vector<double>&)>& f);
double integrate(const DiscreteMeasure& mu, const std::vector<double>& values);

namespace detail {
/// Exact LP used by bl_distance: maximize sum_i c_i f_i subject to
/// |f_i| <= 1 and |f_i - f_j| <= dist(i, j).  Exposed for the solver's own
/// unit tests; `c` need not sum to zero.
double bounded_lipschitz_lp(const Grid& grid, const std::vector<double>& c);
}  // namespace detail

}  // namespace chanopt
