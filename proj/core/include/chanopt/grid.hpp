#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace chanopt {

/// Finite ordered set of d-dimensional support points with per-point cell
/// widths.  The width is the quadrature weight for measures derived from a
/// density (mass = density * width); pure atom sets use width 1.  Point order
/// is fixed at construction and indices are stable.
class Grid {
public:
  Grid(std::vector<std::vector<double>> points, std::vector<double> cell_width);

  /// 1-D atom set, widths all 1.
  static std::shared_ptr<const Grid> atoms(std::vector<double> values);
  /// 1-D partition of [lo, hi] into `count` equal cells; points are the cell
  /// centers and widths the cell length.
  static std::shared_ptr<const Grid> uniform_cells(double lo, double hi, std::size_t count);
  /// Label grid {0, 1, ..., count-1} for categorical observations.
  static std::shared_ptr<const Grid> categories(std::size_t count);
  /// Cartesian product, x-major ordering: index = xi * |y| + yi.  Point
  /// coordinates are concatenated and widths multiplied.
  static std::shared_ptr<const Grid> product(const Grid& x, const Grid& y);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<double>& point(std::size_t i) const { return points_[i]; }
  double cell_width(std::size_t i) const { return cell_width_[i]; }

  /// Coordinate of a 1-D grid point.
  double coord(std::size_t i) const { return points_[i][0]; }

  /// Euclidean distance between two grid points.
  double distance(std::size_t i, std::size_t j) const;

  /// Left/right edge of a 1-D cell (point -/+ width/2).
  double lower_edge(std::size_t i) const { return points_[i][0] - cell_width_[i] / 2.0; }
  double upper_edge(std::size_t i) const { return points_[i][0] + cell_width_[i] / 2.0; }

  /// True for a 1-D grid whose points are strictly increasing.
  bool sorted_1d() const;
  /// True for a sorted 1-D grid whose cells tile an interval with no gaps.
  bool contiguous_cells_1d() const;

  /// Index of the 1-D cell containing `value`, clamping to the edge cells.
  std::size_t locate_clamped(double value) const;

  bool operator==(const Grid& other) const;

private:
  std::vector<std::vector<double>> points_;
  std::vector<double> cell_width_;
  std::size_t dim_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Same grid object or structurally equal grids.
bool same_grid(const GridPtr& a, const GridPtr& b);

}  // namespace chanopt
