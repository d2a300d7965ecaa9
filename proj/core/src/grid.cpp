#include "chanopt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chanopt {

Grid::Grid(std::vector<std::vector<double>> points, std::vector<double> cell_width)
    : points_(std::move(points)), cell_width_(std::move(cell_width)) {
  if (points_.empty()) throw std::invalid_argument("grid must contain at least one point");
  if (cell_width_.size() != points_.size())
    throw std::invalid_argument("grid needs one cell width per point");
  dim_ = points_.front().size();
  if (dim_ == 0) throw std::invalid_argument("grid points must have dimension >= 1");
  for (const auto& p : points_)
    if (p.size() != dim_) throw std::invalid_argument("grid points must share a dimension");
  for (double w : cell_width_)
    if (!(w > 0.0)) throw std::invalid_argument("grid cell widths must be strictly positive");
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j]) throw std::invalid_argument("grid points must be distinct");
}

GridPtr Grid::atoms(std::vector<double> values) {
  std::vector<std::vector<double>> pts;
  pts.reserve(values.size());
  for (double v : values) pts.push_back({v});
  return std::make_shared<Grid>(std::move(pts), std::vector<double>(values.size(), 1.0));
}

GridPtr Grid::uniform_cells(double lo, double hi, std::size_t count) {
  if (!(hi > lo)) throw std::invalid_argument("uniform_cells requires hi > lo");
  if (count == 0) throw std::invalid_argument("uniform_cells requires count >= 1");
  const double width = (hi - lo) / static_cast<double>(count);
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pts.push_back({lo + (static_cast<double>(i) + 0.5) * width});
  return std::make_shared<Grid>(std::move(pts), std::vector<double>(count, width));
}

GridPtr Grid::categories(std::size_t count) {
  if (count == 0) throw std::invalid_argument("categories requires count >= 1");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = static_cast<double>(i);
  return atoms(std::move(values));
}

GridPtr Grid::product(const Grid& x, const Grid& y) {
  std::vector<std::vector<double>> pts;
  std::vector<double> widths;
  pts.reserve(x.size() * y.size());
  widths.reserve(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      std::vector<double> p = x.point(i);
      p.insert(p.end(), y.point(j).begin(), y.point(j).end());
      pts.push_back(std::move(p));
      widths.push_back(x.cell_width(i) * y.cell_width(j));
    }
  }
  return std::make_shared<Grid>(std::move(pts), std::move(widths));
}

double Grid::distance(std::size_t i, std::size_t j) const {
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double d = points_[i][k] - points_[j][k];
    s += d * d;
  }
  return std::sqrt(s);
}

bool Grid::sorted_1d() const {
  if (dim_ != 1) return false;
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1][0] < points_[i][0])) return false;
  return true;
}

bool Grid::contiguous_cells_1d() const {
  if (!sorted_1d()) return false;
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (std::abs(upper_edge(i - 1) - lower_edge(i)) > 1e-9 * (1.0 + std::abs(lower_edge(i))))
      return false;
  return true;
}

std::size_t Grid::locate_clamped(double value) const {
  if (dim_ != 1) throw std::invalid_argument("locate_clamped requires a 1-D grid");
  if (value < upper_edge(0)) return 0;
  const std::size_t n = points_.size();
  for (std::size_t i = 1; i < n; ++i)
    if (value < upper_edge(i)) return i;
  return n - 1;
}

bool Grid::operator==(const Grid& other) const {
  return points_ == other.points_ && cell_width_ == other.cell_width_;
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace chanopt
