#include "chanopt/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chanopt/errors.hpp"

namespace chanopt {

DiscreteMeasure::DiscreteMeasure(GridPtr grid, std::vector<double> weights)
    : grid_(std::move(grid)), weights_(std::move(weights)) {
  if (!grid_) throw std::invalid_argument("measure requires a grid");
  if (weights_.size() != grid_->size())
    throw std::invalid_argument("measure needs one weight per grid point");
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::invalid_argument("measure weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw std::invalid_argument("measure weights must sum to 1 within 1e-12");
}

DiscreteMeasure DiscreteMeasure::uniform(GridPtr grid) {
  const std::size_t n = grid->size();
  return DiscreteMeasure(std::move(grid), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::point_mass(GridPtr grid, std::size_t index) {
  if (index >= grid->size()) throw std::invalid_argument("point mass index out of range");
  std::vector<double> w(grid->size(), 0.0);
  w[index] = 1.0;
  return DiscreteMeasure(std::move(grid), std::move(w));
}

TestSetFamily::TestSetFamily(std::size_t grid_size, std::vector<std::vector<std::size_t>> sets)
    : grid_size_(grid_size), sets_(std::move(sets)) {
  if (sets_.empty()) throw std::invalid_argument("test set family must be non-empty");
  bool has_full = false;
  for (const auto& s : sets_) {
    if (s.empty()) throw std::invalid_argument("test sets must be non-empty");
    for (std::size_t i : s)
      if (i >= grid_size_) throw std::invalid_argument("test set index out of range");
    if (s.size() == grid_size_) has_full = true;
  }
  if (!has_full) throw std::invalid_argument("test set family must include the full space");
}

TestSetFamily TestSetFamily::singletons_and_full(std::size_t grid_size) {
  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(grid_size + 1);
  for (std::size_t i = 0; i < grid_size; ++i) sets.push_back({i});
  std::vector<std::size_t> full(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) full[i] = i;
  sets.push_back(std::move(full));
  return TestSetFamily(grid_size, std::move(sets));
}

TestSetFamily TestSetFamily::all_subsets(std::size_t grid_size) {
  if (grid_size > 20) throw NumericGuardError("all_subsets guarded to grids of at most 20 points");
  std::vector<std::vector<std::size_t>> sets;
  const std::size_t count = std::size_t{1} << grid_size;
  for (std::size_t mask = 1; mask < count; ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < grid_size; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    sets.push_back(std::move(s));
  }
  return TestSetFamily(grid_size, std::move(sets));
}

TestSetFamily TestSetFamily::dyadic_intervals(const Grid& grid, unsigned depth) {
  if (!grid.contiguous_cells_1d())
    throw std::invalid_argument("dyadic intervals need a contiguous sorted 1-D cell grid");
  const std::size_t n = grid.size();
  const std::size_t finest = std::size_t{1} << depth;
  if (n % finest != 0)
    throw std::invalid_argument("grid size must be a multiple of 2^depth for dyadic intervals");
  std::vector<std::vector<std::size_t>> sets;
  for (unsigned level = 0; level <= depth; ++level) {
    const std::size_t pieces = std::size_t{1} << level;
    const std::size_t span = n / pieces;
    for (std::size_t p = 0; p < pieces; ++p) {
      std::vector<std::size_t> s(span);
      for (std::size_t i = 0; i < span; ++i) s[i] = p * span + i;
      sets.push_back(std::move(s));
    }
  }
  return TestSetFamily(n, std::move(sets));
}

TestSetFamily TestSetFamily::product(const TestSetFamily& x_family, const TestSetFamily& y_family,
                                     std::size_t nx, std::size_t ny) {
  if (x_family.grid_size() != nx || y_family.grid_size() != ny)
    throw std::invalid_argument("product family: component sizes do not match grids");
  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(x_family.sets().size() * y_family.sets().size());
  for (const auto& a : x_family.sets()) {
    for (const auto& b : y_family.sets()) {
      std::vector<std::size_t> s;
      s.reserve(a.size() * b.size());
      for (std::size_t xi : a)
        for (std::size_t yi : b) s.push_back(xi * ny + yi);
      sets.push_back(std::move(s));
    }
  }
  return TestSetFamily(nx * ny, std::move(sets));
}

namespace {
void require_same_grid(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!same_grid(mu.grid(), nu.grid())) throw std::invalid_argument("incompatible grids");
}
}  // namespace

double tv_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_grid(mu, nu);
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += std::abs(mu.weight(i) - nu.weight(i));
  return s;
}

double setwise_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const TestSetFamily& family) {
  require_same_grid(mu, nu);
  if (family.grid_size() != mu.size())
    throw std::invalid_argument("test set family does not match the measure grid");
  double best = 0.0;
  for (const auto& set : family.sets()) {
    double d = 0.0;
    for (std::size_t i : set) d += mu.weight(i) - nu.weight(i);
    best = std::max(best, std::abs(d));
  }
  return best;
}

double setwise_gap_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_grid(mu, nu);
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = mu.weight(i) - nu.weight(i);
    if (d > 0.0) pos += d;
    else neg -= d;
  }
  return std::max(pos, neg);
}

double bl_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_grid(mu, nu);
  std::vector<double> c(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) c[i] = mu.weight(i) - nu.weight(i);
  return detail::bounded_lipschitz_lp(*mu.grid(), c);
}

double integrate(const DiscreteMeasure& mu,
                 const std::function<double(const std::vector<double>&)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += mu.weight(i) * f(mu.grid()->point(i));
  return s;
}

double integrate(const DiscreteMeasure& mu, const std::vector<double>& values) {
  if (values.size() != mu.size())
    throw std::invalid_argument("integrand must be defined on every grid point");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += mu.weight(i) * values[i];
  return s;
}

}  // namespace chanopt
