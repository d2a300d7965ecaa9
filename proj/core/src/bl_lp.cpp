#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "chanopt/errors.hpp"
#include "chanopt/grid.hpp"
#include "chanopt/measure.hpp"

namespace chanopt::detail {

// The primal problem is
//
//   maximize  sum_i c_i f_i
//   s.t.      f_i - f_j <= dist(i, j)   for all ordered pairs i != j
//             -1 <= f_i <= 1
//
// Its dual is a minimum-cost transport problem with unit-cost disposal:
//
//   minimize  sum_{i != j} dist(i, j) y_ij + sum_i (s_i + t_i)
//   s.t.      sum_j (y_ij - y_ji) + s_i - t_i = c_i   for all i
//             y, s, t >= 0.
//
// We run a revised simplex on the dual.  Every column has at most two
// nonzero entries (e_i - e_j for y_ij, +/- e_i for s_i / t_i), so columns
// are generated implicitly and only the basis inverse (N x N) is stored.
// The all-disposal solution s_i = max(c_i, 0), t_i = max(-c_i, 0) is a
// feasible starting basis, which also shows the optimum is at most the
// total variation sum_i |c_i|.

namespace {

constexpr double kPivotTol = 1e-11;

struct ColumnRef {
  // pair column: i, j valid; disposal column: j == SIZE_MAX, sign +/-1
  std::size_t i;
  std::size_t j;
  int sign;  // only for disposal columns
};

}  // namespace

double bounded_lipschitz_lp(const Grid& grid, const std::vector<double>& c) {
  const std::size_t n = grid.size();
  if (c.size() != n) throw std::invalid_argument("coefficient size must match the grid");
  if (n > 512) throw NumericGuardError("bl_distance guarded to grids of at most 512 points");

  // Pairwise distances, row-major.
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) dist[i * n + j] = grid.distance(i, j);

  const std::size_t pair_count = n * n;          // ids [0, n^2), diagonal unused
  const std::size_t s_base = pair_count;         // ids [n^2, n^2 + n)
  const std::size_t t_base = pair_count + n;     // ids [n^2 + n, n^2 + 2n)

  auto column_of = [&](std::size_t id) -> ColumnRef {
    if (id < pair_count) return {id / n, id % n, 0};
    if (id < t_base) return {id - s_base, std::size_t(-1), +1};
    return {id - t_base, std::size_t(-1), -1};
  };
  auto cost_of = [&](std::size_t id) -> double {
    if (id < pair_count) return dist[id];
    return 1.0;
  };

  std::vector<std::size_t> basis(n);
  std::vector<double> x_basic(n);
  std::vector<double> binv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] >= 0.0) {
      basis[i] = s_base + i;
      binv[i * n + i] = 1.0;
      x_basic[i] = c[i];
    } else {
      basis[i] = t_base + i;
      binv[i * n + i] = -1.0;
      x_basic[i] = -c[i];
    }
  }

  std::vector<double> pi(n), w(n);
  const std::size_t bland_after = 40 * n + 200;
  const std::size_t max_iter = 800 * n + 20000;

  for (std::size_t iter = 0;; ++iter) {
    if (iter >= max_iter)
      throw NumericGuardError("bl_distance simplex exceeded its iteration cap");
    const bool bland = iter >= bland_after;

    // Dual values pi = costB^T * Binv.
    for (std::size_t r = 0; r < n; ++r) pi[r] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double ck = cost_of(basis[k]);
      if (ck == 0.0) continue;
      const double* row = binv.data() + k * n;
      for (std::size_t r = 0; r < n; ++r) pi[r] += ck * row[r];
    }

    // Price: reduced cost of y_ij is dist_ij - (pi_i - pi_j); of s_i is
    // 1 - pi_i; of t_i is 1 + pi_i.
    std::size_t enter = std::size_t(-1);
    double best_red = -kPivotTol;
    auto consider = [&](std::size_t id, double red) {
      if (red >= -kPivotTol) return false;
      if (bland) {
        if (enter == std::size_t(-1) || id < enter) enter = id;
        return false;
      }
      if (red < best_red) {
        best_red = red;
        enter = id;
      }
      return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        consider(i * n + j, dist[i * n + j] - (pi[i] - pi[j]));
      }
      consider(s_base + i, 1.0 - pi[i]);
      consider(t_base + i, 1.0 + pi[i]);
    }
    if (enter == std::size_t(-1)) break;  // optimal

    // Direction w = Binv * a_enter.
    const ColumnRef col = column_of(enter);
    if (col.j != std::size_t(-1)) {
      for (std::size_t k = 0; k < n; ++k)
        w[k] = binv[k * n + col.i] - binv[k * n + col.j];
    } else {
      const double sgn = static_cast<double>(col.sign);
      for (std::size_t k = 0; k < n; ++k) w[k] = sgn * binv[k * n + col.i];
    }

    // Ratio test; ties broken toward the smallest leaving variable id.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave_row = std::size_t(-1);
    for (std::size_t k = 0; k < n; ++k) {
      if (w[k] > kPivotTol) {
        const double ratio = x_basic[k] / w[k];
        if (ratio < theta - 1e-12 ||
            (ratio < theta + 1e-12 &&
             (leave_row == std::size_t(-1) || basis[k] < basis[leave_row]))) {
          theta = std::min(theta, ratio);
          leave_row = k;
        }
      }
    }
    if (leave_row == std::size_t(-1))
      throw NumericGuardError("bl_distance dual unbounded; inputs are inconsistent");

    // Pivot: eta update of the basis inverse and the basic solution.
    const double piv = w[leave_row];
    double* prow = binv.data() + leave_row * n;
    for (std::size_t r = 0; r < n; ++r) prow[r] /= piv;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == leave_row || w[k] == 0.0) continue;
      const double f = w[k];
      double* krow = binv.data() + k * n;
      for (std::size_t r = 0; r < n; ++r) krow[r] -= f * prow[r];
      x_basic[k] -= f * theta;
      if (x_basic[k] < 0.0) x_basic[k] = 0.0;
    }
    x_basic[leave_row] = theta;
    basis[leave_row] = enter;
  }

  double obj = 0.0;
  for (std::size_t k = 0; k < n; ++k) obj += cost_of(basis[k]) * x_basic[k];
  return std::max(obj, 0.0);
}

}  // namespace chanopt::detail
