#pragma once

#include <cstddef>
#include <vector>

#include "chanopt/channel.hpp"
#include "chanopt/control.hpp"
#include "chanopt/grid.hpp"
#include "chanopt/matrix.hpp"
#include "chanopt/measure.hpp"

namespace chanopt {

/// Deterministic M-cell quantizer: a cell index (0-based, < cell_count) per
/// x-point.  Empty cells are permitted.
struct Quantizer {
  std::vector<std::size_t> cell_of;
  std::size_t cell_count = 0;
};

/// Arbitrary stochastic kernel from x-points into M cells.
class RandomQuantizer {
public:
  explicit RandomQuantizer(Matrix kernel);
  const Matrix& kernel() const { return kernel_; }
  std::size_t points() const { return kernel_.rows(); }
  std::size_t cells() const { return kernel_.cols(); }

private:
  Matrix kernel_;
};

/// Finitely randomized quantizer: convex combination of deterministic
/// quantizers sharing a cell count and point count.
struct FRQ {
  struct Component {
    double weight;
    Quantizer quantizer;
  };
  std::vector<Component> components;
};

/// 1-D quantizer with convex (interval) cells, given by strictly sorted
/// thresholds; cell_of(x) = number of thresholds below x.
struct IntervalQuantizer {
  std::vector<double> thresholds;
};

/// Deterministic kernel 1{x in B_i} as a channel into the label grid
/// {0, ..., M-1}.
Channel as_channel(const Quantizer& q, GridPtr x_grid);
Channel as_channel(const RandomQuantizer& q, GridPtr x_grid);

/// One-hot kernel matrix of a deterministic quantizer.
Matrix kernel_of(const Quantizer& q);

/// Quantizer induced by interval thresholds on a sorted 1-D grid.
Quantizer to_quantizer(const IntervalQuantizer& iq, const Grid& x_grid);

/// Cell partition from a policy over cells: x goes to the lowest cell i
/// minimizing c(x, policy(i)).  For every channel Q into the cells,
/// evaluating `policy` through the result is no worse than through Q.
Quantizer policy_to_quantizer(const PolicyMap& policy, const CostSpec& cost);

/// Decompose a random quantizer into n equal-weight deterministic
/// quantizers: rows are rounded to the rational simplex grid with common
/// denominator n (largest-remainder, lowest-index ties), each rounded row is
/// written as an average of n one-hot vectors, and the k-th one-hot of every
/// row forms the k-th quantizer.  Recombination reproduces the rounded
/// kernel exactly, so the sup-norm error is at most 1/n.
FRQ decompose_random_quantizer(const RandomQuantizer& rq, std::size_t n);

/// Weighted sum of the component kernels.
RandomQuantizer recombine(const FRQ& frq);

struct SetwiseTvBound {
  double tv = 0.0;                 // ||P Q_n - P Q||_TV of the induced joints
  double cell_sym_diff_sum = 0.0;  // sum_i P(B^n_i symdiff B_i)
  bool holds = false;
};

/// Check ||PQ_n - PQ||_TV <= sum_i P(B^n_i symdiff B_i) (+1e-12).
SetwiseTvBound setwise_to_tv_bound(const DiscreteMeasure& P, const Quantizer& qn,
                                   const Quantizer& q);

/// At-input setwise gap between two kernels into cells, over products
/// A x {i} with A from `x_family`: max |int_A (a(i|x) - b(i|x)) P(dx)|.
double quantizer_setwise_gap(const DiscreteMeasure& P, const Matrix& a, const Matrix& b,
                             const TestSetFamily& x_family);

/// Exact sup over all Borel A of the same quantity (positive/negative part
/// per cell; no set enumeration).
double quantizer_setwise_gap_exact(const DiscreteMeasure& P, const Matrix& a, const Matrix& b);

/// Cost of serving a prefix interval of a sorted 1-D grid with one action:
/// w(l, r) = min_u sum_{l <= i < r} P(i) c(i, u), evaluated from per-action
/// prefix sums.  Shared by the interval-quantizer search and its oracle.
class CellCostTable {
public:
  CellCostTable(const DiscreteMeasure& P, const CostSpec& cost);

  std::size_t points() const { return n_; }
  double cost(std::size_t l, std::size_t r) const;
  std::size_t best_action(std::size_t l, std::size_t r) const;

private:
  std::size_t n_ = 0;
  std::size_t nu_ = 0;
  std::vector<double> prefix_;  // (nu) x (n+1), prefix_[u * (n_+1) + r]
};

struct IntervalOptResult {
  IntervalQuantizer quantizer;
  PolicyMap policy;             // one action per cell
  double cost_value = 0.0;
  std::vector<std::size_t> cuts;  // interior boundaries, strictly increasing
};

/// Exact minimum-cost M-cell interval quantizer with thresholds at grid-cell
/// boundaries, jointly with the optimal action per cell (dynamic program
/// over prefix intervals).
IntervalOptResult optimize_interval_quantizer(const DiscreteMeasure& P, const CostSpec& cost,
                                              std::size_t M);

}  // namespace chanopt
