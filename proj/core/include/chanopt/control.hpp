#pragma once

#include <cstddef>
#include <vector>

#include "chanopt/channel.hpp"
#include "chanopt/grid.hpp"
#include "chanopt/matrix.hpp"
#include "chanopt/measure.hpp"

namespace chanopt {

/// Stage cost c(x, u) on the x- and u-grids.  Values are nonnegative and
/// bounded; sup_norm caches max |c|.
class CostSpec {
public:
  CostSpec(GridPtr x_grid, GridPtr u_grid, Matrix values);

  /// c(x, u) = (x - u)^2 on 1-D grids.
  static CostSpec quadratic(GridPtr x_grid, GridPtr u_grid);

  const GridPtr& x_grid() const { return x_grid_; }
  const GridPtr& u_grid() const { return u_grid_; }
  const Matrix& values() const { return values_; }
  double sup_norm() const { return sup_norm_; }

private:
  GridPtr x_grid_;
  GridPtr u_grid_;
  Matrix values_;
  double sup_norm_ = 0.0;
};

/// Deterministic policy: one u-grid index per observation index.
struct PolicyMap {
  std::vector<std::size_t> action;
};

/// Result of the single-stage optimization.  per_y_value holds the inner
/// minimum E[c(X, u*) | Y = y]; zero-mass observations carry value 0, action
/// index 0, and y_has_mass = false.
struct OptResult {
  PolicyMap policy;
  double cost = 0.0;
  std::vector<double> per_y_value;
  std::vector<bool> y_has_mass;
};

/// Optimal single-stage policy and cost J(P, Q): for every observation with
/// positive marginal mass, the action minimizing the posterior-weighted cost
/// (ties broken toward the lowest u index).
OptResult optimal_policy(const DiscreteMeasure& P, const Channel& Q, const CostSpec& cost);

/// Expected cost of a fixed policy: sum_{x,y} P(x) Q(y|x) c(x, policy(y)).
double evaluate_policy(const DiscreteMeasure& P, const Channel& Q, const CostSpec& cost,
                       const PolicyMap& policy);

struct ContinuityBound {
  double lhs = 0.0;  // |J(P,Q1) - J(P,Q2)|
  double rhs = 0.0;  // sup_norm * ||PQ1 - PQ2||_TV
  bool holds = false;
};

/// Check |J(P,Q1) - J(P,Q2)| <= ||c||_inf * ||PQ1 - PQ2||_TV (+1e-9).
ContinuityBound continuity_bound_check(const DiscreteMeasure& P, const Channel& Q1,
                                       const Channel& Q2, const CostSpec& cost);

struct BestWorst {
  std::size_t best_index = 0;
  double best_cost = 0.0;
  std::size_t worst_index = 0;
  double worst_cost = 0.0;
};

/// Exact argmin/argmax of J(P, .) over an explicit finite channel family;
/// the first index wins ties.
BestWorst best_worst_channel(const DiscreteMeasure& P, const std::vector<Channel>& family,
                             const CostSpec& cost);

/// Posterior mean of X per observation (1-D x-grid).  With quadratic cost
/// and a u-grid containing these values, optimal_policy selects them.
struct ConditionalMean {
  std::vector<double> mean;      // defined entries only
  std::vector<bool> defined;     // false where the y-marginal is zero
};

ConditionalMean conditional_mean_policy(const DiscreteMeasure& P, const Channel& Q);

}  // namespace chanopt
