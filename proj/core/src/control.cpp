#include "chanopt/control.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chanopt {

CostSpec::CostSpec(GridPtr x_grid, GridPtr u_grid, Matrix values)
    : x_grid_(std::move(x_grid)), u_grid_(std::move(u_grid)), values_(std::move(values)) {
  if (!x_grid_ || !u_grid_) throw std::invalid_argument("cost requires both grids");
  if (values_.rows() != x_grid_->size() || values_.cols() != u_grid_->size())
    throw std::invalid_argument("cost shape must match the grids");
  for (double v : values_.data()) {
    if (v < 0.0) throw std::invalid_argument("cost values must be nonnegative");
    if (!std::isfinite(v)) throw std::invalid_argument("cost values must be finite");
    sup_norm_ = std::max(sup_norm_, std::abs(v));
  }
}

CostSpec CostSpec::quadratic(GridPtr x_grid, GridPtr u_grid) {
  if (x_grid->dim() != 1 || u_grid->dim() != 1)
    throw std::invalid_argument("quadratic cost requires 1-D grids");
  Matrix v(x_grid->size(), u_grid->size());
  for (std::size_t i = 0; i < x_grid->size(); ++i)
    for (std::size_t j = 0; j < u_grid->size(); ++j) {
      const double d = x_grid->coord(i) - u_grid->coord(j);
      v(i, j) = d * d;
    }
  return CostSpec(std::move(x_grid), std::move(u_grid), std::move(v));
}

OptResult optimal_policy(const DiscreteMeasure& P, const Channel& Q, const CostSpec& cost) {
  if (!same_grid(P.grid(), Q.x_grid()) || !same_grid(P.grid(), cost.x_grid()))
    throw std::invalid_argument("incompatible grids");
  const std::size_t nx = Q.kernel().rows();
  const std::size_t ny = Q.kernel().cols();
  const std::size_t nu = cost.u_grid()->size();

  // Unnormalized joint column masses; avoids a divide so the optimal cost
  // matches direct policy evaluation bit for bit.
  Matrix joint(nx, ny);
  std::vector<double> marginal(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      joint(x, y) = P.weight(x) * Q.kernel()(x, y);
      marginal[y] += joint(x, y);
    }

  bool any_mass = false;
  for (double m : marginal) any_mass = any_mass || m > 0.0;
  if (!any_mass) throw std::invalid_argument("degenerate observation distribution");

  OptResult result;
  result.policy.action.assign(ny, 0);
  result.per_y_value.assign(ny, 0.0);
  result.y_has_mass.assign(ny, false);
  for (std::size_t y = 0; y < ny; ++y) {
    if (marginal[y] <= 0.0) continue;  // zero cost, lowest-index action
    result.y_has_mass[y] = true;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_u = 0;
    for (std::size_t u = 0; u < nu; ++u) {
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x) s += joint(x, y) * cost.values()(x, u);
      if (s < best) {
        best = s;
        best_u = u;
      }
    }
    result.policy.action[y] = best_u;
    result.per_y_value[y] = best / marginal[y];
    result.cost += best;
  }
  return result;
}

double evaluate_policy(const DiscreteMeasure& P, const Channel& Q, const CostSpec& cost,
                       const PolicyMap& policy) {
  if (!same_grid(P.grid(), Q.x_grid()) || !same_grid(P.grid(), cost.x_grid()))
    throw std::invalid_argument("incompatible grids");
  if (policy.action.size() != Q.kernel().cols())
    throw std::invalid_argument("policy must cover every observation");
  const std::size_t nu = cost.u_grid()->size();
  for (std::size_t u : policy.action)
    if (u >= nu) throw std::invalid_argument("policy action index out of range");
  double total = 0.0;
  for (std::size_t y = 0; y < Q.kernel().cols(); ++y) {
    const std::size_t u = policy.action[y];
    double s = 0.0;
    for (std::size_t x = 0; x < Q.kernel().rows(); ++x)
      s += P.weight(x) * Q.kernel()(x, y) * cost.values()(x, u);
    total += s;
  }
  return total;
}

ContinuityBound continuity_bound_check(const DiscreteMeasure& P, const Channel& Q1,
                                       const Channel& Q2, const CostSpec& cost) {
  ContinuityBound out;
  const double j1 = optimal_policy(P, Q1, cost).cost;
  const double j2 = optimal_policy(P, Q2, cost).cost;
  out.lhs = std::abs(j1 - j2);
  const JointMeasure a = join(P, Q1);
  const JointMeasure b = join(P, Q2);
  double tv = 0.0;
  for (std::size_t i = 0; i < a.mass().data().size(); ++i)
    tv += std::abs(a.mass().data()[i] - b.mass().data()[i]);
  out.rhs = cost.sup_norm() * tv;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

BestWorst best_worst_channel(const DiscreteMeasure& P, const std::vector<Channel>& family,
                             const CostSpec& cost) {
  if (family.empty()) throw std::invalid_argument("channel family must be non-empty");
  BestWorst out;
  out.best_cost = std::numeric_limits<double>::infinity();
  out.worst_cost = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double j = optimal_policy(P, family[i], cost).cost;
    if (j < out.best_cost) {
      out.best_cost = j;
      out.best_index = i;
    }
    if (j > out.worst_cost) {
      out.worst_cost = j;
      out.worst_index = i;
    }
  }
  return out;
}

ConditionalMean conditional_mean_policy(const DiscreteMeasure& P, const Channel& Q) {
  if (P.grid()->dim() != 1)
    throw std::invalid_argument("conditional mean requires a 1-D x-grid");
  const JointMeasure J = join(P, Q);
  const auto posteriors = conditional_x_given_y(J);
  ConditionalMean out;
  out.mean.assign(posteriors.size(), 0.0);
  out.defined.assign(posteriors.size(), false);
  for (std::size_t y = 0; y < posteriors.size(); ++y) {
    if (!posteriors[y]) continue;
    out.defined[y] = true;
    double m = 0.0;
    for (std::size_t x = 0; x < posteriors[y]->size(); ++x)
      m += posteriors[y]->weight(x) * P.grid()->coord(x);
    out.mean[y] = m;
  }
  return out;
}

}  // namespace chanopt
