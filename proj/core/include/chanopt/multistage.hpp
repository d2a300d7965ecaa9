#pragma once

#include <cstddef>
#include <vector>

#include "chanopt/channel.hpp"
#include "chanopt/control.hpp"
#include "chanopt/grid.hpp"
#include "chanopt/matrix.hpp"
#include "chanopt/measure.hpp"

namespace chanopt {

/// Controlled transition kernel: per action u, a row-stochastic matrix from
/// x to x'.
class ControlledKernel {
public:
  ControlledKernel(GridPtr x_grid, GridPtr u_grid, std::vector<Matrix> per_action);

  /// Transitions that ignore the action: every u shares `transition`.
  static ControlledKernel action_free(GridPtr x_grid, GridPtr u_grid, Matrix transition);

  const GridPtr& x_grid() const { return x_grid_; }
  const GridPtr& u_grid() const { return u_grid_; }
  const Matrix& transition(std::size_t u) const { return per_action_[u]; }

private:
  GridPtr x_grid_;
  GridPtr u_grid_;
  std::vector<Matrix> per_action_;
};

/// Finite-horizon partially observed model: initial law, controlled kernel,
/// a per-stage observation channel, stage cost, horizon T >= 1.  The same
/// channel is applied at every stage.
struct MultistageModel {
  DiscreteMeasure initial;
  ControlledKernel kernel;
  Channel channel;
  CostSpec cost;
  int horizon;
};

void validate_model(const MultistageModel& model);

/// Deterministic history policy: actions[t] maps the mixed-radix index of
/// (y_0..y_t, u_0..u_{t-1}) to a u index.  All histories enumerate past
/// actions freely, not only those the policy itself would choose.
struct HistoryPolicy {
  std::vector<std::vector<std::size_t>> actions;
};

/// Index arithmetic for history tables.
struct HistoryLayout {
  std::size_t ny = 0;
  std::size_t nu = 0;

  /// Number of stage-t histories: ny^(t+1) * nu^t.
  std::size_t count(int t) const;
  /// Total histories over stages 0..T-1.
  std::size_t total(int horizon) const;
  std::size_t root(std::size_t y0) const { return y0; }
  /// Extend a stage-t history by (u_t, y_{t+1}).
  std::size_t child(std::size_t index, std::size_t u, std::size_t y_next) const {
    return (index * nu + u) * ny + y_next;
  }
};

/// Exact expected total cost of a history policy by forward propagation of
/// the joint law of (state, history); no simulation.
double evaluate_history_policy(const MultistageModel& model, const HistoryPolicy& policy);

struct MultistageSolution {
  HistoryPolicy policy;
  double cost = 0.0;
};

/// Exact minimum over all deterministic history policies.  Guarded by
/// |U|^(#histories) <= 10^7; computed by per-history pointwise minimization
/// over the full history tree, which attains the enumeration optimum.
MultistageSolution solve_exhaustive(const MultistageModel& model);

struct UniformTvRow {
  int n;
  double delta;  // uniform (sup_x) row TV between Q_n and Q
  double gap;    // |J(P,Q_n) - J(P,Q)|
  double bound;  // sup_norm * delta * T(T+1)/2
  bool holds;
};

/// Multi-stage continuity experiment: for each n compare the optimal cost
/// under Q_n with the optimal cost under the model's channel, against the
/// telescoped bound ||c||_inf * delta * T(T+1)/2.
std::vector<UniformTvRow> uniform_tv_continuity_experiment(const MultistageModel& model,
                                                           const ChannelSequence& seq,
                                                           const std::vector<int>& n_values);

}  // namespace chanopt
