#include "chanopt/multistage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "chanopt/errors.hpp"

namespace chanopt {

ControlledKernel::ControlledKernel(GridPtr x_grid, GridPtr u_grid, std::vector<Matrix> per_action)
    : x_grid_(std::move(x_grid)), u_grid_(std::move(u_grid)), per_action_(std::move(per_action)) {
  if (!x_grid_ || !u_grid_) throw std::invalid_argument("controlled kernel requires grids");
  if (per_action_.size() != u_grid_->size())
    throw std::invalid_argument("controlled kernel needs one matrix per action");
  for (const auto& m : per_action_) {
    if (m.rows() != x_grid_->size() || m.cols() != x_grid_->size())
      throw std::invalid_argument("transition matrices must be square over the x-grid");
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) < 0.0) throw std::invalid_argument("transition entries must be nonnegative");
        total += m(i, j);
      }
      if (std::abs(total - 1.0) > kWeightTol)
        throw std::invalid_argument("transition rows must sum to 1");
    }
  }
}

ControlledKernel ControlledKernel::action_free(GridPtr x_grid, GridPtr u_grid, Matrix transition) {
  std::vector<Matrix> per_action(u_grid->size(), transition);
  return ControlledKernel(std::move(x_grid), std::move(u_grid), std::move(per_action));
}

void validate_model(const MultistageModel& model) {
  if (model.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (!same_grid(model.initial.grid(), model.kernel.x_grid()) ||
      !same_grid(model.initial.grid(), model.channel.x_grid()) ||
      !same_grid(model.initial.grid(), model.cost.x_grid()) ||
      !same_grid(model.kernel.u_grid(), model.cost.u_grid()))
    throw std::invalid_argument("incompatible grids across the model");
}

std::size_t HistoryLayout::count(int t) const {
  std::size_t c = ny;
  for (int s = 0; s < t; ++s) c *= nu * ny;
  return c;
}

std::size_t HistoryLayout::total(int horizon) const {
  std::size_t c = 0;
  for (int t = 0; t < horizon; ++t) c += count(t);
  return c;
}

namespace {

struct TreeTables {
  HistoryLayout layout;
  // beta[t][h * nx + x]: unnormalized P(X_t = x, Y_0..t = y's | U's in h).
  std::vector<std::vector<double>> beta;
};

// Forward pass over the full (y, u) history tree; policy-independent since
// past actions are coordinates of the history.
TreeTables forward_tables(const MultistageModel& model) {
  const std::size_t nx = model.initial.size();
  const std::size_t ny = model.channel.y_grid()->size();
  const std::size_t nu = model.kernel.u_grid()->size();
  const int T = model.horizon;

  double entries = 0.0, stage = static_cast<double>(ny);
  for (int t = 0; t < T; ++t) {
    entries += stage * static_cast<double>(nx);
    stage *= static_cast<double>(nu) * static_cast<double>(ny);
  }
  if (entries > 1e8)
    throw NumericGuardError("history tree too large for exact propagation");

  TreeTables out;
  out.layout = HistoryLayout{ny, nu};
  out.beta.resize(T);

  out.beta[0].assign(ny * nx, 0.0);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x)
      out.beta[0][y * nx + x] = model.initial.weight(x) * model.channel.kernel()(x, y);

  for (int t = 1; t < T; ++t) {
    const std::size_t prev_count = out.layout.count(t - 1);
    out.beta[t].assign(out.layout.count(t) * nx, 0.0);
    for (std::size_t h = 0; h < prev_count; ++h) {
      const double* b = out.beta[t - 1].data() + h * nx;
      for (std::size_t u = 0; u < nu; ++u) {
        // propagate through the controlled kernel, then observe
        std::vector<double> next(nx, 0.0);
        for (std::size_t x = 0; x < nx; ++x) {
          if (b[x] == 0.0) continue;
          for (std::size_t x2 = 0; x2 < nx; ++x2)
            next[x2] += b[x] * model.kernel.transition(u)(x, x2);
        }
        for (std::size_t y = 0; y < ny; ++y) {
          double* dst = out.beta[t].data() + out.layout.child(h, u, y) * nx;
          for (std::size_t x2 = 0; x2 < nx; ++x2)
            dst[x2] = next[x2] * model.channel.kernel()(x2, y);
        }
      }
    }
  }
  return out;
}

}  // namespace

double evaluate_history_policy(const MultistageModel& model, const HistoryPolicy& policy) {
  validate_model(model);
  const std::size_t nx = model.initial.size();
  const std::size_t nu = model.kernel.u_grid()->size();
  const int T = model.horizon;
  if (policy.actions.size() != static_cast<std::size_t>(T))
    throw std::invalid_argument("policy must cover every stage");

  const TreeTables tables = forward_tables(model);
  for (int t = 0; t < T; ++t) {
    if (policy.actions[t].size() != tables.layout.count(t))
      throw std::invalid_argument("policy does not cover all stage-" + std::to_string(t) +
                                  " histories");
    for (std::size_t u : policy.actions[t])
      if (u >= nu) throw std::invalid_argument("policy action index out of range");
  }

  // Walk only the branch consistent with the policy's own choices; beta
  // carries the exact probability weight of each visited history.
  const std::size_t ny = tables.layout.ny;
  double total = 0.0;
  std::vector<std::size_t> frontier(ny);
  for (std::size_t y0 = 0; y0 < ny; ++y0) frontier[y0] = tables.layout.root(y0);
  for (int t = 0; t < T; ++t) {
    std::vector<std::size_t> next;
    if (t + 1 < T) next.reserve(frontier.size() * ny);
    for (std::size_t h : frontier) {
      const double* b = tables.beta[t].data() + h * nx;
      const std::size_t u = policy.actions[t][h];
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x) s += b[x] * model.cost.values()(x, u);
      total += s;
      if (t + 1 < T)
        for (std::size_t y = 0; y < ny; ++y) next.push_back(tables.layout.child(h, u, y));
    }
    frontier = std::move(next);
  }
  return total;
}

MultistageSolution solve_exhaustive(const MultistageModel& model) {
  validate_model(model);
  const std::size_t nx = model.initial.size();
  const std::size_t nu = model.kernel.u_grid()->size();
  const int T = model.horizon;

  const HistoryLayout layout{model.channel.y_grid()->size(), nu};
  // Count histories in floating point first so oversized inputs trip the
  // guard instead of overflowing the index type.
  double histories_d = 0.0, stage = static_cast<double>(layout.ny);
  for (int t = 0; t < T; ++t) {
    histories_d += stage;
    stage *= static_cast<double>(nu) * static_cast<double>(layout.ny);
  }
  const double budget = histories_d * std::log10(static_cast<double>(nu));
  if (budget > 7.0)
    throw NumericGuardError(
        "policy space too large: |U|^" +
        std::to_string(static_cast<long long>(histories_d)) + " exceeds the 10^7 budget");

  const TreeTables tables = forward_tables(model);

  MultistageSolution out;
  out.policy.actions.resize(T);
  std::vector<std::vector<double>> value(T);
  for (int t = T - 1; t >= 0; --t) {
    const std::size_t count = layout.count(t);
    value[t].assign(count, 0.0);
    out.policy.actions[t].assign(count, 0);
    for (std::size_t h = 0; h < count; ++h) {
      const double* b = tables.beta[t].data() + h * nx;
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_u = 0;
      for (std::size_t u = 0; u < nu; ++u) {
        double v = 0.0;
        for (std::size_t x = 0; x < nx; ++x) v += b[x] * model.cost.values()(x, u);
        if (t + 1 < T) {
          const std::size_t ny = layout.ny;
          for (std::size_t y = 0; y < ny; ++y) v += value[t + 1][layout.child(h, u, y)];
        }
        if (v < best) {
          best = v;
          best_u = u;
        }
      }
      value[t][h] = best;
      out.policy.actions[t][h] = best_u;
    }
  }
  for (std::size_t y0 = 0; y0 < layout.ny; ++y0) out.cost += value[0][layout.root(y0)];
  return out;
}

std::vector<UniformTvRow> uniform_tv_continuity_experiment(const MultistageModel& model,
                                                           const ChannelSequence& seq,
                                                           const std::vector<int>& n_values) {
  validate_model(model);
  const double j_limit = solve_exhaustive(model).cost;
  const double T = static_cast<double>(model.horizon);
  const double stage_factor = T * (T + 1.0) / 2.0;

  std::vector<UniformTvRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    MultistageModel variant{model.initial, model.kernel, seq.at(n), model.cost, model.horizon};
    validate_model(variant);
    UniformTvRow row;
    row.n = n;
    row.delta = uniform_tv(variant.channel, model.channel);
    row.gap = std::abs(solve_exhaustive(variant).cost - j_limit);
    row.bound = model.cost.sup_norm() * row.delta * stage_factor;
    row.holds = row.gap <= row.bound + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace chanopt
