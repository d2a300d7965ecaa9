#include "chanopt/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "chanopt/channel.hpp"
#include "chanopt/control.hpp"
#include "chanopt/estimation.hpp"
#include "chanopt/models.hpp"
#include "chanopt/multistage.hpp"
#include "chanopt/quantizer.hpp"

namespace chanopt {

namespace {

// ---------------------------------------------------------------- parameters

std::int64_t as_int(const ParamValue& v, const std::string& key) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) {
    if (*d == std::floor(*d)) return static_cast<std::int64_t>(*d);
  }
  throw ConfigError("parameter '" + key + "' must be an integer");
}

double as_double(const ParamValue& v, const std::string& key) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw ConfigError("parameter '" + key + "' must be a number");
}

std::vector<std::int64_t> as_list(const ParamValue& v, const std::string& key) {
  if (const auto* l = std::get_if<std::vector<std::int64_t>>(&v)) return *l;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return {*i};
  throw ConfigError("parameter '" + key + "' must be a list of integers");
}

class Params {
public:
  Params(const ScenarioConfig& config, std::vector<std::string> allowed)
      : config_(config) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : config.params) {
      (void)value;
      if (!keys.count(key))
        throw ConfigError("unknown parameter '" + key + "' for scenario '" + config.name + "'");
    }
  }

  std::int64_t get_int(const std::string& key, std::int64_t def) const {
    const auto it = config_.params.find(key);
    return it == config_.params.end() ? def : as_int(it->second, key);
  }
  double get_double(const std::string& key, double def) const {
    const auto it = config_.params.find(key);
    return it == config_.params.end() ? def : as_double(it->second, key);
  }
  std::vector<std::int64_t> get_list(const std::string& key,
                                     std::vector<std::int64_t> def) const {
    const auto it = config_.params.find(key);
    return it == config_.params.end() ? def : as_list(it->second, key);
  }

private:
  const ScenarioConfig& config_;
};

std::vector<int> to_int_vector(const std::vector<std::int64_t>& v, const std::string& key) {
  std::vector<int> out;
  out.reserve(v.size());
  for (std::int64_t x : v) {
    if (x < 1 || x > 1000000) throw ConfigError("entry of '" + key + "' out of range");
    out.push_back(static_cast<int>(x));
  }
  if (out.empty()) throw ConfigError("'" + key + "' must be non-empty");
  return out;
}

std::size_t column_index(const std::vector<std::string>& columns, const std::string& name) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ConfigError("missing column '" + name + "'");
}

std::vector<double> column_values(const std::vector<std::string>& columns,
                                  const std::vector<std::vector<double>>& rows,
                                  const std::string& name) {
  const std::size_t idx = column_index(columns, name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(idx));
  return out;
}

bool all_within(const std::vector<double>& values, double target, double tol) {
  for (double v : values)
    if (std::abs(v - target) > tol) return false;
  return !values.empty();
}

bool non_increasing(const std::vector<double>& values, double tol) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1] + tol) return false;
  return !values.empty();
}

double max_of(const std::vector<double>& values) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  return m;
}

double min_of(const std::vector<double>& values) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values) m = std::min(m, v);
  return m;
}

// --------------------------------------------------------- random instances

DiscreteMeasure random_measure(Rng& rng, GridPtr grid) {
  std::vector<double> w(grid->size());
  double total = 0.0;
  for (double& v : w) {
    v = rng.uniform01() + 1e-9;
    total += v;
  }
  for (double& v : w) v /= total;
  return DiscreteMeasure(std::move(grid), std::move(w));
}

Matrix random_row_stochastic(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rng.uniform01() + 1e-9;
      total += m(i, j);
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) /= total;
  }
  return m;
}

CostSpec random_cost(Rng& rng, GridPtr x_grid, GridPtr u_grid) {
  Matrix v(x_grid->size(), u_grid->size());
  for (double& c : v.data()) c = rng.uniform01();
  return CostSpec(std::move(x_grid), std::move(u_grid), std::move(v));
}

// ------------------------------------------------------------- row builders

using Rows = std::vector<std::vector<double>>;

struct Table {
  std::vector<std::string> columns;
  Rows rows;
};

Table run_weak_counterexample(const Params& p) {
  const double a = p.get_double("a", 0.0);
  const double b = p.get_double("b", 1.0);
  const auto n_values = to_int_vector(p.get_list("n_values", {1, 2, 4, 8, 16, 32, 64}), "n_values");
  VanishingShiftSetup setup = make_vanishing_shift_setup(a, b, n_values);

  const double j_limit = optimal_policy(setup.P, setup.limit, setup.cost).cost;
  const auto report =
      convergence_report(setup.P, setup.seq, setup.limit, n_values,
                         TestSetFamily::singletons_and_full(setup.y_grid->size()));

  Table t;
  t.columns = {"n", "j_n", "j_limit", "tv", "setwise", "weak", "uniform"};
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const double j_n = optimal_policy(setup.P, setup.seq.at(n_values[i]), setup.cost).cost;
    t.rows.push_back({static_cast<double>(n_values[i]), j_n, j_limit, report[i].tv,
                      report[i].setwise, report[i].weak, report[i].uniform});
  }
  return t;
}

std::vector<CheckResult> check_weak_counterexample(const Params& p, const Table& t) {
  const double a = p.get_double("a", 0.0);
  const double b = p.get_double("b", 1.0);
  const auto n = column_values(t.columns, t.rows, "n");
  const auto j_n = column_values(t.columns, t.rows, "j_n");
  const auto j_limit = column_values(t.columns, t.rows, "j_limit");
  const auto tv = column_values(t.columns, t.rows, "tv");
  const auto weak = column_values(t.columns, t.rows, "weak");

  bool weak_rate = !t.rows.empty();
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double expected = 0.5 * std::min(2.0, 1.0 / n[i]);
    weak_rate = weak_rate && std::abs(weak[i] - expected) <= 1e-9;
  }
  const double target = (b - a) * (b - a) / 4.0;
  return {
      {"j_n_zero", all_within(j_n, 0.0, 1e-12)},
      {"j_limit_exact", all_within(j_limit, target, 1e-12)},
      {"usc_inequality", !t.rows.empty() && max_of(j_n) <= min_of(j_limit) + 1e-9},
      {"discontinuity", !t.rows.empty() && min_of(j_limit) - max_of(j_n) >= 1e-3},
      {"tv_saturates", all_within(tv, 1.0, 1e-12)},
      {"weak_vanishes", weak_rate},
  };
}

Table run_setwise_counterexample(const Params& p) {
  const std::size_t K = static_cast<std::size_t>(p.get_int("K", 32));
  const int headline = static_cast<int>(p.get_int("n", 8));
  auto n_values = to_int_vector(p.get_list("n_values", {1, 2, 4, 8}), "n_values");
  if (std::find(n_values.begin(), n_values.end(), headline) == n_values.end())
    n_values.push_back(headline);
  std::sort(n_values.begin(), n_values.end());
  const unsigned depth = static_cast<unsigned>(p.get_int("dyadic_depth", 3));
  for (int n : n_values)
    if (K % (2 * static_cast<std::size_t>(n)) != 0)
      throw ConfigError("K must be a multiple of 2n for every requested n");
  if (K % (std::size_t{1} << depth) != 0)
    throw ConfigError("K must be a multiple of 2^dyadic_depth");

  SquareWaveSetup setup = make_square_wave_setup(K);
  const double j_limit = optimal_policy(setup.P, setup.limit, setup.cost).cost;
  const auto report = convergence_report(setup.P, setup.seq, setup.limit, n_values,
                                         TestSetFamily::dyadic_intervals(*setup.y_grid, depth));

  Table t;
  t.columns = {"n", "j_n", "j_limit", "tv", "setwise", "weak", "uniform"};
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const double j_n = optimal_policy(setup.P, setup.seq.at(n_values[i]), setup.cost).cost;
    t.rows.push_back({static_cast<double>(n_values[i]), j_n, j_limit, report[i].tv,
                      report[i].setwise, report[i].weak, report[i].uniform});
  }
  return t;
}

std::vector<CheckResult> check_setwise_counterexample(const Params&, const Table& t) {
  const auto j_n = column_values(t.columns, t.rows, "j_n");
  const auto j_limit = column_values(t.columns, t.rows, "j_limit");
  const auto tv = column_values(t.columns, t.rows, "tv");
  const auto setwise = column_values(t.columns, t.rows, "setwise");
  return {
      {"j_n_exact", all_within(j_n, 1.0 / 6.0, 1e-12)},
      {"j_limit_exact", all_within(j_limit, 0.25, 1e-12)},
      {"usc_inequality", !t.rows.empty() && max_of(j_n) <= min_of(j_limit) + 1e-9},
      {"discontinuity", !t.rows.empty() && min_of(j_limit) - max_of(j_n) >= 1e-3},
      {"tv_half", all_within(tv, 0.5, 1e-12)},
      {"setwise_vanishes",
       non_increasing(setwise, 1e-12) && !setwise.empty() && setwise.back() <= 1e-12},
  };
}

Table run_quantizer_setwise_limit(const Params& p) {
  const std::size_t K = static_cast<std::size_t>(p.get_int("K", 16));
  const auto n_values = to_int_vector(p.get_list("n_values", {1, 2, 4, 8}), "n_values");
  const unsigned depth = static_cast<unsigned>(p.get_int("dyadic_depth", 3));
  const bool exhaustive = p.get_int("exhaustive", 1) != 0;
  for (int n : n_values)
    if (K % (2 * static_cast<std::size_t>(n)) != 0)
      throw ConfigError("K must be a multiple of 2n for every requested n");
  if (K % (std::size_t{1} << depth) != 0)
    throw ConfigError("K must be a multiple of 2^dyadic_depth");
  if (exhaustive && K > 20)
    throw ConfigError("exhaustive certification is guarded to K <= 20 cells");

  const GridPtr xg = Grid::uniform_cells(0.0, 1.0, K);
  const DiscreteMeasure P = DiscreteMeasure::uniform(xg);
  const TestSetFamily family = TestSetFamily::dyadic_intervals(*xg, depth);
  Matrix half(K, 2, 0.5);  // the setwise limit: fair randomization over 2 cells

  // Exhaust every 2-cell deterministic quantizer: none gets setwise-close to
  // the randomized limit, so the limit leaves the deterministic class.
  double det_floor = std::numeric_limits<double>::quiet_NaN();
  if (exhaustive) {
    det_floor = std::numeric_limits<double>::infinity();
    Quantizer q;
    q.cell_count = 2;
    q.cell_of.assign(K, 0);
    const std::size_t masks = std::size_t{1} << K;
    for (std::size_t mask = 0; mask < masks; ++mask) {
      for (std::size_t x = 0; x < K; ++x) q.cell_of[x] = (mask >> x) & 1;
      det_floor = std::min(det_floor, quantizer_setwise_gap_exact(P, kernel_of(q), half));
    }
  }

  Table t;
  t.columns = {"n", "setwise_gap", "tv_joint", "det_floor"};
  const Channel limit_channel = as_channel(RandomQuantizer(half), xg);
  const JointMeasure j_limit = join(P, limit_channel);
  for (int n : n_values) {
    const Quantizer qn = alternating_quantizer(n, K);
    const double gap = quantizer_setwise_gap(P, kernel_of(qn), half, family);
    const JointMeasure jn = join(P, as_channel(qn, xg));
    double tv = 0.0;
    for (std::size_t i = 0; i < jn.mass().data().size(); ++i)
      tv += std::abs(jn.mass().data()[i] - j_limit.mass().data()[i]);
    t.rows.push_back({static_cast<double>(n), gap, tv, det_floor});
  }
  return t;
}

std::vector<CheckResult> check_quantizer_setwise_limit(const Params&, const Table& t) {
  const auto gap = column_values(t.columns, t.rows, "setwise_gap");
  const auto tv = column_values(t.columns, t.rows, "tv_joint");
  const auto floor_col = column_values(t.columns, t.rows, "det_floor");
  const bool floor_known = !floor_col.empty() && !std::isnan(floor_col.front());
  return {
      {"gap_vanishes", non_increasing(gap, 1e-12) && !gap.empty() && gap.back() <= 1e-12},
      {"tv_stays_saturated", all_within(tv, 1.0, 1e-12)},
      {"deterministic_floor", floor_known && min_of(floor_col) >= 0.25 - 1e-12},
  };
}

Table run_tv_continuity_sweep(const Params& p) {
  const std::size_t count = static_cast<std::size_t>(p.get_int("count", 1000));
  const std::size_t nx = static_cast<std::size_t>(p.get_int("nx", 8));
  const std::size_t ny = static_cast<std::size_t>(p.get_int("ny", 8));
  const std::size_t nu = static_cast<std::size_t>(p.get_int("nu", 8));
  Rng rng(static_cast<std::uint64_t>(p.get_int("seed", 1)));

  const GridPtr xg = Grid::categories(nx);
  const GridPtr yg = Grid::categories(ny);
  const GridPtr ug = Grid::categories(nu);

  Table t;
  t.columns = {"instance", "lhs", "rhs", "holds"};
  for (std::size_t i = 0; i < count; ++i) {
    const DiscreteMeasure P = random_measure(rng, xg);
    const Channel Q1(xg, yg, random_row_stochastic(rng, nx, ny));
    const Channel Q2(xg, yg, random_row_stochastic(rng, nx, ny));
    const CostSpec cost = random_cost(rng, xg, ug);
    const ContinuityBound cb = continuity_bound_check(P, Q1, Q2, cost);
    t.rows.push_back({static_cast<double>(i), cb.lhs, cb.rhs, cb.holds ? 1.0 : 0.0});
  }
  return t;
}

std::vector<CheckResult> check_tv_continuity_sweep(const Params&, const Table& t) {
  const auto lhs = column_values(t.columns, t.rows, "lhs");
  const auto rhs = column_values(t.columns, t.rows, "rhs");
  bool all = !t.rows.empty();
  for (std::size_t i = 0; i < lhs.size(); ++i) all = all && lhs[i] <= rhs[i] + 1e-9;
  return {{"bound_holds_everywhere", all}};
}

Table run_decomposition(const Params& p) {
  const std::size_t M = static_cast<std::size_t>(p.get_int("M", 4));
  const std::size_t nx = static_cast<std::size_t>(p.get_int("nx", 8));
  const std::size_t count = static_cast<std::size_t>(p.get_int("count", 3));
  const auto n_values = to_int_vector(p.get_list("n_values", {2, 4, 8, 16}), "n_values");
  Rng rng(static_cast<std::uint64_t>(p.get_int("seed", 1)));

  Table t;
  t.columns = {"kernel", "n", "sup_error", "bound", "components"};
  for (std::size_t k = 0; k < count; ++k) {
    const RandomQuantizer rq(random_row_stochastic(rng, nx, M));
    for (int n : n_values) {
      const FRQ frq = decompose_random_quantizer(rq, static_cast<std::size_t>(n));
      const RandomQuantizer back = recombine(frq);
      double err = 0.0;
      for (std::size_t i = 0; i < rq.kernel().data().size(); ++i)
        err = std::max(err, std::abs(rq.kernel().data()[i] - back.kernel().data()[i]));
      t.rows.push_back({static_cast<double>(k), static_cast<double>(n), err,
                        1.0 / static_cast<double>(n), static_cast<double>(frq.components.size())});
    }
  }
  return t;
}

std::vector<CheckResult> check_decomposition(const Params&, const Table& t) {
  const auto err = column_values(t.columns, t.rows, "sup_error");
  const auto bound = column_values(t.columns, t.rows, "bound");
  bool all = !t.rows.empty();
  for (std::size_t i = 0; i < err.size(); ++i) all = all && err[i] <= bound[i] + 1e-15;
  return {{"sup_error_within_1_over_n", all}};
}

// Enumeration over all non-decreasing cut tuples, sharing the cell-cost
// table with the dynamic program; left-associated sums match it bit for bit.
double enumerate_interval_cost(const CellCostTable& table, std::size_t M) {
  const std::size_t n = table.points();
  if (M == 1) return table.cost(0, n);
  std::vector<std::size_t> cuts(M - 1, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double total = table.cost(0, cuts[0]);
    for (std::size_t c = 1; c < M - 1; ++c) total += table.cost(cuts[c - 1], cuts[c]);
    total += table.cost(cuts[M - 2], n);
    best = std::min(best, total);
    // advance to the next non-decreasing tuple over [0, n]
    std::size_t k = M - 1;
    while (k > 0 && cuts[k - 1] == n) --k;
    if (k == 0) break;
    const std::size_t v = cuts[k - 1] + 1;
    for (std::size_t j = k - 1; j < M - 1; ++j) cuts[j] = v;
  }
  return best;
}

Table run_interval_quantizer(const Params& p) {
  const std::size_t nx = static_cast<std::size_t>(p.get_int("nx", 256));
  const std::size_t M = static_cast<std::size_t>(p.get_int("M", 2));
  const std::size_t count = static_cast<std::size_t>(p.get_int("count", 10));
  Rng rng(static_cast<std::uint64_t>(p.get_int("seed", 1)));

  Table t;
  t.columns = {"instance", "M", "cost", "oracle_cost", "diff", "threshold_first"};

  {
    // Uniform source over [0, 1], quadratic cost, action set holding the
    // exact half-cell means 1/4 and 3/4.
    const GridPtr xg = Grid::uniform_cells(0.0, 1.0, nx);
    std::vector<double> u_points;
    for (std::size_t k = 0; k <= nx; ++k)
      u_points.push_back(static_cast<double>(k) / static_cast<double>(nx));
    u_points.push_back(0.25);
    u_points.push_back(0.75);
    std::sort(u_points.begin(), u_points.end());
    u_points.erase(std::unique(u_points.begin(), u_points.end()), u_points.end());
    const GridPtr ug = Grid::atoms(u_points);
    const DiscreteMeasure P = DiscreteMeasure::uniform(xg);
    const CostSpec cost = CostSpec::quadratic(xg, ug);
    const IntervalOptResult opt = optimize_interval_quantizer(P, cost, M);
    const CellCostTable table(P, cost);
    const double oracle = enumerate_interval_cost(table, M);
    t.rows.push_back({0.0, static_cast<double>(M), opt.cost_value, oracle,
                      opt.cost_value - oracle,
                      opt.quantizer.thresholds.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                       : opt.quantizer.thresholds.front()});
  }

  for (std::size_t i = 1; i <= count; ++i) {
    const std::size_t xn = 8 + static_cast<std::size_t>(rng.uniform01() * 56.0);
    const std::size_t un = 4 + static_cast<std::size_t>(rng.uniform01() * 12.0);
    const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 2.99);
    const GridPtr xg = Grid::uniform_cells(0.0, 1.0, xn);
    const GridPtr ug = Grid::uniform_cells(0.0, 1.0, un);
    const DiscreteMeasure P = random_measure(rng, xg);
    const CostSpec cost = random_cost(rng, xg, ug);
    const IntervalOptResult opt = optimize_interval_quantizer(P, cost, m);
    const CellCostTable table(P, cost);
    const double oracle = enumerate_interval_cost(table, m);
    t.rows.push_back({static_cast<double>(i), static_cast<double>(m), opt.cost_value, oracle,
                      opt.cost_value - oracle,
                      opt.quantizer.thresholds.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                       : opt.quantizer.thresholds.front()});
  }
  return t;
}

std::vector<CheckResult> check_interval_quantizer(const Params& p, const Table& t) {
  const std::size_t nx = static_cast<std::size_t>(p.get_int("nx", 256));
  const auto diff = column_values(t.columns, t.rows, "diff");
  const auto cost = column_values(t.columns, t.rows, "cost");
  const auto thr = column_values(t.columns, t.rows, "threshold_first");
  const bool exact = all_within(diff, 0.0, 0.0);
  const bool headline_cost = !cost.empty() && std::abs(cost.front() - 1.0 / 48.0) <= 1e-3;
  const bool headline_thr =
      !thr.empty() && std::abs(thr.front() - 0.5) <= 1.0 / static_cast<double>(nx) + 1e-12;
  return {
      {"matches_enumeration_exactly", exact},
      {"uniform_cost_near_1_48", headline_cost},
      {"uniform_threshold_near_half", headline_thr},
  };
}

Table run_multistage_uniform_tv(const Params& p) {
  const int T = static_cast<int>(p.get_int("T", 2));
  const auto n_values = to_int_vector(p.get_list("n_values", {1, 2, 4, 8, 16}), "n_values");
  if (T < 1 || T > 3) throw ConfigError("T must be 1, 2, or 3 for the exact tree solver");

  const TwoStateSetup setup = make_two_state_setup(T);
  const auto rows = uniform_tv_continuity_experiment(setup.model, setup.seq, n_values);

  Table t;
  t.columns = {"n", "delta", "gap", "bound", "holds"};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<double>(r.n), r.delta, r.gap, r.bound, r.holds ? 1.0 : 0.0});
  return t;
}

std::vector<CheckResult> check_multistage_uniform_tv(const Params&, const Table& t) {
  const auto gap = column_values(t.columns, t.rows, "gap");
  const auto bound = column_values(t.columns, t.rows, "bound");
  bool all = !t.rows.empty();
  for (std::size_t i = 0; i < gap.size(); ++i) all = all && gap[i] <= bound[i] + 1e-9;
  const bool vanishes = !gap.empty() && non_increasing(gap, 1e-12) &&
                        gap.back() <= 0.5 * gap.front() + 1e-12;
  return {
      {"telescoped_bound_holds", all},
      {"gap_vanishes_with_delta", vanishes},
  };
}

Table run_estimation_consistency(const Params& p) {
  const std::size_t K = static_cast<std::size_t>(p.get_int("K", 32));
  const std::uint64_t seed = static_cast<std::uint64_t>(p.get_int("seed", 7));
  const auto sizes_i = p.get_list("sizes", {100, 1000, 10000});
  std::vector<std::size_t> sizes;
  for (std::int64_t s : sizes_i) {
    if (s < 1) throw ConfigError("sample sizes must be positive");
    sizes.push_back(static_cast<std::size_t>(s));
  }

  const SquareWaveSetup setup = make_square_wave_setup(K);
  const SingleStageTruth truth{setup.P, setup.limit, setup.cost};
  const auto rows = consistency_curve(truth, sizes, seed);

  Table t;
  t.columns = {"sample_size", "tv", "cost_gap", "bound", "holds"};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<double>(r.sample_size), r.tv, r.cost_gap, r.bound,
                      r.holds ? 1.0 : 0.0});
  return t;
}

std::vector<CheckResult> check_estimation_consistency(const Params&, const Table& t) {
  const auto gap = column_values(t.columns, t.rows, "cost_gap");
  const auto bound = column_values(t.columns, t.rows, "bound");
  bool all = !t.rows.empty();
  for (std::size_t i = 0; i < gap.size(); ++i) all = all && gap[i] <= bound[i] + 1e-9;
  return {
      {"tv_bound_holds_rowwise", all},
      {"cost_gaps_non_increasing", non_increasing(gap, 1e-12)},
  };
}

Table run_best_worst_channel(const Params&) {
  Table t;
  t.columns = {"experiment", "index", "cost"};

  {
    // Two-point source, identity versus totally uninformative observations.
    const GridPtr xg = Grid::atoms({0.0, 1.0});
    const GridPtr ug = Grid::atoms({0.0, 0.5, 1.0});
    const DiscreteMeasure P = DiscreteMeasure::uniform(xg);
    const CostSpec cost = CostSpec::quadratic(xg, ug);
    const std::vector<Channel> family{Channel::identity(xg),
                                      Channel::constant_row(xg, xg, {0.5, 0.5})};
    for (std::size_t i = 0; i < family.size(); ++i)
      t.rows.push_back({0.0, static_cast<double>(i), optimal_policy(P, family[i], cost).cost});
  }
  {
    // All two-cell quantizers of a four-point source; the action grid holds
    // every subset mean so cell optima are exact.
    const std::vector<double> pts{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    const GridPtr xg = Grid::atoms(pts);
    const GridPtr ug = subset_mean_grid(pts);
    const DiscreteMeasure P = DiscreteMeasure::uniform(xg);
    const CostSpec cost = CostSpec::quadratic(xg, ug);
    for (std::size_t mask = 0; mask < 16; ++mask) {
      Quantizer q;
      q.cell_count = 2;
      q.cell_of = {(mask >> 0) & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
      t.rows.push_back({1.0, static_cast<double>(mask),
                        optimal_policy(P, as_channel(q, xg), cost).cost});
    }
  }
  return t;
}

std::vector<CheckResult> check_best_worst_channel(const Params&, const Table& t) {
  std::vector<double> pair_costs, quant_costs;
  const std::size_t exp_idx = column_index(t.columns, "experiment");
  const std::size_t cost_idx = column_index(t.columns, "cost");
  for (const auto& row : t.rows)
    (row[exp_idx] == 0.0 ? pair_costs : quant_costs).push_back(row[cost_idx]);
  const bool have = !pair_costs.empty() && !quant_costs.empty();
  return {
      {"identity_is_free", have && std::abs(min_of(pair_costs)) <= 1e-12},
      {"uninformative_costs_variance", have && std::abs(max_of(pair_costs) - 0.25) <= 1e-12},
      {"best_split_cost", have && std::abs(min_of(quant_costs) - 1.0 / 36.0) <= 1e-12},
      {"worst_lump_cost", have && std::abs(max_of(quant_costs) - 5.0 / 36.0) <= 1e-12},
  };
}

// ------------------------------------------------------------------ registry

struct ScenarioDef {
  ScenarioInfo info;
  std::function<Table(const Params&)> run;
  std::function<std::vector<CheckResult>(const Params&, const Table&)> check;
};

const std::vector<ScenarioDef>& registry() {
  static const std::vector<ScenarioDef> defs = [] {
    std::vector<ScenarioDef> v;
    v.push_back({{"best-worst-channel",
                  "extreme channels of explicit finite families under quadratic cost",
                  {},
                  "existence of best/worst channels over a compact family"},
                 run_best_worst_channel,
                 check_best_worst_channel});
    v.push_back({{"decomposition",
                  "random kernels into cells split into n equal-weight deterministic quantizers",
                  {"M", "nx", "n_values", "count", "seed"},
                  "finitely randomized quantizers approximate within 2/n"},
                 run_decomposition,
                 check_decomposition});
    v.push_back({{"estimation-consistency",
                  "empirical channel estimates drive the optimal cost to the truth",
                  {"K", "sizes", "seed"},
                  "consistency of empirical risk minimization"},
                 run_estimation_consistency,
                 check_estimation_consistency});
    v.push_back({{"interval-quantizer",
                  "optimal convex-cell quantizer search against exhaustive enumeration",
                  {"nx", "M", "count", "seed"},
                  "existence of optimal quantizers with convex cells"},
                 run_interval_quantizer,
                 check_interval_quantizer});
    v.push_back({{"multistage-uniform-tv",
                  "finite-horizon cost continuity under uniform TV channel perturbations",
                  {"T", "n_values"},
                  "multi-stage continuity under uniform total variation"},
                 run_multistage_uniform_tv,
                 check_multistage_uniform_tv});
    v.push_back({{"quantizer-setwise-limit",
                  "deterministic quantizers converging setwise to a randomized kernel",
                  {"K", "n_values", "dyadic_depth", "exhaustive"},
                  "non-closedness of deterministic quantizers under setwise limits"},
                 run_quantizer_setwise_limit,
                 check_quantizer_setwise_limit});
    v.push_back({{"setwise-counterexample",
                  "square-wave observations: setwise convergence without cost convergence",
                  {"n", "K", "n_values", "dyadic_depth"},
                  "optimal cost discontinuity under setwise convergence"},
                 run_setwise_counterexample,
                 check_setwise_counterexample});
    v.push_back({{"tv-continuity-sweep",
                  "randomized check of |J(P,Q1) - J(P,Q2)| <= ||c|| * ||PQ1 - PQ2||_TV",
                  {"count", "nx", "ny", "nu", "seed"},
                  "Lipschitz continuity of the optimal cost in total variation"},
                 run_tv_continuity_sweep,
                 check_tv_continuity_sweep});
    v.push_back({{"weak-counterexample",
                  "vanishing-shift observations: weak convergence without cost convergence",
                  {"a", "b", "n_values"},
                  "optimal cost discontinuity under weak convergence"},
                 run_weak_counterexample,
                 check_weak_counterexample});
    return v;
  }();
  return defs;
}

const ScenarioDef& find_scenario(const std::string& name) {
  for (const auto& def : registry())
    if (def.info.name == name) return def;
  throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  out.reserve(registry().size());
  for (const auto& def : registry()) out.push_back(def.info);
  return out;  // registry is kept sorted by name
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  const ScenarioDef& def = find_scenario(config.name);
  const Params params(config, def.info.keys);
  const auto start = std::chrono::steady_clock::now();

  Table table = def.run(params);
  ScenarioResult result;
  result.scenario = config.name;
  result.columns = std::move(table.columns);
  result.rows = std::move(table.rows);
  result.checks = def.check(params, Table{result.columns, result.rows});
  result.pass = true;
  for (const auto& c : result.checks) result.pass = result.pass && c.pass;

  const auto stop = std::chrono::steady_clock::now();
  result.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

std::vector<CheckResult> evaluate_scenario_checks(const ScenarioConfig& config,
                                                  const std::vector<std::string>& columns,
                                                  const std::vector<std::vector<double>>& rows) {
  const ScenarioDef& def = find_scenario(config.name);
  const Params params(config, def.info.keys);
  return def.check(params, Table{columns, rows});
}

}  // namespace chanopt
