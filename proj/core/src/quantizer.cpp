#include "chanopt/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace chanopt {

namespace {
void validate_quantizer(const Quantizer& q) {
  if (q.cell_count == 0) throw std::invalid_argument("quantizer needs at least one cell");
  for (std::size_t c : q.cell_of)
    if (c >= q.cell_count) throw std::invalid_argument("quantizer cell index out of range");
}
}  // namespace

RandomQuantizer::RandomQuantizer(Matrix kernel) : kernel_(std::move(kernel)) {
  if (kernel_.rows() == 0 || kernel_.cols() == 0)
    throw std::invalid_argument("random quantizer kernel must be non-empty");
  for (std::size_t i = 0; i < kernel_.rows(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < kernel_.cols(); ++j) {
      if (kernel_(i, j) < 0.0)
        throw std::invalid_argument("random quantizer entries must be nonnegative");
      total += kernel_(i, j);
    }
    if (std::abs(total - 1.0) > kWeightTol)
      throw std::invalid_argument("random quantizer rows must sum to 1");
  }
}

Matrix kernel_of(const Quantizer& q) {
  validate_quantizer(q);
  Matrix k(q.cell_of.size(), q.cell_count, 0.0);
  for (std::size_t x = 0; x < q.cell_of.size(); ++x) k(x, q.cell_of[x]) = 1.0;
  return k;
}

Channel as_channel(const Quantizer& q, GridPtr x_grid) {
  if (x_grid->size() != q.cell_of.size())
    throw std::invalid_argument("quantizer does not cover the x-grid");
  return Channel(std::move(x_grid), Grid::categories(q.cell_count), kernel_of(q));
}

Channel as_channel(const RandomQuantizer& q, GridPtr x_grid) {
  if (x_grid->size() != q.points())
    throw std::invalid_argument("random quantizer does not cover the x-grid");
  return Channel(std::move(x_grid), Grid::categories(q.cells()), q.kernel());
}

Quantizer to_quantizer(const IntervalQuantizer& iq, const Grid& x_grid) {
  if (!x_grid.sorted_1d())
    throw std::invalid_argument("interval quantizer needs a sorted 1-D grid");
  for (std::size_t k = 1; k < iq.thresholds.size(); ++k)
    if (!(iq.thresholds[k - 1] < iq.thresholds[k]))
      throw std::invalid_argument("interval thresholds must be strictly sorted");
  Quantizer q;
  q.cell_count = iq.thresholds.size() + 1;
  q.cell_of.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid.coord(i);
    std::size_t c = 0;
    while (c < iq.thresholds.size() && x >= iq.thresholds[c]) ++c;
    q.cell_of[i] = c;
  }
  return q;
}

Quantizer policy_to_quantizer(const PolicyMap& policy, const CostSpec& cost) {
  const std::size_t cells = policy.action.size();
  if (cells == 0) throw std::invalid_argument("policy over cells must be non-empty");
  for (std::size_t u : policy.action)
    if (u >= cost.u_grid()->size()) throw std::invalid_argument("policy action out of range");
  Quantizer q;
  q.cell_count = cells;
  q.cell_of.resize(cost.x_grid()->size());
  for (std::size_t x = 0; x < q.cell_of.size(); ++x) {
    std::size_t best = 0;
    double best_cost = cost.values()(x, policy.action[0]);
    for (std::size_t i = 1; i < cells; ++i) {
      const double ci = cost.values()(x, policy.action[i]);
      if (ci < best_cost) {
        best_cost = ci;
        best = i;
      }
    }
    q.cell_of[x] = best;
  }
  return q;
}

FRQ decompose_random_quantizer(const RandomQuantizer& rq, std::size_t n) {
  if (n == 0) throw std::invalid_argument("decomposition needs n >= 1");
  const std::size_t nx = rq.points();
  const std::size_t M = rq.cells();

  // Largest-remainder rounding of each row onto counts summing to n.
  std::vector<std::vector<std::size_t>> units(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<std::size_t> counts(M);
    std::vector<double> rem(M);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < M; ++i) {
      const double target = static_cast<double>(n) * rq.kernel()(x, i);
      counts[i] = static_cast<std::size_t>(std::floor(target));
      rem[i] = target - static_cast<double>(counts[i]);
      assigned += counts[i];
    }
    std::vector<std::size_t> order(M);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t k = 0; assigned < n; ++k) {
      ++counts[order[k % M]];
      ++assigned;
    }
    // Lay the n units out in cell order; unit k of every row goes into the
    // k-th deterministic quantizer.
    units[x].reserve(n);
    for (std::size_t i = 0; i < M; ++i)
      units[x].insert(units[x].end(), counts[i], i);
  }

  FRQ out;
  out.components.reserve(n);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    Quantizer q;
    q.cell_count = M;
    q.cell_of.resize(nx);
    for (std::size_t x = 0; x < nx; ++x) q.cell_of[x] = units[x][k];
    out.components.push_back({w, std::move(q)});
  }
  return out;
}

RandomQuantizer recombine(const FRQ& frq) {
  if (frq.components.empty()) throw std::invalid_argument("empty finitely randomized quantizer");
  const std::size_t nx = frq.components.front().quantizer.cell_of.size();
  const std::size_t M = frq.components.front().quantizer.cell_count;
  double total = 0.0;
  Matrix k(nx, M, 0.0);
  for (const auto& comp : frq.components) {
    if (comp.quantizer.cell_of.size() != nx || comp.quantizer.cell_count != M)
      throw std::invalid_argument("components must share point and cell counts");
    if (comp.weight < 0.0) throw std::invalid_argument("component weights must be nonnegative");
    total += comp.weight;
    for (std::size_t x = 0; x < nx; ++x) k(x, comp.quantizer.cell_of[x]) += comp.weight;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw std::invalid_argument("component weights must sum to 1");
  return RandomQuantizer(std::move(k));
}

SetwiseTvBound setwise_to_tv_bound(const DiscreteMeasure& P, const Quantizer& qn,
                                   const Quantizer& q) {
  validate_quantizer(qn);
  validate_quantizer(q);
  if (qn.cell_count != q.cell_count) throw std::invalid_argument("cell count mismatch");
  if (qn.cell_of.size() != P.size() || q.cell_of.size() != P.size())
    throw std::invalid_argument("quantizers must cover the measure grid");

  SetwiseTvBound out;
  const Channel cn = as_channel(qn, P.grid());
  const Channel cq = as_channel(q, P.grid());
  const JointMeasure jn = join(P, cn);
  const JointMeasure jq = join(P, cq);
  for (std::size_t i = 0; i < jn.mass().data().size(); ++i)
    out.tv += std::abs(jn.mass().data()[i] - jq.mass().data()[i]);

  for (std::size_t i = 0; i < q.cell_count; ++i) {
    double s = 0.0;
    for (std::size_t x = 0; x < P.size(); ++x) {
      const bool in_n = qn.cell_of[x] == i;
      const bool in_q = q.cell_of[x] == i;
      if (in_n != in_q) s += P.weight(x);
    }
    out.cell_sym_diff_sum += s;
  }
  out.holds = out.tv <= out.cell_sym_diff_sum + 1e-12;
  return out;
}

double quantizer_setwise_gap(const DiscreteMeasure& P, const Matrix& a, const Matrix& b,
                             const TestSetFamily& x_family) {
  if (!a.same_shape(b)) throw std::invalid_argument("kernel shape mismatch");
  if (a.rows() != P.size() || x_family.grid_size() != P.size())
    throw std::invalid_argument("kernels and family must cover the measure grid");
  double best = 0.0;
  for (const auto& set : x_family.sets()) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      double d = 0.0;
      for (std::size_t x : set) d += P.weight(x) * (a(x, i) - b(x, i));
      best = std::max(best, std::abs(d));
    }
  }
  return best;
}

double quantizer_setwise_gap_exact(const DiscreteMeasure& P, const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("kernel shape mismatch");
  if (a.rows() != P.size())
    throw std::invalid_argument("kernels must cover the measure grid");
  double best = 0.0;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t x = 0; x < a.rows(); ++x) {
      const double d = P.weight(x) * (a(x, i) - b(x, i));
      if (d > 0.0) pos += d;
      else neg -= d;
    }
    best = std::max({best, pos, neg});
  }
  return best;
}

CellCostTable::CellCostTable(const DiscreteMeasure& P, const CostSpec& cost) {
  if (!same_grid(P.grid(), cost.x_grid())) throw std::invalid_argument("incompatible grids");
  if (!P.grid()->sorted_1d())
    throw std::invalid_argument("interval costs need a sorted 1-D x-grid");
  n_ = P.size();
  nu_ = cost.u_grid()->size();
  prefix_.assign(nu_ * (n_ + 1), 0.0);
  for (std::size_t u = 0; u < nu_; ++u) {
    double acc = 0.0;
    double* row = prefix_.data() + u * (n_ + 1);
    row[0] = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      acc += P.weight(i) * cost.values()(i, u);
      row[i + 1] = acc;
    }
  }
}

double CellCostTable::cost(std::size_t l, std::size_t r) const {
  if (l > r || r > n_) throw std::invalid_argument("bad interval");
  if (l == r) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < nu_; ++u) {
    const double* row = prefix_.data() + u * (n_ + 1);
    best = std::min(best, row[r] - row[l]);
  }
  return best;
}

std::size_t CellCostTable::best_action(std::size_t l, std::size_t r) const {
  if (l > r || r > n_) throw std::invalid_argument("bad interval");
  std::size_t best_u = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < nu_; ++u) {
    const double* row = prefix_.data() + u * (n_ + 1);
    const double v = row[r] - row[l];
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  return best_u;
}

IntervalOptResult optimize_interval_quantizer(const DiscreteMeasure& P, const CostSpec& cost,
                                              std::size_t M) {
  const std::size_t n = P.size();
  if (M == 0) throw std::invalid_argument("need at least one cell");
  if (M > n) throw std::invalid_argument("more cells than grid points");
  const Grid& xg = *P.grid();
  if (!xg.sorted_1d()) throw std::invalid_argument("x-grid must be sorted ascending");

  const CellCostTable table(P, cost);
  const double inf = std::numeric_limits<double>::infinity();

  // D[m][r]: best cost covering the first r points with m cells; ties keep
  // the smallest split point.
  std::vector<std::vector<double>> D(M + 1, std::vector<double>(n + 1, inf));
  std::vector<std::vector<std::size_t>> from(M + 1, std::vector<std::size_t>(n + 1, 0));
  D[0][0] = 0.0;
  for (std::size_t m = 1; m <= M; ++m) {
    for (std::size_t r = 0; r <= n; ++r) {
      for (std::size_t l = 0; l <= r; ++l) {
        if (D[m - 1][l] == inf) continue;
        const double v = D[m - 1][l] + table.cost(l, r);
        if (v < D[m][r]) {
          D[m][r] = v;
          from[m][r] = l;
        }
      }
    }
  }

  IntervalOptResult out;
  out.cost_value = D[M][n];

  // Recover the M-1 split points (may repeat when cells are empty).
  std::vector<std::size_t> raw(M - 1);
  {
    std::size_t r = n;
    for (std::size_t m = M; m > 1; --m) {
      r = from[m][r];
      raw[m - 2] = r;
    }
  }
  // Make the interior boundaries strictly increasing within [1, n-1]; moving
  // an empty cell's boundary splits a neighbour into sub-cells that keep its
  // action, which cannot increase the cost.
  std::vector<std::size_t> cuts(raw);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const std::size_t low = (k == 0) ? 1 : cuts[k - 1] + 1;
    cuts[k] = std::max(cuts[k], low);
  }
  for (std::size_t k = cuts.size(); k-- > 0;) {
    const std::size_t high = n - (cuts.size() - k);
    cuts[k] = std::min(cuts[k], high);
  }

  out.cuts = cuts;
  out.quantizer.thresholds.reserve(cuts.size());
  for (std::size_t c : cuts)
    out.quantizer.thresholds.push_back((xg.coord(c - 1) + xg.coord(c)) / 2.0);

  out.policy.action.resize(M);
  std::size_t start = 0;
  for (std::size_t cell = 0; cell < M; ++cell) {
    const std::size_t end = (cell < cuts.size()) ? cuts[cell] : n;
    out.policy.action[cell] = table.best_action(start, end);
    start = end;
  }
  return out;
}

}  // namespace chanopt
