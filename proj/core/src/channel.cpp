#include "chanopt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chanopt {

namespace {
void validate_rows(const Matrix& kernel) {
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < kernel.cols(); ++j) {
      const double v = kernel(i, j);
      if (v < 0.0) throw std::invalid_argument("kernel entries must be nonnegative");
      total += v;
    }
    if (std::abs(total - 1.0) > kWeightTol)
      throw std::invalid_argument("kernel rows must sum to 1 within 1e-12");
  }
}
}  // namespace

Channel::Channel(GridPtr x_grid, GridPtr y_grid, Matrix kernel)
    : x_grid_(std::move(x_grid)), y_grid_(std::move(y_grid)), kernel_(std::move(kernel)) {
  if (!x_grid_ || !y_grid_) throw std::invalid_argument("channel requires both grids");
  if (kernel_.rows() != x_grid_->size() || kernel_.cols() != y_grid_->size())
    throw std::invalid_argument("kernel shape must match the grids");
  validate_rows(kernel_);
}

Channel Channel::identity(GridPtr grid) {
  Matrix k(grid->size(), grid->size(), 0.0);
  for (std::size_t i = 0; i < grid->size(); ++i) k(i, i) = 1.0;
  return Channel(grid, grid, std::move(k));
}

Channel Channel::constant_row(GridPtr x_grid, GridPtr y_grid, std::vector<double> row) {
  if (row.size() != y_grid->size())
    throw std::invalid_argument("constant row must match the y-grid");
  Matrix k(x_grid->size(), y_grid->size());
  for (std::size_t i = 0; i < x_grid->size(); ++i)
    for (std::size_t j = 0; j < y_grid->size(); ++j) k(i, j) = row[j];
  return Channel(std::move(x_grid), std::move(y_grid), std::move(k));
}

Channel Channel::uniform(GridPtr x_grid, GridPtr y_grid) {
  const std::size_t ny = y_grid->size();
  std::vector<double> row(ny, 1.0 / static_cast<double>(ny));
  return constant_row(std::move(x_grid), std::move(y_grid), std::move(row));
}

JointMeasure::JointMeasure(GridPtr x_grid, GridPtr y_grid, Matrix mass)
    : x_grid_(std::move(x_grid)), y_grid_(std::move(y_grid)), mass_(std::move(mass)) {
  if (mass_.rows() != x_grid_->size() || mass_.cols() != y_grid_->size())
    throw std::invalid_argument("joint mass shape must match the grids");
  double total = 0.0;
  for (double v : mass_.data()) {
    if (v < 0.0) throw std::invalid_argument("joint mass must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw std::invalid_argument("joint mass must sum to 1 within 1e-12");
}

std::vector<double> JointMeasure::x_marginal() const {
  std::vector<double> m(mass_.rows(), 0.0);
  for (std::size_t i = 0; i < mass_.rows(); ++i)
    for (std::size_t j = 0; j < mass_.cols(); ++j) m[i] += mass_(i, j);
  return m;
}

std::vector<double> JointMeasure::y_marginal() const {
  std::vector<double> m(mass_.cols(), 0.0);
  for (std::size_t i = 0; i < mass_.rows(); ++i)
    for (std::size_t j = 0; j < mass_.cols(); ++j) m[j] += mass_(i, j);
  return m;
}

DiscreteMeasure JointMeasure::flatten(GridPtr product_grid) const {
  return DiscreteMeasure(std::move(product_grid), mass_.data());
}

GridPtr JointMeasure::make_product_grid() const {
  return Grid::product(*x_grid_, *y_grid_);
}

JointMeasure join(const DiscreteMeasure& P, const Channel& Q) {
  if (!same_grid(P.grid(), Q.x_grid())) throw std::invalid_argument("incompatible grids");
  Matrix mass(Q.kernel().rows(), Q.kernel().cols());
  for (std::size_t i = 0; i < mass.rows(); ++i)
    for (std::size_t j = 0; j < mass.cols(); ++j) mass(i, j) = P.weight(i) * Q.kernel()(i, j);
  return JointMeasure(Q.x_grid(), Q.y_grid(), std::move(mass));
}

std::vector<std::optional<DiscreteMeasure>> conditional_x_given_y(const JointMeasure& J) {
  const auto marg = J.y_marginal();
  std::vector<std::optional<DiscreteMeasure>> posteriors(marg.size());
  for (std::size_t j = 0; j < marg.size(); ++j) {
    if (marg[j] <= 0.0) continue;  // undefined off the support of PY
    std::vector<double> w(J.mass().rows());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = J.mass()(i, j) / marg[j];
    // guard against rounding pushing the sum outside the constructor tolerance
    double total = 0.0;
    for (double v : w) total += v;
    if (std::abs(total - 1.0) > kWeightTol / 2)
      for (double& v : w) v /= total;
    posteriors[j] = DiscreteMeasure(J.x_grid(), std::move(w));
  }
  return posteriors;
}

double uniform_tv(const Channel& a, const Channel& b) {
  if (!same_grid(a.x_grid(), b.x_grid()) || !same_grid(a.y_grid(), b.y_grid()))
    throw std::invalid_argument("incompatible grids");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.kernel().rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.kernel().cols(); ++j)
      row += std::abs(a.kernel()(i, j) - b.kernel()(i, j));
    worst = std::max(worst, row);
  }
  return worst;
}

bool majorization_check(const DiscreteMeasure& P, const Channel& Q, const Matrix& nu) {
  const JointMeasure J = join(P, Q);
  if (!nu.same_shape(J.mass())) throw std::invalid_argument("majorant shape mismatch");
  for (std::size_t i = 0; i < nu.rows(); ++i)
    for (std::size_t j = 0; j < nu.cols(); ++j)
      if (J.mass()(i, j) > nu(i, j) + kWeightTol) return false;
  return true;
}

Channel mixture(const std::vector<Channel>& channels, const std::vector<double>& weights) {
  if (channels.empty()) throw std::invalid_argument("mixture of an empty channel list");
  if (weights.size() != channels.size())
    throw std::invalid_argument("mixture needs one weight per channel");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw std::invalid_argument("mixture weights must sum to 1");
  const auto& first = channels.front();
  for (const auto& ch : channels)
    if (!same_grid(ch.x_grid(), first.x_grid()) || !same_grid(ch.y_grid(), first.y_grid()))
      throw std::invalid_argument("incompatible grids");
  Matrix k(first.kernel().rows(), first.kernel().cols(), 0.0);
  for (std::size_t c = 0; c < channels.size(); ++c)
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (std::size_t j = 0; j < k.cols(); ++j) k(i, j) += weights[c] * channels[c].kernel()(i, j);
  return Channel(first.x_grid(), first.y_grid(), std::move(k));
}

std::vector<ConvergenceRow> convergence_report(const DiscreteMeasure& P, const ChannelSequence& seq,
                                               const Channel& limit, const std::vector<int>& n_values,
                                               const TestSetFamily& y_family) {
  if (!same_grid(P.grid(), limit.x_grid())) throw std::invalid_argument("incompatible grids");
  const std::size_t nx = limit.x_grid()->size();
  const std::size_t ny = limit.y_grid()->size();
  const TestSetFamily fam = TestSetFamily::product(
      TestSetFamily::singletons_and_full(nx), y_family, nx, ny);

  const JointMeasure J_limit = join(P, limit);
  const GridPtr product = J_limit.make_product_grid();
  const DiscreteMeasure flat_limit = J_limit.flatten(product);

  std::vector<ConvergenceRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    const Channel Qn = seq.at(n);
    if (!same_grid(Qn.x_grid(), limit.x_grid()) || !same_grid(Qn.y_grid(), limit.y_grid()))
      throw std::invalid_argument("incompatible grids");
    const JointMeasure Jn = join(P, Qn);
    const DiscreteMeasure flat_n = Jn.flatten(product);
    ConvergenceRow row;
    row.n = n;
    row.tv = tv_distance(flat_n, flat_limit);
    row.setwise = setwise_gap(flat_n, flat_limit, fam);
    row.weak = bl_distance(flat_n, flat_limit);
    row.uniform = uniform_tv(Qn, limit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace chanopt
