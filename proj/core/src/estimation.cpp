#include "chanopt/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "chanopt/errors.hpp"

namespace chanopt {

std::size_t Rng::categorical_cdf(const std::vector<double>& cdf) {
  if (cdf.empty()) throw std::invalid_argument("empty cumulative weights");
  const double u = uniform01() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
  return std::min(i, cdf.size() - 1);
}

SampleSet read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sample file: " + path);
  SampleSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    if (row.size() != 1 && row.size() != 2)
      throw std::invalid_argument("sample lines must hold one value or one pair");
    if (!out.values.empty() && out.values.front().size() != row.size())
      throw std::invalid_argument("mixed sample dimensions in file");
    out.values.push_back(std::move(row));
  }
  if (out.values.empty()) throw std::invalid_argument("empty sample file");
  return out;
}

void write_samples_csv(const SampleSet& samples, const std::string& path) {
  std::ofstream outf(path);
  if (!outf) throw std::invalid_argument("cannot open output file: " + path);
  char buf[64];
  for (const auto& row : samples.values) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      if (i) outf << ',';
      outf << buf;
    }
    outf << '\n';
  }
}

HistogramDensity fit_histogram_density(const SampleSet& samples, GridPtr grid) {
  if (samples.values.empty()) throw std::invalid_argument("empty sample set");
  if (!grid->contiguous_cells_1d())
    throw std::invalid_argument("histogram needs a contiguous sorted 1-D cell grid");
  HistogramDensity out;
  out.grid = grid;
  std::vector<std::size_t> counts(grid->size(), 0);
  const double lo = grid->lower_edge(0);
  const double hi = grid->upper_edge(grid->size() - 1);
  for (const auto& v : samples.values) {
    if (v.size() != 1) throw std::invalid_argument("histogram samples must be scalar");
    if (v[0] < lo || v[0] >= hi) ++out.clipped;
    ++counts[grid->locate_clamped(v[0])];
  }
  const double n = static_cast<double>(samples.values.size());
  out.mass.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.mass[i] = static_cast<double>(counts[i]) / n;
  return out;
}

Channel additive_channel(const HistogramDensity& noise, GridPtr x_grid, GridPtr y_grid) {
  if (x_grid->dim() != 1 || y_grid->dim() != 1)
    throw std::invalid_argument("additive channel needs 1-D grids");
  if (!y_grid->contiguous_cells_1d())
    throw std::invalid_argument("additive channel needs a contiguous y-grid");
  // Coverage: every shifted noise atom must land inside the y range, up to
  // half an edge bin of clamping slack.
  double shift_lo = std::numeric_limits<double>::infinity();
  double shift_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x_grid->size(); ++i) {
    shift_lo = std::min(shift_lo, x_grid->coord(i));
    shift_hi = std::max(shift_hi, x_grid->coord(i));
  }
  const std::size_t nb = noise.grid->size();
  const double noise_lo = noise.grid->coord(0);
  const double noise_hi = noise.grid->coord(nb - 1);
  const double y_lo = y_grid->lower_edge(0) - 0.5 * y_grid->cell_width(0);
  const double y_hi = y_grid->upper_edge(y_grid->size() - 1) + 0.5 * y_grid->cell_width(y_grid->size() - 1);
  if (shift_lo + noise_lo < y_lo - 1e-9 || shift_hi + noise_hi > y_hi + 1e-9)
    throw std::invalid_argument("y-grid does not cover the shifted noise support");

  Matrix kernel(x_grid->size(), y_grid->size(), 0.0);
  for (std::size_t i = 0; i < x_grid->size(); ++i) {
    const double x = x_grid->coord(i);
    for (std::size_t j = 0; j < nb; ++j) {
      if (noise.mass[j] == 0.0) continue;
      kernel(i, y_grid->locate_clamped(x + noise.grid->coord(j))) += noise.mass[j];
    }
    double total = 0.0;
    for (std::size_t y = 0; y < y_grid->size(); ++y) total += kernel(i, y);
    if (std::abs(total - 1.0) > kWeightTol / 2)
      for (std::size_t y = 0; y < y_grid->size(); ++y) kernel(i, y) /= total;
  }
  return Channel(std::move(x_grid), std::move(y_grid), std::move(kernel));
}

AdditiveNoiseModel make_additive_noise_model(HistogramDensity noise, GridPtr x_grid,
                                             GridPtr y_grid) {
  Channel ch = additive_channel(noise, x_grid, y_grid);
  return AdditiveNoiseModel{std::move(noise), x_grid, y_grid, std::move(ch)};
}

JointMeasure empirical_joint(const SampleSet& samples, GridPtr x_grid, GridPtr y_grid) {
  if (samples.values.empty()) throw std::invalid_argument("empty sample set");
  Matrix counts(x_grid->size(), y_grid->size(), 0.0);
  for (const auto& v : samples.values) {
    if (v.size() != 2) throw std::invalid_argument("joint samples must be pairs");
    counts(x_grid->locate_clamped(v[0]), y_grid->locate_clamped(v[1])) += 1.0;
  }
  const double n = static_cast<double>(samples.values.size());
  for (double& c : counts.data()) c /= n;
  return JointMeasure(std::move(x_grid), std::move(y_grid), std::move(counts));
}

SampleSet draw_joint_samples(const JointMeasure& J, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one sample");
  const std::size_t ny = J.y_grid()->size();
  std::vector<double> cdf(J.mass().data().size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += J.mass().data()[i];
    cdf[i] = acc;
  }
  Rng rng(seed);
  SampleSet out;
  out.seed = seed;
  out.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t cell = rng.categorical_cdf(cdf);
    const std::size_t xi = cell / ny;
    const std::size_t yi = cell % ny;
    out.values.push_back({J.x_grid()->coord(xi), J.y_grid()->coord(yi)});
  }
  return out;
}

Channel estimate_channel_from_joint(const JointMeasure& J) {
  const std::size_t nx = J.mass().rows();
  const std::size_t ny = J.mass().cols();
  Matrix kernel(nx, ny);
  for (std::size_t x = 0; x < nx; ++x) {
    double rowsum = 0.0;
    for (std::size_t y = 0; y < ny; ++y) rowsum += J.mass()(x, y);
    if (rowsum <= 0.0) {
      for (std::size_t y = 0; y < ny; ++y) kernel(x, y) = 1.0 / static_cast<double>(ny);
      continue;
    }
    double total = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      kernel(x, y) = J.mass()(x, y) / rowsum;
      total += kernel(x, y);
    }
    if (std::abs(total - 1.0) > kWeightTol / 2)
      for (std::size_t y = 0; y < ny; ++y) kernel(x, y) /= total;
  }
  return Channel(J.x_grid(), J.y_grid(), std::move(kernel));
}

std::vector<ConsistencyRow> consistency_curve(const SingleStageTruth& truth,
                                              const std::vector<std::size_t>& sample_sizes,
                                              std::uint64_t seed) {
  const JointMeasure PQ = join(truth.P, truth.Q);
  const double j_true = optimal_policy(truth.P, truth.Q, truth.cost).cost;

  std::vector<ConsistencyRow> rows;
  rows.reserve(sample_sizes.size());
  for (std::size_t idx = 0; idx < sample_sizes.size(); ++idx) {
    const std::size_t n = sample_sizes[idx];
    const SampleSet samples = draw_joint_samples(PQ, n, seed + idx);
    const JointMeasure emp = empirical_joint(samples, PQ.x_grid(), PQ.y_grid());
    const Channel estimated = estimate_channel_from_joint(emp);
    const JointMeasure PQhat = join(truth.P, estimated);

    ConsistencyRow row;
    row.sample_size = n;
    for (std::size_t i = 0; i < PQ.mass().data().size(); ++i)
      row.tv += std::abs(PQhat.mass().data()[i] - PQ.mass().data()[i]);
    row.cost_gap = std::abs(optimal_policy(truth.P, estimated, truth.cost).cost - j_true);
    row.bound = truth.cost.sup_norm() * row.tv;
    row.holds = row.cost_gap <= row.bound + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

double lipschitz_uniform_gap(const JointMeasure& mu, const JointMeasure& nu, const CostSpec& cost,
                             double lipschitz_bound, double net_resolution) {
  if (!same_grid(mu.x_grid(), nu.x_grid()) || !same_grid(mu.y_grid(), nu.y_grid()))
    throw std::invalid_argument("incompatible grids");
  if (!same_grid(mu.x_grid(), cost.x_grid()))
    throw std::invalid_argument("cost must live on the joint x-grid");
  if (!mu.y_grid()->sorted_1d() || !cost.u_grid()->sorted_1d())
    throw std::invalid_argument("cost is not certified Lipschitz: need sorted 1-D y- and u-grids");
  if (lipschitz_bound < 0.0) throw std::invalid_argument("negative Lipschitz bound");
  if (net_resolution < 0.0) throw std::invalid_argument("negative net resolution");

  const Grid& ug = *cost.u_grid();
  const Grid& yg = *mu.y_grid();
  const std::size_t nu_pts = ug.size();

  // Sub-net of u-grid indices anchored at index 0; halving the resolution
  // refines the net in place, keeping the gap monotone under refinement.
  std::size_t stride = 1;
  if (nu_pts > 1 && net_resolution > 0.0) {
    const double spacing = (ug.coord(nu_pts - 1) - ug.coord(0)) / static_cast<double>(nu_pts - 1);
    stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(net_resolution / spacing)));
  }
  std::vector<std::size_t> net;
  for (std::size_t u = 0; u < nu_pts; u += stride) net.push_back(u);

  const std::size_t nx = mu.mass().rows();
  const std::size_t ny = mu.mass().cols();
  // score[y][k]: contribution of choosing net action k at observation y.
  std::vector<std::vector<double>> score(ny, std::vector<double>(net.size(), 0.0));
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t k = 0; k < net.size(); ++k) {
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x)
        s += (mu.mass()(x, y) - nu.mass()(x, y)) * cost.values()(x, net[k]);
      score[y][k] = s;
    }

  // Chain maximization over policies with |du| <= L * dy between knots.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> hi(score[0]), lo(score[0]);
  for (std::size_t y = 1; y < ny; ++y) {
    const double reach = lipschitz_bound * (yg.coord(y) - yg.coord(y - 1)) + 1e-12;
    std::vector<double> nhi(net.size(), -inf), nlo(net.size(), inf);
    for (std::size_t k = 0; k < net.size(); ++k) {
      for (std::size_t k2 = 0; k2 < net.size(); ++k2) {
        if (std::abs(ug.coord(net[k]) - ug.coord(net[k2])) > reach) continue;
        nhi[k] = std::max(nhi[k], hi[k2] + score[y][k]);
        nlo[k] = std::min(nlo[k], lo[k2] + score[y][k]);
      }
    }
    hi = std::move(nhi);
    lo = std::move(nlo);
  }
  double best = 0.0;
  for (std::size_t k = 0; k < net.size(); ++k) {
    if (hi[k] > -inf) best = std::max(best, hi[k]);
    if (lo[k] < inf) best = std::max(best, -lo[k]);
  }
  return best;
}

}  // namespace chanopt
