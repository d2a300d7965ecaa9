#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chanopt/channel.hpp"
#include "chanopt/control.hpp"
#include "chanopt/grid.hpp"
#include "chanopt/measure.hpp"

namespace chanopt {

/// Seedable portable generator used everywhere samples are drawn.  The
/// mt19937_64 stream is pinned by the standard, and uniform/categorical
/// draws below avoid distribution classes, so identical seeds reproduce
/// identical tables on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Index sampled from a cumulative weight vector (need not end exactly at 1).
  std::size_t categorical_cdf(const std::vector<double>& cdf);

private:
  std::mt19937_64 engine_;
};

/// Observations used by the estimators; each entry is a point (dim 1) or an
/// (x, y) pair (dim 2).  The generating seed is recorded for reproducibility.
struct SampleSet {
  std::vector<std::vector<double>> values;
  std::uint64_t seed = 0;
};

/// Read samples from CSV: one value or one comma-separated pair per line.
SampleSet read_samples_csv(const std::string& path);
void write_samples_csv(const SampleSet& samples, const std::string& path);

/// Histogram estimate on a 1-D cell grid; masses are sample fractions.
struct HistogramDensity {
  GridPtr grid;
  std::vector<double> mass;
  std::size_t clipped = 0;  // samples clamped into the edge bins

  DiscreteMeasure as_measure() const { return DiscreteMeasure(grid, mass); }
};

/// Deterministic histogram of 1-D samples over a contiguous cell grid.
/// Out-of-range samples are clipped into the edge bins and counted.
HistogramDensity fit_histogram_density(const SampleSet& samples, GridPtr grid);

/// Channel of the additive observation model y = x + v: row x is the noise
/// mass shifted by x and re-binned onto the y-grid, boundary mass clamped to
/// the edge bins.  The y-grid must cover the shifted noise support.
Channel additive_channel(const HistogramDensity& noise, GridPtr x_grid, GridPtr y_grid);

/// Additive observation model bundling the noise estimate with its channel.
struct AdditiveNoiseModel {
  HistogramDensity noise;
  GridPtr x_grid;
  GridPtr y_grid;
  Channel channel;
};

AdditiveNoiseModel make_additive_noise_model(HistogramDensity noise, GridPtr x_grid,
                                             GridPtr y_grid);

/// Empirical occupation measure of (x, y) pairs on the product of two grids.
JointMeasure empirical_joint(const SampleSet& samples, GridPtr x_grid, GridPtr y_grid);

/// Draw n independent pairs from a joint law (cell centers as coordinates).
SampleSet draw_joint_samples(const JointMeasure& J, std::size_t n, std::uint64_t seed);

/// Row-normalized conditional of a joint measure; rows with no mass fall
/// back to the uniform distribution.
Channel estimate_channel_from_joint(const JointMeasure& J);

/// Ground truth of a single-stage problem for the consistency experiment.
struct SingleStageTruth {
  DiscreteMeasure P;
  Channel Q;
  CostSpec cost;
};

struct ConsistencyRow {
  std::size_t sample_size = 0;
  double tv = 0.0;        // ||P Qhat_n - P Q||_TV
  double cost_gap = 0.0;  // |J(P, Qhat_n) - J(P, Q)|
  double bound = 0.0;     // sup_norm * tv
  bool holds = false;     // cost_gap <= bound + 1e-9
};

/// For each sample size draw that many pairs from PQ (seed = base + row),
/// estimate the channel from the empirical joint, and compare both the joint
/// law and the optimal cost against the truth.
std::vector<ConsistencyRow> consistency_curve(const SingleStageTruth& truth,
                                              const std::vector<std::size_t>& sample_sizes,
                                              std::uint64_t seed);

/// Largest integral difference over a finite net of Lipschitz policies:
/// piecewise-linear maps with knots at the y-grid points, values on a u-grid
/// sub-net of spacing `net_resolution`, and slope at most `lipschitz_bound`.
/// A lower bound on the true sup, converging to it as the net refines.
double lipschitz_uniform_gap(const JointMeasure& mu, const JointMeasure& nu, const CostSpec& cost,
                             double lipschitz_bound, double net_resolution);

}  // namespace chanopt
