#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chanopt/grid.hpp"
#include "chanopt/matrix.hpp"
#include "chanopt/measure.hpp"

namespace chanopt {

/// Stochastic kernel from an x-grid to a y-grid: one row per x-point, each
/// row a probability vector over y-points (nonnegative, sums to 1 within
/// kWeightTol).  Deterministic kernels use the same dense representation.
class Channel {
public:
  Channel(GridPtr x_grid, GridPtr y_grid, Matrix kernel);

  /// Perfect observation: y-grid equals the x-grid, identity kernel.
  static Channel identity(GridPtr grid);
  /// Totally uninformative: every row is the same distribution `row`.
  static Channel constant_row(GridPtr x_grid, GridPtr y_grid, std::vector<double> row);
  /// Every row uniform over the y-grid.
  static Channel uniform(GridPtr x_grid, GridPtr y_grid);

  const GridPtr& x_grid() const { return x_grid_; }
  const GridPtr& y_grid() const { return y_grid_; }
  const Matrix& kernel() const { return kernel_; }

private:
  GridPtr x_grid_;
  GridPtr y_grid_;
  Matrix kernel_;
};

/// Joint distribution PQ on the product of an x-grid and a y-grid.
/// mass(x, y) = P(x) * Q(y|x); total mass 1, x-marginal equal to P.
class JointMeasure {
public:
  JointMeasure(GridPtr x_grid, GridPtr y_grid, Matrix mass);

  const GridPtr& x_grid() const { return x_grid_; }
  const GridPtr& y_grid() const { return y_grid_; }
  const Matrix& mass() const { return mass_; }

  std::vector<double> x_marginal() const;
  std::vector<double> y_marginal() const;

  /// Flatten to a measure on a product grid (x-major).  Pass a shared
  /// product grid to keep flattened joints comparable.
  DiscreteMeasure flatten(GridPtr product_grid) const;
  GridPtr make_product_grid() const;

private:
  GridPtr x_grid_;
  GridPtr y_grid_;
  Matrix mass_;
};

/// Lazily generated channel sequence {Q_n}; all generated channels share the
/// x- and y-grids, and n may range into the thousands without storage.
struct ChannelSequence {
  std::function<Channel(int)> at;
  std::string description;
};

/// Joint measure induced by input P and channel Q.
JointMeasure join(const DiscreteMeasure& P, const Channel& Q);

/// Posterior distributions over x per observation y.  Observations with zero
/// marginal mass yield std::nullopt (undefined, not fatal).
std::vector<std::optional<DiscreteMeasure>> conditional_x_given_y(const JointMeasure& J);

/// sup over x of the row total variation distance between two channels.
double uniform_tv(const Channel& a, const Channel& b);

/// True iff join(P, Q).mass <= nu entrywise within kWeightTol.  On a finite
/// grid set masses are sums of cell masses, so entrywise domination is
/// equivalent to domination on every set.
bool majorization_check(const DiscreteMeasure& P, const Channel& Q, const Matrix& nu);

/// Convex combination of channels on shared grids.
Channel mixture(const std::vector<Channel>& channels, const std::vector<double>& weights);

/// One row of a channel-convergence diagnostic table.
struct ConvergenceRow {
  int n;
  double tv;       // ||PQ_n - PQ||_TV
  double setwise;  // gap over {A x B : A in x-singletons+full, B in y_family}
  double weak;     // bounded-Lipschitz distance between the joints
  double uniform;  // sup_x row TV between Q_n and Q
};

/// Evaluate the four convergence diagnostics of PQ_n against PQ for each n.
/// `y_family` is a test-set family on the y-grid; the x-axis contributes
/// singletons and the full space to the product family.
std::vector<ConvergenceRow> convergence_report(const DiscreteMeasure& P, const ChannelSequence& seq,
                                               const Channel& limit, const std::vector<int>& n_values,
                                               const TestSetFamily& y_family);

}  // namespace chanopt
