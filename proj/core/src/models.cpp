#include "chanopt/models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace chanopt {

VanishingShiftSetup make_vanishing_shift_setup(double a, double b,
                                               const std::vector<int>& n_values) {
  if (!(a < b)) throw std::invalid_argument("need a < b");
  if (n_values.empty()) throw std::invalid_argument("need at least one n");
  for (int n : n_values) {
    if (n < 1) throw std::invalid_argument("n values must be positive");
    if (1.0 / static_cast<double>(n) > b - a)
      throw std::invalid_argument("n = " + std::to_string(n) +
                                  " is below 1/(b-a); the shifted atom would leave [a, b]");
  }

  std::set<double> y_points{a};
  std::map<int, double> shift;
  for (int n : n_values) {
    const double s = a + 1.0 / static_cast<double>(n);
    shift[n] = s;
    y_points.insert(s);
  }

  const GridPtr xg = Grid::atoms({a, b});
  const GridPtr yg = Grid::atoms(std::vector<double>(y_points.begin(), y_points.end()));
  const GridPtr ug = Grid::atoms({a, (a + b) / 2.0, b});

  std::map<double, std::size_t> y_index;
  for (std::size_t i = 0; i < yg->size(); ++i) y_index[yg->coord(i)] = i;
  const std::size_t idx_a = y_index.at(a);

  Matrix limit_kernel(2, yg->size(), 0.0);
  limit_kernel(0, idx_a) = 1.0;
  limit_kernel(1, idx_a) = 1.0;

  ChannelSequence seq;
  seq.description = "observations collapse onto a vanishing shift above a";
  auto shifts = std::make_shared<std::map<int, double>>(std::move(shift));
  auto index = std::make_shared<std::map<double, std::size_t>>(std::move(y_index));
  seq.at = [xg, yg, shifts, index, b, idx_a](int n) {
    const auto it = shifts->find(n);
    if (it == shifts->end())
      throw std::invalid_argument("sequence not declared for n = " + std::to_string(n));
    Matrix k(2, yg->size(), 0.0);
    // row a: a < a + 1/n always; row b: shifted once b >= a + 1/n
    k(0, idx_a) = 1.0;
    if (b >= it->second) k(1, index->at(it->second)) = 1.0;
    else k(1, idx_a) = 1.0;
    return Channel(xg, yg, std::move(k));
  };

  return VanishingShiftSetup{xg,
                             yg,
                             ug,
                             DiscreteMeasure(xg, {0.5, 0.5}),
                             CostSpec::quadratic(xg, ug),
                             Channel(xg, yg, std::move(limit_kernel)),
                             std::move(seq),
                             a,
                             b};
}

std::vector<double> square_wave_row(int n, std::size_t K) {
  if (n < 1) throw std::invalid_argument("square wave needs n >= 1");
  const std::size_t period = 2 * static_cast<std::size_t>(n);
  if (K % period != 0)
    throw std::invalid_argument("grid size K must be a multiple of 2n so cells align");
  const std::size_t block = K / period;
  std::vector<double> row(K, 0.0);
  const double mass = 2.0 / static_cast<double>(K);
  for (std::size_t j = 0; j < K; ++j)
    if ((j / block) % 2 == 0) row[j] = mass;
  return row;
}

Quantizer alternating_quantizer(int n, std::size_t K) {
  const std::size_t period = 2 * static_cast<std::size_t>(n);
  if (n < 1 || K % period != 0)
    throw std::invalid_argument("grid size K must be a multiple of 2n so cells align");
  const std::size_t block = K / period;
  Quantizer q;
  q.cell_count = 2;
  q.cell_of.resize(K);
  for (std::size_t j = 0; j < K; ++j) q.cell_of[j] = ((j / block) % 2 == 0) ? 0 : 1;
  return q;
}

SquareWaveSetup make_square_wave_setup(std::size_t K) {
  if (K == 0 || K % 2 != 0) throw std::invalid_argument("need an even K");
  const GridPtr xg = Grid::atoms({0.0, 1.0});
  const GridPtr yg = Grid::uniform_cells(0.0, 1.0, K);
  const GridPtr ug = Grid::atoms({0.0, 0.5, 2.0 / 3.0, 1.0});

  ChannelSequence seq;
  seq.description = "x = 1 emits a square-wave density, x = 0 stays uniform";
  seq.at = [xg, yg, K](int n) {
    Matrix k(2, K);
    const double uniform_mass = 1.0 / static_cast<double>(K);
    const std::vector<double> wave = square_wave_row(n, K);
    for (std::size_t j = 0; j < K; ++j) {
      k(0, j) = uniform_mass;
      k(1, j) = wave[j];
    }
    return Channel(xg, yg, std::move(k));
  };

  return SquareWaveSetup{xg,
                         yg,
                         ug,
                         DiscreteMeasure(xg, {0.5, 0.5}),
                         CostSpec::quadratic(xg, ug),
                         Channel::uniform(xg, yg),
                         std::move(seq),
                         K};
}

TwoStateSetup make_two_state_setup(int horizon) {
  const GridPtr xg = Grid::atoms({0.0, 1.0});
  const GridPtr ug = Grid::atoms({0.0, 1.0});
  const GridPtr yg = Grid::atoms({0.0, 1.0});

  std::vector<Matrix> transitions;
  transitions.push_back(Matrix::from_rows({{0.8, 0.2}, {0.3, 0.7}}));  // u = 0
  transitions.push_back(Matrix::from_rows({{0.2, 0.8}, {0.6, 0.4}}));  // u = 1
  ControlledKernel kernel(xg, ug, std::move(transitions));

  Channel noisy(xg, yg, Matrix::from_rows({{0.9, 0.1}, {0.2, 0.8}}));
  Channel flat = Channel::uniform(xg, yg);

  ChannelSequence seq;
  seq.description = "mixtures (1 - 1/n) Q + (1/n) uniform";
  seq.at = [noisy, flat](int n) {
    if (n < 1) throw std::invalid_argument("mixture sequence needs n >= 1");
    const double eps = 1.0 / static_cast<double>(n);
    return mixture({noisy, flat}, {1.0 - eps, eps});
  };

  return TwoStateSetup{MultistageModel{DiscreteMeasure(xg, {0.6, 0.4}), std::move(kernel), noisy,
                                       CostSpec::quadratic(xg, ug), horizon},
                       flat, std::move(seq)};
}

GridPtr subset_mean_grid(const std::vector<double>& points) {
  if (points.empty() || points.size() > 16)
    throw std::invalid_argument("subset means need 1..16 points");
  std::set<double> values;
  const std::size_t count = std::size_t{1} << points.size();
  for (std::size_t mask = 1; mask < count; ++mask) {
    double sum = 0.0;
    int bits = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (mask & (std::size_t{1} << i)) {
        sum += points[i];
        ++bits;
      }
    values.insert(sum / static_cast<double>(bits));
  }
  return Grid::atoms(std::vector<double>(values.begin(), values.end()));
}

}  // namespace chanopt
