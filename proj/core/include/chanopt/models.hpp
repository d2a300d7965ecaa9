#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "chanopt/channel.hpp"
#include "chanopt/control.hpp"
#include "chanopt/multistage.hpp"
#include "chanopt/quantizer.hpp"

namespace chanopt {

/// Two-atom source on {a, b} observed through channels that collapse onto a
/// vanishing shift: Q_n maps x >= a + 1/n to the atom a + 1/n and everything
/// else to a, while the limit maps everything to a.  The joint laws converge
/// weakly but never in total variation, and the optimal costs drop from
/// (b-a)^2/4 to 0 along the sequence.
struct VanishingShiftSetup {
  GridPtr x_grid;
  GridPtr y_grid;  // {a} plus the shifted atoms for the declared n values
  GridPtr u_grid;  // {a, (a+b)/2, b}
  DiscreteMeasure P;
  CostSpec cost;
  Channel limit;
  ChannelSequence seq;  // defined exactly on the declared n values
  double a = 0.0;
  double b = 1.0;
};

VanishingShiftSetup make_vanishing_shift_setup(double a, double b, const std::vector<int>& n_values);

/// Cell masses of the square-wave density 1 + h_n on a K-cell grid over
/// [0, 1]: alternating blocks of 2/K and 0, block length K/(2n).  Requires
/// K to be a multiple of 2n so the density is constant on cells.
std::vector<double> square_wave_row(int n, std::size_t K);

/// Two-cell quantizer whose first cell is the union of the low half-wave
/// blocks of square_wave_row(n, K).
Quantizer alternating_quantizer(int n, std::size_t K);

/// Two-atom source on {0, 1}; x = 0 emits uniform observations on [0, 1]
/// while x = 1 emits the square-wave density under Q_n and uniform under the
/// limit.  The joints converge setwise (but not in TV), and the optimal cost
/// stays at 1/6 along the sequence against 1/4 at the limit.
struct SquareWaveSetup {
  GridPtr x_grid;
  GridPtr y_grid;  // K uniform cells over [0, 1]
  GridPtr u_grid;  // {0, 1/2, 2/3, 1}
  DiscreteMeasure P;
  CostSpec cost;
  Channel limit;
  ChannelSequence seq;  // defined for every n >= 1 with 2n dividing K
  std::size_t K = 0;
};

SquareWaveSetup make_square_wave_setup(std::size_t K);

/// Hand-built 2-state / 2-observation / 2-action model with mismatch cost
/// and a noisy observation channel, plus the mixture sequence
/// Q_n = (1 - 1/n) Q + (1/n) Q_flat toward the model's channel.
struct TwoStateSetup {
  MultistageModel model;
  Channel flat;         // uninformative channel
  ChannelSequence seq;  // mixtures converging uniformly in TV
};

TwoStateSetup make_two_state_setup(int horizon);

/// 1-D atom grid holding the means of every non-empty subset of `points`;
/// with quadratic cost this makes every cell-conditional optimum exactly
/// representable.
GridPtr subset_mean_grid(const std::vector<double>& points);

}  // namespace chanopt
