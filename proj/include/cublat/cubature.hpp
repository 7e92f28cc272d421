#pragma once

#include <array>

#include "cublat/types.hpp"

namespace cublat {

// The theta table admits two sign alternatives; `upper` takes the top sign
// of each pair, `lower` the bottom. Trajectory endpoints agree across
// branches, so pricing never depends on the choice.
enum class SignBranch { upper, lower };

// Degree-5 cubature formula on Wiener space reduced to one dimension:
// three weighted piecewise-linear trajectories on [0, 1], split in thirds.
// The weighted endpoints (-sqrt3, 0, sqrt3) reproduce all Gaussian moments
// through degree 5.
struct CubatureFormula5 {
  std::array<double, 3> weights;  // lambda_k = (1/6, 2/3, 1/6)
  std::array<std::array<double, 3>, 3> thetas_upper;  // theta[k-1][j-1]
  std::array<std::array<double, 3>, 3> thetas_lower;
  std::array<double, 3> endpoints;  // omega_k(1), ascending
  double sub_interval;              // t_j - t_{j-1} = 1/3

  const std::array<std::array<double, 3>, 3>& thetas(SignBranch branch) const {
    return branch == SignBranch::upper ? thetas_upper : thetas_lower;
  }
};

const CubatureFormula5& degree5_formula();

// One cubature trajectory sampled at the partition 0 = t0 < t1 < t2 < t3 = 1.
struct TrajectoryPath {
  int k;                         // trajectory index, 1..3
  std::array<double, 4> values;  // omega_k(t0..t3), values[0] = 0
};

// Cumulative trajectory omega_k(t_j) = omega_k(t_{j-1}) + 3 theta_{k,j} (t_j - t_{j-1}).
TrajectoryPath trajectory_points(int k, SignBranch branch);

// Terminal levels under the three-point measure, ascending:
//   Black-Scholes: S0 exp{(r - sigma^2/2) T + sigma sqrt(T) omega_k}
//   Black:         F0 exp{-sigma^2 T / 2 + sigma sqrt(T) omega_k}
std::array<double, 3> cubature_terminal_levels(ModelKind model,
                                               const MarketParams& params);

// Discounted expected payoff over the three-point terminal measure,
// e^{-rT} sum_k lambda_k payoff(level_k). European only.
double cubature_single_step_price(ModelKind model, const MarketParams& params,
                                  const OptionSpec& option);

}  // namespace cublat
