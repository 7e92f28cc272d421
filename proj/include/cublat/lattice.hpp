#pragma once

#include <cstdint>
#include <vector>

#include "cublat/types.hpp"

namespace cublat {

// Per-step data of the recombining trinomial lattice. Log moves are
//   u = mu h + sigma sqrt(c h),  m = mu h,  d = mu h - sigma sqrt(c h)
// with p_u = p_d = 1/(2c) and p_m = 1 - 1/c, so m = (u + d)/2 and the
// per-step log-return has mean mu h and variance sigma^2 h for every c >= 1.
struct LatticeFactors {
  double u = 0.0, m = 0.0, d = 0.0;     // log move per step
  double u0 = 1.0, m0 = 1.0, d0 = 1.0;  // multiplicative factors e^u, e^m, e^d
  double p_u = 0.0, p_m = 0.0, p_d = 0.0;
  double h = 0.0;      // years per step, T/n
  double c = 0.0;      // spread parameter, >= 1 (c = 1 is the binomial limit)
  double drift = 0.0;  // mu per year: r - sigma^2/2 (Black-Scholes), -sigma^2/2 (Black)
  int n = 0;           // step count
};

LatticeFactors build_factors(ModelKind model, const MarketParams& params, int n,
                             double c);

// Number of length-n words over {u, m, d} whose up-count minus down-count
// equals j - n, i.e. the trinomial coefficient of node (n, j). Exact for
// n <= 40 (the counts sum to 3^n).
std::uint64_t path_count(int n, int j);

// Terminal layer of the lattice: 2n+1 node prices and their probabilities.
// Levels follow s0 exp((j - n)(u - d)/2 + n(u + d)/2) and are strictly
// increasing for sigma > 0 (all equal when sigma = 0).
struct TerminalDistribution {
  std::vector<double> node_levels;
  std::vector<double> node_probs;
};

// Probabilities by n-fold convolution of the one-step distribution
// (p_d, p_m, p_u); O(n^2) and stable at any practical n.
TerminalDistribution terminal_distribution(const LatticeFactors& factors,
                                           double s0);

// European price from the terminal distribution:
// e^{-rT} sum_j prob_j payoff(level_j).
double european_price_tree(ModelKind model, const MarketParams& params,
                           const OptionSpec& option, int n, double c);

// Same value by full backward induction without early exercise; kept as an
// independent route for cross-checks.
double european_price_backward(ModelKind model, const MarketParams& params,
                               const OptionSpec& option, int n, double c);

// American price by backward recursion: at every node the value is
// max(intrinsic, e^{-rh} [p_u V_up + p_m V_mid + p_d V_down]).
double american_price_tree(ModelKind model, const MarketParams& params,
                           const OptionSpec& option, int n, double c);

// Classical binomial lattice baseline (u0 = e^{sigma sqrt h}, d0 = 1/u0,
// risk-neutral p = (e^{rh} - d0)/(u0 - d0)) for either exercise style.
// Rejects parameters whose risk-neutral probability leaves [0, 1].
double crr_price(const MarketParams& params, const OptionSpec& option, int n);

// |p_u u0 + p_m m0 + p_d d0 - e^{rate h}|, the distance of the lattice
// measure from the risk-neutral martingale condition.
double martingale_gap(const LatticeFactors& factors, double rate);

}  // namespace cublat
