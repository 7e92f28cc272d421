#pragma once

#include "cublat/types.hpp"

namespace cublat {

// Standard normal cumulative distribution function, accurate to ~1 ulp.
double norm_cdf(double x);

// Black-Scholes closed-form price of a European option on a non-dividend
// spot. sigma = 0 falls back to the discounted intrinsic value of the
// forward. Rejects American style (no closed form).
double bs_price(const MarketParams& params, const OptionSpec& option);

// Black-76 closed-form price of a European option on a forward/futures
// level, discounted at `rate` over the full maturity.
double black_price(const MarketParams& params, const OptionSpec& option);

// e^{-rT} * max(+-(forward - K), 0), the sigma -> 0 limit of both models.
// The forward is S0 e^{rT} under Black-Scholes and F0 under Black.
double deterministic_forward_price(ModelKind model, const MarketParams& params,
                                   const OptionSpec& option);

// Dispatches to bs_price or black_price by model kind.
double analytic_price(ModelKind model, const MarketParams& params,
                      const OptionSpec& option);

}  // namespace cublat
