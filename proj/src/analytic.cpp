#include "cublat/analytic.hpp"

#include <cmath>

namespace cublat {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_european(const OptionSpec& option) {
  if (option.style != ExerciseStyle::european)
    throw ValidationError(
        "style", "style must be european: no closed form for american options");
}

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double deterministic_forward_price(ModelKind model, const MarketParams& params,
                                   const OptionSpec& option) {
  const double discount = std::exp(-params.rate * params.maturity);
  const double forward = model == ModelKind::black_scholes
                             ? params.underlying / discount
                             : params.underlying;
  return discount * intrinsic_value(option.kind, forward, option.strike);
}

double bs_price(const MarketParams& params, const OptionSpec& option) {
  validate(params);
  validate(option);
  require_european(option);

  if (params.volatility == 0.0)
    return deterministic_forward_price(ModelKind::black_scholes, params, option);

  const double s0 = params.underlying;
  const double k = option.strike;
  const double r = params.rate;
  const double sigma = params.volatility;
  const double t = params.maturity;

  const double sig_sqrt_t = sigma * std::sqrt(t);
  const double d1 = (std::log(s0 / k) + (r + 0.5 * sigma * sigma) * t) / sig_sqrt_t;
  const double d2 = d1 - sig_sqrt_t;
  const double discounted_k = k * std::exp(-r * t);

  if (option.kind == OptionKind::call)
    return s0 * norm_cdf(d1) - discounted_k * norm_cdf(d2);
  return discounted_k * norm_cdf(-d2) - s0 * norm_cdf(-d1);
}

double black_price(const MarketParams& params, const OptionSpec& option) {
  validate(params);
  validate(option);
  require_european(option);

  if (params.volatility == 0.0)
    return deterministic_forward_price(ModelKind::black, params, option);

  const double f0 = params.underlying;
  const double k = option.strike;
  const double sigma = params.volatility;
  const double t = params.maturity;
  const double discount = std::exp(-params.rate * t);

  const double sig_sqrt_t = sigma * std::sqrt(t);
  const double d1 = (std::log(f0 / k) + 0.5 * sigma * sigma * t) / sig_sqrt_t;
  const double d2 = d1 - sig_sqrt_t;

  if (option.kind == OptionKind::call)
    return discount * (f0 * norm_cdf(d1) - k * norm_cdf(d2));
  return discount * (k * norm_cdf(-d2) - f0 * norm_cdf(-d1));
}

double analytic_price(ModelKind model, const MarketParams& params,
                      const OptionSpec& option) {
  return model == ModelKind::black_scholes ? bs_price(params, option)
                                           : black_price(params, option);
}

}  // namespace cublat
