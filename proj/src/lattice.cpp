#include "cublat/lattice.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "cublat/analytic.hpp"

namespace cublat {

namespace {

constexpr int kMaxExactPathCountSteps = 40;  // 3^40 still fits in uint64

void require_steps(int n) {
  if (n < 1)
    throw ValidationError("n", "step count n must be at least 1, got " +
                                   std::to_string(n));
}

void require_style(const OptionSpec& option, ExerciseStyle expected,
                   const char* routine) {
  if (option.style != expected) {
    std::ostringstream msg;
    msg << "style must be " << to_string(expected) << " for " << routine
        << ", got " << to_string(option.style);
    throw ValidationError("style", msg.str());
  }
}

// Lattice node price at (i, j), j = 0..2i.
double node_level(const LatticeFactors& f, double s0, int i, int j) {
  const double half_spread = 0.5 * (f.u - f.d);
  const double mid = 0.5 * (f.u + f.d);
  return s0 * std::exp((j - i) * half_spread + i * mid);
}

double backward_price(ModelKind model, const MarketParams& params,
                      const OptionSpec& option, int n, double c,
                      bool early_exercise) {
  const LatticeFactors f = build_factors(model, params, n, c);
  const double s0 = params.underlying;
  const double k = option.strike;
  const double step_discount = std::exp(-params.rate * f.h);

  std::vector<double> values(static_cast<std::size_t>(2 * n + 1));
  for (int j = 0; j <= 2 * n; ++j)
    values[static_cast<std::size_t>(j)] =
        intrinsic_value(option.kind, node_level(f, s0, n, j), k);

  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j <= 2 * i; ++j) {
      const std::size_t jj = static_cast<std::size_t>(j);
      double value = step_discount * (f.p_u * values[jj + 2] +
                                      f.p_m * values[jj + 1] + f.p_d * values[jj]);
      if (early_exercise) {
        const double exercise =
            intrinsic_value(option.kind, node_level(f, s0, i, j), k);
        if (exercise > value) value = exercise;
      }
      values[jj] = value;
    }
  }
  return values[0];
}

}  // namespace

LatticeFactors build_factors(ModelKind model, const MarketParams& params, int n,
                             double c) {
  validate(params);
  require_steps(n);
  if (!(c >= 1.0) || !std::isfinite(c))
    throw ValidationError(
        "c", "spread parameter c must be >= 1 (p_m = 1 - 1/c would be "
             "negative), got " +
                 std::to_string(c));

  LatticeFactors f;
  f.n = n;
  f.c = c;
  f.h = params.maturity / n;
  f.drift = model == ModelKind::black_scholes
                ? params.rate - 0.5 * params.volatility * params.volatility
                : -0.5 * params.volatility * params.volatility;

  const double spread = params.volatility * std::sqrt(c * f.h);
  f.m = f.drift * f.h;
  f.u = f.m + spread;
  f.d = f.m - spread;
  f.u0 = std::exp(f.u);
  f.m0 = std::exp(f.m);
  f.d0 = std::exp(f.d);
  f.p_u = 1.0 / (2.0 * c);
  f.p_d = f.p_u;
  f.p_m = 1.0 - 1.0 / c;
  return f;
}

std::uint64_t path_count(int n, int j) {
  require_steps(n);
  if (n > kMaxExactPathCountSteps)
    throw ValidationError("n", "path counts are exact only for n <= " +
                                   std::to_string(kMaxExactPathCountSteps) +
                                   ", got " + std::to_string(n));
  if (j < 0 || j > 2 * n)
    throw ValidationError("j", "node index j must be in 0..2n, got " +
                                   std::to_string(j));

  std::vector<std::uint64_t> counts{1};
  for (int step = 1; step <= n; ++step) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(2 * step + 1), 0);
    for (std::size_t idx = 0; idx < counts.size(); ++idx) {
      next[idx] += counts[idx];      // down
      next[idx + 1] += counts[idx];  // middle
      next[idx + 2] += counts[idx];  // up
    }
    counts.swap(next);
  }
  return counts[static_cast<std::size_t>(j)];
}

TerminalDistribution terminal_distribution(const LatticeFactors& factors,
                                           double s0) {
  if (!(s0 > 0.0) || !std::isfinite(s0))
    throw ValidationError("underlying", "underlying must be positive, got " +
                                            std::to_string(s0));

  const int n = factors.n;
  std::vector<double> probs{1.0};
  for (int step = 1; step <= n; ++step) {
    std::vector<double> next(static_cast<std::size_t>(2 * step + 1), 0.0);
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
      next[idx] += factors.p_d * probs[idx];
      next[idx + 1] += factors.p_m * probs[idx];
      next[idx + 2] += factors.p_u * probs[idx];
    }
    probs.swap(next);
  }

  TerminalDistribution dist;
  dist.node_probs = std::move(probs);
  dist.node_levels.resize(static_cast<std::size_t>(2 * n + 1));
  for (int j = 0; j <= 2 * n; ++j)
    dist.node_levels[static_cast<std::size_t>(j)] = node_level(factors, s0, n, j);
  return dist;
}

double european_price_tree(ModelKind model, const MarketParams& params,
                           const OptionSpec& option, int n, double c) {
  validate(option);
  require_style(option, ExerciseStyle::european, "european_price_tree");
  validate(params);
  require_steps(n);

  // All three factors collapse when sigma = 0; price the deterministic forward.
  if (params.volatility == 0.0)
    return deterministic_forward_price(model, params, option);

  const LatticeFactors factors = build_factors(model, params, n, c);
  const TerminalDistribution dist =
      terminal_distribution(factors, params.underlying);

  double expectation = 0.0;
  for (std::size_t j = 0; j < dist.node_probs.size(); ++j)
    expectation += dist.node_probs[j] * intrinsic_value(option.kind,
                                                        dist.node_levels[j],
                                                        option.strike);
  return std::exp(-params.rate * params.maturity) * expectation;
}

double european_price_backward(ModelKind model, const MarketParams& params,
                               const OptionSpec& option, int n, double c) {
  validate(option);
  require_style(option, ExerciseStyle::european, "european_price_backward");
  return backward_price(model, params, option, n, c, /*early_exercise=*/false);
}

double american_price_tree(ModelKind model, const MarketParams& params,
                           const OptionSpec& option, int n, double c) {
  validate(option);
  require_style(option, ExerciseStyle::american, "american_price_tree");
  return backward_price(model, params, option, n, c, /*early_exercise=*/true);
}

double crr_price(const MarketParams& params, const OptionSpec& option, int n) {
  validate(params);
  validate(option);
  require_steps(n);

  const double h = params.maturity / n;
  const double sig_sqrt_h = params.volatility * std::sqrt(h);
  const double u0 = std::exp(sig_sqrt_h);
  const double d0 = 1.0 / u0;
  const double growth = std::exp(params.rate * h);
  const double p = (growth - d0) / (u0 - d0);
  if (!(p >= 0.0) || !(p <= 1.0)) {
    std::ostringstream msg;
    msg << "no-arbitrage bound violated: e^{rh} = " << growth
        << " must lie within [d0, u0] = [" << d0 << ", " << u0
        << "] for a risk-neutral probability in [0, 1]";
    throw ValidationError("rate", msg.str());
  }

  const double s0 = params.underlying;
  const double k = option.strike;
  const double step_discount = std::exp(-params.rate * h);
  const bool early_exercise = option.style == ExerciseStyle::american;

  auto level = [&](int i, int j) {
    return s0 * std::exp((2 * j - i) * sig_sqrt_h);
  };

  std::vector<double> values(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j)
    values[static_cast<std::size_t>(j)] =
        intrinsic_value(option.kind, level(n, j), k);

  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j <= i; ++j) {
      const std::size_t jj = static_cast<std::size_t>(j);
      double value =
          step_discount * (p * values[jj + 1] + (1.0 - p) * values[jj]);
      if (early_exercise) {
        const double exercise = intrinsic_value(option.kind, level(i, j), k);
        if (exercise > value) value = exercise;
      }
      values[jj] = value;
    }
  }
  return values[0];
}

double martingale_gap(const LatticeFactors& factors, double rate) {
  const double lattice_growth =
      factors.p_u * factors.u0 + factors.p_m * factors.m0 + factors.p_d * factors.d0;
  return std::abs(lattice_growth - std::exp(rate * factors.h));
}

}  // namespace cublat
