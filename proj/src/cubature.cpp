#include "cublat/cubature.hpp"

#include <cmath>
#include <string>

namespace cublat {

namespace {

CubatureFormula5 make_formula() {
  const double s3 = std::sqrt(3.0);
  const double s6 = std::sqrt(6.0);

  CubatureFormula5 f;
  f.weights = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
  // Rows k = 1..3; columns j = 1..3 with theta_{k,1} = theta_{k,3}.
  f.thetas_upper = {{
      {(-2.0 * s3 - s6) / 6.0, (-s3 + s6) / 3.0, (-2.0 * s3 - s6) / 6.0},
      {s6 / 6.0, -s6 / 3.0, s6 / 6.0},
      {(2.0 * s3 + s6) / 6.0, (s3 - s6) / 3.0, (2.0 * s3 + s6) / 6.0},
  }};
  f.thetas_lower = {{
      {(-2.0 * s3 + s6) / 6.0, (-s3 - s6) / 3.0, (-2.0 * s3 + s6) / 6.0},
      {-s6 / 6.0, s6 / 3.0, -s6 / 6.0},
      {(2.0 * s3 - s6) / 6.0, (s3 + s6) / 3.0, (2.0 * s3 - s6) / 6.0},
  }};
  f.endpoints = {-s3, 0.0, s3};
  f.sub_interval = 1.0 / 3.0;
  return f;
}

}  // namespace

const CubatureFormula5& degree5_formula() {
  static const CubatureFormula5 formula = make_formula();
  return formula;
}

TrajectoryPath trajectory_points(int k, SignBranch branch) {
  if (k < 1 || k > 3)
    throw ValidationError("k", "trajectory index k must be in 1..3, got " +
                                   std::to_string(k));

  const auto& formula = degree5_formula();
  const auto& theta = formula.thetas(branch)[static_cast<std::size_t>(k - 1)];

  TrajectoryPath path;
  path.k = k;
  path.values[0] = 0.0;
  for (int j = 0; j < 3; ++j)
    path.values[static_cast<std::size_t>(j + 1)] =
        path.values[static_cast<std::size_t>(j)] +
        3.0 * theta[static_cast<std::size_t>(j)] * formula.sub_interval;
  return path;
}

std::array<double, 3> cubature_terminal_levels(ModelKind model,
                                               const MarketParams& params) {
  validate(params);

  const double sigma = params.volatility;
  const double t = params.maturity;
  const double drift = model == ModelKind::black_scholes
                           ? params.rate - 0.5 * sigma * sigma
                           : -0.5 * sigma * sigma;
  const double sig_sqrt_t = sigma * std::sqrt(t);

  const auto& omega = degree5_formula().endpoints;
  std::array<double, 3> levels;
  for (std::size_t i = 0; i < 3; ++i)
    levels[i] = params.underlying * std::exp(drift * t + sig_sqrt_t * omega[i]);
  return levels;
}

double cubature_single_step_price(ModelKind model, const MarketParams& params,
                                  const OptionSpec& option) {
  validate(option);
  if (option.style != ExerciseStyle::european)
    throw ValidationError("style",
                          "style must be european: the single-period cubature "
                          "pricer has no early exercise");

  const auto levels = cubature_terminal_levels(model, params);
  const auto& weights = degree5_formula().weights;

  double expectation = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    expectation +=
        weights[i] * intrinsic_value(option.kind, levels[i], option.strike);
  return std::exp(-params.rate * params.maturity) * expectation;
}

}  // namespace cublat
