#include "cublat/types.hpp"

#include <cmath>
#include <sstream>

namespace cublat {

namespace {

[[noreturn]] void fail(const char* field, const char* bound, double got) {
  std::ostringstream msg;
  msg << field << " " << bound << ", got " << got;
  throw ValidationError(field, msg.str());
}

}  // namespace

void validate(const MarketParams& params) {
  if (!(params.underlying > 0.0) || !std::isfinite(params.underlying))
    fail("underlying", "must be positive", params.underlying);
  if (!std::isfinite(params.rate)) fail("rate", "must be finite", params.rate);
  if (!(params.volatility >= 0.0) || !std::isfinite(params.volatility))
    fail("volatility", "must be non-negative", params.volatility);
  if (!(params.maturity > 0.0) || !std::isfinite(params.maturity))
    fail("maturity", "must be positive", params.maturity);
}

void validate(const OptionSpec& option) {
  if (!(option.strike > 0.0) || !std::isfinite(option.strike))
    fail("strike", "must be positive", option.strike);
}

double intrinsic_value(OptionKind kind, double level, double strike) {
  const double diff = kind == OptionKind::call ? level - strike : strike - level;
  return diff > 0.0 ? diff : 0.0;
}

const char* to_string(ModelKind model) {
  return model == ModelKind::black_scholes ? "black_scholes" : "black";
}

const char* to_string(OptionKind kind) {
  return kind == OptionKind::call ? "call" : "put";
}

const char* to_string(ExerciseStyle style) {
  return style == ExerciseStyle::european ? "european" : "american";
}

}  // namespace cublat
