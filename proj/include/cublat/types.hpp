#pragma once

#include <stdexcept>
#include <string>

namespace cublat {

// Which lognormal dynamics the lattice and the analytic oracle assume.
enum class ModelKind { black_scholes, black };

enum class OptionKind { call, put };

enum class ExerciseStyle { european, american };

// Market state shared by both models. `underlying` is the spot S0 under
// Black-Scholes and the forward/futures level F0 under Black.
struct MarketParams {
  double underlying = 0.0;  // currency units, > 0
  double rate = 0.0;        // continuously compounded per year, any sign
  double volatility = 0.0;  // per sqrt(year), >= 0
  double maturity = 0.0;    // years, > 0
};

struct OptionSpec {
  OptionKind kind = OptionKind::call;
  ExerciseStyle style = ExerciseStyle::european;
  double strike = 0.0;  // currency units, > 0
};

// Thrown when an input violates a documented bound. `field()` names the
// offending input so callers can report it precisely.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

void validate(const MarketParams& params);
void validate(const OptionSpec& option);

// max(level - strike, 0) for calls, max(strike - level, 0) for puts.
double intrinsic_value(OptionKind kind, double level, double strike);

const char* to_string(ModelKind model);
const char* to_string(OptionKind kind);
const char* to_string(ExerciseStyle style);

}  // namespace cublat
