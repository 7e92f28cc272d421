#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cublat/types.hpp"

namespace cublat {

// One record of an experiment sweep. `extra` carries labeled side values
// such as p_u, crr_price or martingale_gap; keys are uniform within a report.
struct SweepRow {
  double sweep_key = 0.0;  // n or c
  double tree_price = 0.0;
  double analytic_price = 0.0;
  double abs_error = 0.0;  // |tree_price - analytic_price|
  std::map<std::string, double> extra;
};

struct SweepReport {
  ModelKind model = ModelKind::black_scholes;
  MarketParams params;
  OptionSpec option;
  std::string sweep_name;                  // name of the swept key: "n" or "c"
  std::map<std::string, double> settings;  // fixed settings, e.g. {"c", 3}
  std::vector<SweepRow> rows;              // ascending sweep_key, no duplicates
};

// Tree-vs-analytic prices over a grid of step counts at fixed c.
// European only; pricing errors are rethrown annotated with the failing n.
SweepReport sweep_n(ModelKind model, const MarketParams& params,
                    const OptionSpec& option, const std::vector<int>& n_values,
                    double c);

// Tree-vs-analytic prices over a grid of spread parameters at fixed n.
// Each row records p_u = 1/(2c) in extra.
SweepReport sweep_c(ModelKind model, const MarketParams& params,
                    const OptionSpec& option, const std::vector<double>& c_values,
                    int n);

// Martingale-condition gaps per c under Black-Scholes drift. Price fields
// are unused and set to 0; the gap lives in extra["martingale_gap"].
SweepReport martingale_table(const MarketParams& params,
                             const std::vector<double>& c_values, int n);

// American trinomial vs CRR prices over a grid of step counts. The analytic
// column is the European closed form of the same option kind; for
// non-dividend calls early exercise is never optimal, so it is the exact
// reference. extra records crr_price, crr_abs_error and european_tree_price.
SweepReport american_compare(const MarketParams& params, const OptionSpec& option,
                             const std::vector<int>& n_values, double c);

// CSV with fixed schema: sweep_key,tree_price,analytic_price,abs_error
// followed by the extra columns in sorted order; 12 significant digits.
void write_csv(const SweepReport& report, std::ostream& out);

// JSON document: a metadata object plus a rows array.
void write_json(const SweepReport& report, std::ostream& out);

// One double rendered with 12 significant digits (the CSV number format).
std::string format_number(double value);

}  // namespace cublat
