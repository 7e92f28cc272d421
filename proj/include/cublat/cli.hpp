#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cublat/types.hpp"

namespace cublat {

enum class Command { price, cubature, sweep_n, sweep_c, martingale, american_compare };

enum class OutputFormat { text, csv, json };

// Fully resolved invocation: flags merged over the optional JSON config
// file and the CUBLAT_OUTPUT environment default, validated before dispatch.
struct CliConfig {
  Command command = Command::price;
  ModelKind model = ModelKind::black_scholes;
  MarketParams params;
  OptionSpec option;
  int n = 252;
  double c = 3.0;
  std::optional<std::vector<int>> n_grid;
  std::optional<std::vector<double>> c_grid;
  OutputFormat output = OutputFormat::text;
  std::string output_path;  // empty writes to `out`
};

// Parses argv (without the program name), dispatches, writes results to
// `out` (or the configured file) and diagnostics to `err`. Returns 0 on
// success, 2 on argument or validation errors, 1 on computation errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cublat
