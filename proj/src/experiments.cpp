#include "cublat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cublat/analytic.hpp"
#include "cublat/lattice.hpp"

namespace cublat {

namespace {

template <typename Key>
std::vector<Key> sorted_unique(std::vector<Key> values, const char* field) {
  if (values.empty())
    throw ValidationError(field, std::string(field) + " must be non-empty");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

[[noreturn]] void rethrow_with_key(const ValidationError& err, const char* name,
                                   double key) {
  std::ostringstream msg;
  msg << name << "=" << key << ": " << err.what();
  throw ValidationError(err.field(), msg.str());
}

std::vector<std::string> extra_columns(const SweepReport& report) {
  std::set<std::string> keys;
  for (const auto& row : report.rows)
    for (const auto& [key, value] : row.extra) keys.insert(key);
  return {keys.begin(), keys.end()};
}

}  // namespace

SweepReport sweep_n(ModelKind model, const MarketParams& params,
                    const OptionSpec& option, const std::vector<int>& n_values,
                    double c) {
  validate(params);
  validate(option);
  if (option.style != ExerciseStyle::european)
    throw ValidationError("style", "sweep_n prices European options only");

  SweepReport report{model, params, option, "n", {{"c", c}}, {}};
  const double analytic = analytic_price(model, params, option);
  for (int n : sorted_unique(n_values, "n_values")) {
    try {
      SweepRow row;
      row.sweep_key = n;
      row.tree_price = european_price_tree(model, params, option, n, c);
      row.analytic_price = analytic;
      row.abs_error = std::abs(row.tree_price - row.analytic_price);
      report.rows.push_back(std::move(row));
    } catch (const ValidationError& err) {
      rethrow_with_key(err, "n", n);
    }
  }
  return report;
}

SweepReport sweep_c(ModelKind model, const MarketParams& params,
                    const OptionSpec& option, const std::vector<double>& c_values,
                    int n) {
  validate(params);
  validate(option);
  if (option.style != ExerciseStyle::european)
    throw ValidationError("style", "sweep_c prices European options only");

  SweepReport report{model, params, option, "c",
                     {{"n", static_cast<double>(n)}}, {}};
  const double analytic = analytic_price(model, params, option);
  for (double c : sorted_unique(c_values, "c_values")) {
    try {
      SweepRow row;
      row.sweep_key = c;
      row.tree_price = european_price_tree(model, params, option, n, c);
      row.analytic_price = analytic;
      row.abs_error = std::abs(row.tree_price - row.analytic_price);
      row.extra["p_u"] = 1.0 / (2.0 * c);
      report.rows.push_back(std::move(row));
    } catch (const ValidationError& err) {
      rethrow_with_key(err, "c", c);
    }
  }
  return report;
}

SweepReport martingale_table(const MarketParams& params,
                             const std::vector<double>& c_values, int n) {
  validate(params);

  SweepReport report;
  report.model = ModelKind::black_scholes;
  report.params = params;
  // The gap does not involve an option; keep the spec valid but unused.
  report.option = OptionSpec{OptionKind::call, ExerciseStyle::european,
                             params.underlying};
  report.sweep_name = "c";
  report.settings = {{"n", static_cast<double>(n)}};
  for (double c : sorted_unique(c_values, "c_values")) {
    try {
      const LatticeFactors factors =
          build_factors(ModelKind::black_scholes, params, n, c);
      SweepRow row;
      row.sweep_key = c;
      row.extra["martingale_gap"] = martingale_gap(factors, params.rate);
      row.extra["p_u"] = factors.p_u;
      report.rows.push_back(std::move(row));
    } catch (const ValidationError& err) {
      rethrow_with_key(err, "c", c);
    }
  }
  return report;
}

SweepReport american_compare(const MarketParams& params, const OptionSpec& option,
                             const std::vector<int>& n_values, double c) {
  validate(params);
  validate(option);
  if (option.style != ExerciseStyle::american)
    throw ValidationError("style", "american_compare prices American options only");

  SweepReport report{ModelKind::black_scholes, params, option, "n",
                     {{"c", c}}, {}};
  const OptionSpec european{option.kind, ExerciseStyle::european, option.strike};
  const double analytic = bs_price(params, european);
  for (int n : sorted_unique(n_values, "n_values")) {
    try {
      SweepRow row;
      row.sweep_key = n;
      row.tree_price =
          american_price_tree(ModelKind::black_scholes, params, option, n, c);
      row.analytic_price = analytic;
      row.abs_error = std::abs(row.tree_price - row.analytic_price);
      const double crr = crr_price(params, option, n);
      row.extra["crr_price"] = crr;
      row.extra["crr_abs_error"] = std::abs(crr - analytic);
      row.extra["european_tree_price"] =
          european_price_tree(ModelKind::black_scholes, params, european, n, c);
      report.rows.push_back(std::move(row));
    } catch (const ValidationError& err) {
      rethrow_with_key(err, "n", n);
    }
  }
  return report;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_csv(const SweepReport& report, std::ostream& out) {
  out << "sweep_key,tree_price,analytic_price,abs_error";
  const auto extras = extra_columns(report);
  for (const auto& column : extras) out << "," << column;
  out << "\n";
  for (const auto& row : report.rows) {
    out << format_number(row.sweep_key) << "," << format_number(row.tree_price)
        << "," << format_number(row.analytic_price) << ","
        << format_number(row.abs_error);
    for (const auto& column : extras) {
      const auto found = row.extra.find(column);
      out << "," << (found != row.extra.end() ? format_number(found->second) : "");
    }
    out << "\n";
  }
}

void write_json(const SweepReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = {
      {"model", to_string(report.model)},
      {"underlying", report.params.underlying},
      {"rate", report.params.rate},
      {"volatility", report.params.volatility},
      {"maturity", report.params.maturity},
      {"option_kind", to_string(report.option.kind)},
      {"option_style", to_string(report.option.style)},
      {"strike", report.option.strike},
      {"sweep", report.sweep_name},
  };
  for (const auto& [key, value] : report.settings) doc["metadata"][key] = value;

  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json item = {
        {"sweep_key", row.sweep_key},
        {"tree_price", row.tree_price},
        {"analytic_price", row.analytic_price},
        {"abs_error", row.abs_error},
    };
    for (const auto& [key, value] : row.extra) item[key] = value;
    doc["rows"].push_back(std::move(item));
  }
  out << doc.dump(2) << "\n";
}

}  // namespace cublat
