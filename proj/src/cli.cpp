#include "cublat/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cublat/analytic.hpp"
#include "cublat/cubature.hpp"
#include "cublat/experiments.hpp"
#include "cublat/lattice.hpp"

namespace cublat {

namespace {

const std::vector<double> kDefaultCGrid = {1.0, 1.5, 2.0, 3.0, 4.0,
                                           5.0, 10.0, 20.0, 30.0};
constexpr int kDefaultAmericanMaxSteps = 126;

// Flag values as parsed; optionals distinguish "not given" for the config
// file and environment merges.
struct RawArgs {
  std::string model = "bs";
  std::string style;
  std::string type = "call";
  double s0 = 100.0;
  double k = 100.0;
  std::optional<double> r;
  std::optional<double> sigma;
  std::optional<double> t;
  int n = 252;
  double c = 3.0;
  std::optional<std::string> n_list;
  std::optional<std::string> c_list;
  std::optional<std::string> output;
  std::string output_path;
  std::string config_path;
};

struct OptionRefs {
  CLI::App* cmd = nullptr;
  std::map<std::string, CLI::Option*> by_key;
};

OptionRefs add_common_options(CLI::App* cmd, RawArgs& raw) {
  OptionRefs refs;
  refs.cmd = cmd;
  auto track = [&](const char* key, CLI::Option* opt) { refs.by_key[key] = opt; };

  track("model", cmd->add_option("--model", raw.model,
                                 "Model: bs (Black-Scholes) or black (Black-76)"));
  track("style", cmd->add_option("--style", raw.style,
                                 "Exercise style: eu (european) or am (american)"));
  track("type", cmd->add_option("--type", raw.type, "Option type: call or put"));
  track("s0", cmd->add_option("--s0", raw.s0,
                              "Underlying level: spot for bs, forward for black"));
  track("k", cmd->add_option("--k", raw.k, "Strike price"));
  track("r", cmd->add_option("--r", raw.r, "Risk-free rate, continuously compounded"));
  track("sigma", cmd->add_option("--sigma", raw.sigma, "Volatility per sqrt(year)"));
  track("t", cmd->add_option("--t", raw.t, "Time to maturity in years"));
  track("n", cmd->add_option("--n", raw.n, "Lattice step count (default 252)"));
  track("c", cmd->add_option("--c", raw.c, "Lattice spread parameter (default 3)"));
  track("n-list", cmd->add_option("--n-list", raw.n_list,
                                  "Comma-separated step counts for sweeps"));
  track("c-list", cmd->add_option("--c-list", raw.c_list,
                                  "Comma-separated spread parameters for sweeps"));
  track("output", cmd->add_option("--output", raw.output,
                                  "Output format: text, csv or json"));
  track("output-path", cmd->add_option("--output-path", raw.output_path,
                                       "Write output to this file instead of stdout"));
  track("config", cmd->add_option("--config", raw.config_path,
                                  "JSON config file; flags override its values"));
  return refs;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) items.push_back(item);
  return items;
}

double parse_double_item(const std::string& item, const char* field) {
  try {
    std::size_t used = 0;
    const double value = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    return value;
  } catch (const std::exception&) {
    throw ValidationError(field, std::string(field) + ": unparseable number '" +
                                     item + "'");
  }
}

std::vector<double> parse_double_list(const std::string& text, const char* field) {
  std::vector<double> values;
  for (const auto& item : split_list(text))
    values.push_back(parse_double_item(item, field));
  if (values.empty())
    throw ValidationError(field, std::string(field) + " must be non-empty");
  return values;
}

std::vector<int> parse_int_list(const std::string& text, const char* field) {
  std::vector<int> values;
  for (const auto& item : split_list(text)) {
    const double value = parse_double_item(item, field);
    const int n = static_cast<int>(value);
    if (static_cast<double>(n) != value)
      throw ValidationError(field, std::string(field) + ": expected integer, got '" +
                                       item + "'");
    values.push_back(n);
  }
  if (values.empty())
    throw ValidationError(field, std::string(field) + " must be non-empty");
  return values;
}

std::string json_list_to_string(const nlohmann::json& value, const char* key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!item.is_number())
        throw ValidationError("config", std::string("config key '") + key +
                                            "' must be a list of numbers");
      if (!joined.empty()) joined += ",";
      joined += format_number(item.get<double>());
    }
    return joined;
  }
  throw ValidationError("config", std::string("config key '") + key +
                                      "' must be a string or a list of numbers");
}

// Fills in raw values from the JSON config for every flag not given on the
// command line. Keys mirror the long flag names.
void apply_config_file(RawArgs& raw, const OptionRefs& refs) {
  std::ifstream in(raw.config_path);
  if (!in)
    throw ValidationError("config", "cannot open config file '" + raw.config_path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw ValidationError("config", std::string("invalid JSON in config file: ") +
                                        err.what());
  }
  if (!doc.is_object())
    throw ValidationError("config", "config file must hold a JSON object");

  auto flag_given = [&](const char* key) {
    const auto found = refs.by_key.find(key);
    return found != refs.by_key.end() && found->second->count() > 0;
  };
  auto get_number = [&](const nlohmann::json& value, const std::string& key) {
    if (!value.is_number())
      throw ValidationError("config", "config key '" + key + "' must be a number");
    return value.get<double>();
  };
  auto get_string = [&](const nlohmann::json& value, const std::string& key) {
    if (!value.is_string())
      throw ValidationError("config", "config key '" + key + "' must be a string");
    return value.get<std::string>();
  };

  for (const auto& [key, value] : doc.items()) {
    if (flag_given(key.c_str())) continue;
    if (key == "model") raw.model = get_string(value, key);
    else if (key == "style") raw.style = get_string(value, key);
    else if (key == "type") raw.type = get_string(value, key);
    else if (key == "s0") raw.s0 = get_number(value, key);
    else if (key == "k") raw.k = get_number(value, key);
    else if (key == "r") raw.r = get_number(value, key);
    else if (key == "sigma") raw.sigma = get_number(value, key);
    else if (key == "t") raw.t = get_number(value, key);
    else if (key == "n") raw.n = static_cast<int>(get_number(value, key));
    else if (key == "c") raw.c = get_number(value, key);
    else if (key == "n-list") raw.n_list = json_list_to_string(value, "n-list");
    else if (key == "c-list") raw.c_list = json_list_to_string(value, "c-list");
    else if (key == "output") raw.output = get_string(value, key);
    else if (key == "output-path") raw.output_path = get_string(value, key);
    else
      throw ValidationError("config", "unknown config key '" + key + "'");
  }
}

ModelKind parse_model(const std::string& text) {
  if (text == "bs" || text == "black_scholes" || text == "black-scholes")
    return ModelKind::black_scholes;
  if (text == "black" || text == "black76" || text == "black-76")
    return ModelKind::black;
  throw ValidationError("model", "model must be 'bs' or 'black', got '" + text + "'");
}

ExerciseStyle parse_style(const std::string& text) {
  if (text == "eu" || text == "european") return ExerciseStyle::european;
  if (text == "am" || text == "american") return ExerciseStyle::american;
  throw ValidationError("style", "style must be 'eu' or 'am', got '" + text + "'");
}

OptionKind parse_type(const std::string& text) {
  if (text == "call") return OptionKind::call;
  if (text == "put") return OptionKind::put;
  throw ValidationError("type", "type must be 'call' or 'put', got '" + text + "'");
}

OutputFormat parse_output(const std::string& text, const char* field) {
  if (text == "text") return OutputFormat::text;
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ValidationError(field, std::string(field) +
                                   " must be 'text', 'csv' or 'json', got '" +
                                   text + "'");
}

void check_bound(bool ok, const char* field, const char* bound, double got) {
  if (ok) return;
  std::ostringstream msg;
  msg << field << " " << bound << ", got " << got;
  throw ValidationError(field, msg.str());
}

CliConfig resolve_config(Command command, const RawArgs& raw) {
  CliConfig config;
  config.command = command;
  config.model = parse_model(raw.model);
  config.option.kind = parse_type(raw.type);

  // american-compare is the only American-style command by default.
  if (raw.style.empty())
    config.option.style = command == Command::american_compare
                              ? ExerciseStyle::american
                              : ExerciseStyle::european;
  else
    config.option.style = parse_style(raw.style);

  auto require_flag = [](const std::optional<double>& value, const char* flag) {
    if (!value)
      throw ValidationError(flag, std::string("missing required flag --") + flag);
    return *value;
  };
  config.params.underlying = raw.s0;
  config.params.rate = require_flag(raw.r, "r");
  config.params.volatility = require_flag(raw.sigma, "sigma");
  config.params.maturity = require_flag(raw.t, "t");
  config.option.strike = raw.k;
  config.n = raw.n;
  config.c = raw.c;

  check_bound(config.params.underlying > 0.0, "s0", "must be positive", raw.s0);
  check_bound(config.option.strike > 0.0, "k", "must be positive", raw.k);
  check_bound(config.params.volatility >= 0.0, "sigma", "must be non-negative",
              config.params.volatility);
  check_bound(config.params.maturity > 0.0, "t", "must be positive",
              config.params.maturity);
  check_bound(config.n >= 1, "n", "must be at least 1", config.n);
  check_bound(config.c >= 1.0, "c", "must be at least 1", config.c);

  if (raw.n_list) config.n_grid = parse_int_list(*raw.n_list, "n-list");
  if (raw.c_list) config.c_grid = parse_double_list(*raw.c_list, "c-list");

  if (raw.output) {
    config.output = parse_output(*raw.output, "output");
  } else if (const char* env = std::getenv("CUBLAT_OUTPUT")) {
    config.output = parse_output(env, "CUBLAT_OUTPUT");
  } else {
    config.output = OutputFormat::text;
  }
  config.output_path = raw.output_path;
  return config;
}

std::string fmt_price(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9f", value);
  return buffer;
}

void print_header(std::ostream& out, const CliConfig& config, const char* command) {
  out << "command: " << command << "\n"
      << "model: " << to_string(config.model) << "\n"
      << "option: " << to_string(config.option.style) << " "
      << to_string(config.option.kind) << ", strike " << config.option.strike
      << "\n"
      << "underlying: " << config.params.underlying
      << "  rate: " << config.params.rate
      << "  volatility: " << config.params.volatility
      << "  maturity: " << config.params.maturity << "\n";
}

void render_report_text(const SweepReport& report, std::ostream& out) {
  std::vector<std::string> columns = {"sweep_key", "tree_price",
                                      "analytic_price", "abs_error"};
  std::set<std::string> extras;
  for (const auto& row : report.rows)
    for (const auto& [key, value] : row.extra) extras.insert(key);
  columns.insert(columns.end(), extras.begin(), extras.end());
  columns[0] = report.sweep_name;

  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i == 0 ? "" : "\t") << columns[i];
  out << "\n";
  for (const auto& row : report.rows) {
    out << format_number(row.sweep_key) << "\t" << format_number(row.tree_price)
        << "\t" << format_number(row.analytic_price) << "\t"
        << format_number(row.abs_error);
    for (const auto& key : extras) {
      const auto found = row.extra.find(key);
      out << "\t" << (found != row.extra.end() ? format_number(found->second) : "");
    }
    out << "\n";
  }
}

void emit_report(const SweepReport& report, const CliConfig& config,
                 std::ostream& out, const char* command) {
  switch (config.output) {
    case OutputFormat::csv:
      write_csv(report, out);
      break;
    case OutputFormat::json:
      write_json(report, out);
      break;
    case OutputFormat::text:
      print_header(out, config, command);
      out << "sweep: " << report.sweep_name;
      for (const auto& [key, value] : report.settings)
        out << "  " << key << "=" << format_number(value);
      out << "\n";
      render_report_text(report, out);
      break;
  }
}

std::vector<int> ascending_grid(int last) {
  std::vector<int> grid(static_cast<std::size_t>(last));
  std::iota(grid.begin(), grid.end(), 1);
  return grid;
}

void run_price(const CliConfig& config, std::ostream& out) {
  const bool american = config.option.style == ExerciseStyle::american;
  const double tree =
      american
          ? american_price_tree(config.model, config.params, config.option,
                                config.n, config.c)
          : european_price_tree(config.model, config.params, config.option,
                                config.n, config.c);
  const OptionSpec european{config.option.kind, ExerciseStyle::european,
                            config.option.strike};
  const double analytic = analytic_price(config.model, config.params, european);
  const double abs_error = std::abs(tree - analytic);

  if (config.output == OutputFormat::text) {
    print_header(out, config, "price");
    out << "n: " << config.n << "  c: " << format_number(config.c) << "\n"
        << "analytic price: " << fmt_price(analytic)
        << (american ? "  (european closed form)" : "") << "\n"
        << "tree price: " << fmt_price(tree) << "\n"
        << "abs error: " << fmt_price(abs_error) << "\n";
    return;
  }

  SweepReport report{config.model, config.params, config.option, "n",
                     {{"c", config.c}}, {}};
  SweepRow row;
  row.sweep_key = config.n;
  row.tree_price = tree;
  row.analytic_price = analytic;
  row.abs_error = abs_error;
  report.rows.push_back(std::move(row));
  emit_report(report, config, out, "price");
}

void run_cubature(const CliConfig& config, std::ostream& out) {
  const double cubature =
      cubature_single_step_price(config.model, config.params, config.option);
  const double analytic =
      analytic_price(config.model, config.params, config.option);
  const auto levels = cubature_terminal_levels(config.model, config.params);
  const auto& weights = degree5_formula().weights;
  const double abs_error = std::abs(cubature - analytic);

  if (config.output == OutputFormat::text) {
    print_header(out, config, "cubature");
    for (std::size_t i = 0; i < levels.size(); ++i)
      out << "level_" << i + 1 << ": " << fmt_price(levels[i]) << "  weight_"
          << i + 1 << ": " << format_number(weights[i]) << "\n";
    out << "cubature price: " << fmt_price(cubature) << "\n"
        << "analytic price: " << fmt_price(analytic) << "\n"
        << "abs error: " << fmt_price(abs_error) << "\n";
    return;
  }

  SweepReport report{config.model, config.params, config.option, "t", {}, {}};
  SweepRow row;
  row.sweep_key = config.params.maturity;
  row.tree_price = cubature;
  row.analytic_price = analytic;
  row.abs_error = abs_error;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    row.extra["level_" + std::to_string(i + 1)] = levels[i];
    row.extra["weight_" + std::to_string(i + 1)] = weights[i];
  }
  report.rows.push_back(std::move(row));
  emit_report(report, config, out, "cubature");
}

void dispatch(const CliConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::price:
      run_price(config, out);
      break;
    case Command::cubature:
      run_cubature(config, out);
      break;
    case Command::sweep_n: {
      const auto grid = config.n_grid ? *config.n_grid : ascending_grid(config.n);
      emit_report(sweep_n(config.model, config.params, config.option, grid,
                          config.c),
                  config, out, "sweep-n");
      break;
    }
    case Command::sweep_c: {
      const auto grid = config.c_grid ? *config.c_grid : kDefaultCGrid;
      emit_report(sweep_c(config.model, config.params, config.option, grid,
                          config.n),
                  config, out, "sweep-c");
      break;
    }
    case Command::martingale: {
      const auto grid = config.c_grid ? *config.c_grid : kDefaultCGrid;
      emit_report(martingale_table(config.params, grid, config.n), config, out,
                  "martingale");
      break;
    }
    case Command::american_compare: {
      const auto grid = config.n_grid ? *config.n_grid
                                      : ascending_grid(kDefaultAmericanMaxSteps);
      emit_report(american_compare(config.params, config.option, grid, config.c),
                  config, out, "american-compare");
      break;
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cubature-based trinomial lattice pricer for European and "
               "American options under Black-Scholes and Black-76"};
  app.require_subcommand(1);

  RawArgs raw;
  std::vector<std::pair<Command, OptionRefs>> commands;
  commands.emplace_back(Command::price,
                        add_common_options(
                            app.add_subcommand("price", "Price one option on the "
                                                        "lattice vs the closed form"),
                            raw));
  commands.emplace_back(
      Command::cubature,
      add_common_options(app.add_subcommand("cubature",
                                            "Single-period cubature price from the "
                                            "three-trajectory formula"),
                         raw));
  commands.emplace_back(
      Command::sweep_n,
      add_common_options(app.add_subcommand("sweep-n",
                                            "Tree vs analytic price over a grid of "
                                            "step counts"),
                         raw));
  commands.emplace_back(
      Command::sweep_c,
      add_common_options(app.add_subcommand("sweep-c",
                                            "Tree vs analytic price over a grid of "
                                            "spread parameters"),
                         raw));
  commands.emplace_back(
      Command::martingale,
      add_common_options(app.add_subcommand("martingale",
                                            "Martingale-condition gap per spread "
                                            "parameter"),
                         raw));
  commands.emplace_back(
      Command::american_compare,
      add_common_options(app.add_subcommand("american-compare",
                                            "American trinomial vs CRR prices over "
                                            "a grid of step counts"),
                         raw));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& parse_error) {
    err << "error: " << parse_error.what() << "\n";
    return 2;
  }

  try {
    const auto* active = std::find_if(commands.begin(), commands.end(),
                                      [](const auto& entry) {
                                        return entry.second.cmd->parsed();
                                      });
    if (!raw.config_path.empty()) apply_config_file(raw, active->second);
    const CliConfig config = resolve_config(active->first, raw);

    if (!config.output_path.empty()) {
      std::ofstream file(config.output_path);
      if (!file)
        throw std::runtime_error("cannot open output path '" +
                                 config.output_path + "'");
      dispatch(config, file);
      if (!file)
        throw std::runtime_error("failed writing output path '" +
                                 config.output_path + "'");
    } else {
      dispatch(config, out);
    }
    return 0;
  } catch (const ValidationError& validation) {
    err << "error: " << validation.what() << "\n";
    return 2;
  } catch (const std::exception& failure) {
    err << "error: " << failure.what() << "\n";
    return 1;
  }
}

}  // namespace cublat
