#include "bpbs/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <sstream>
#include <thread>

#include "bpbs/baselines.hpp"
#include "bpbs/csv.hpp"
#include "bpbs/posterior.hpp"
#include "bpbs/simbench.hpp"

namespace bpbs {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kDrawsFormatVersion = 1;

void apply_config_entry(ModelConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& context) {
  const double v = parse_double(value, context);
  if (key == "kappa") cfg.kappa = v;
  else if (key == "c_lambda") cfg.c_lambda = v;
  else if (key == "delta") cfg.delta = v;
  else if (key == "nu") cfg.nu = v;
  else if (key == "a_sigma") cfg.a_sigma = v;
  else if (key == "b_sigma") cfg.b_sigma = v;
  else if (key == "degree") cfg.degree = static_cast<int>(v);
  else if (key == "j_min") cfg.j_min = static_cast<int>(v);
  else if (key == "j_max") cfg.j_max = static_cast<int>(v);
  else if (key == "tau_grid_size") cfg.tau_grid_size = static_cast<int>(v);
  else if (key == "iterations") cfg.iterations = static_cast<int>(v);
  else if (key == "burnin") cfg.burnin = static_cast<int>(v);
  else if (key == "thin") cfg.thin = static_cast<int>(v);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(v);
  else throw std::runtime_error(context + ": unknown key '" + key + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

ModelConfig load_config_file(const std::string& path, const ModelConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  ModelConfig cfg = base;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string context = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw std::runtime_error(context + ": expected key = value");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                       context);
  }
  return cfg;
}

void save_draws(const std::string& path, const PosteriorDraws& draws,
                const std::string& method) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("draws: cannot write '" + path + "'");
  out << "bpbs-draws " << kDrawsFormatVersion << "\n";
  out << "method " << method << "\n";
  out << "degree " << draws.degree << "\n";
  out << "shift " << format_double(draws.shift) << "\n";
  out << "scale " << format_double(draws.scale) << "\n";
  out << "n " << draws.design_x.size() << "\n";
  out << "x";
  for (Eigen::Index i = 0; i < draws.design_x.size(); ++i)
    out << ' ' << format_double(draws.design_x[i]);
  out << "\n";
  out << "draws " << draws.draws.size() << "\n";
  for (const ChainState& st : draws.draws) {
    out << st.J << ' ' << format_double(st.sigma2) << ' '
        << format_double(st.lambda) << ' ' << format_double(st.tau) << ' '
        << format_double(st.theta1);
    for (Eigen::Index j = 0; j < st.theta.size(); ++j)
      out << ' ' << format_double(st.theta[j]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("draws: write to '" + path + "' failed");
}

LoadedDraws load_draws(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("draws: cannot open '" + path + "'");
  std::string tag;
  int version = -1;
  in >> tag >> version;
  if (!in || tag != "bpbs-draws")
    throw std::runtime_error("draws: '" + path + "' is not a draws file");
  if (version != kDrawsFormatVersion)
    throw std::runtime_error("draws: '" + path + "' has format version " +
                             std::to_string(version) + ", expected " +
                             std::to_string(kDrawsFormatVersion));
  LoadedDraws loaded;
  auto expect_key = [&](const std::string& key) {
    std::string got;
    in >> got;
    if (!in || got != key)
      throw std::runtime_error("draws: '" + path + "' missing field '" + key + "'");
  };
  expect_key("method");
  in >> loaded.method;
  expect_key("degree");
  in >> loaded.draws.degree;
  expect_key("shift");
  in >> loaded.draws.shift;
  expect_key("scale");
  in >> loaded.draws.scale;
  expect_key("n");
  Eigen::Index n = 0;
  in >> n;
  if (!in || n <= 0) throw std::runtime_error("draws: bad design size");
  expect_key("x");
  loaded.draws.design_x.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) in >> loaded.draws.design_x[i];
  expect_key("draws");
  size_t count = 0;
  in >> count;
  if (!in) throw std::runtime_error("draws: bad snapshot count");
  loaded.draws.draws.reserve(count);
  for (size_t s = 0; s < count; ++s) {
    ChainState st;
    in >> st.J >> st.sigma2 >> st.lambda >> st.tau >> st.theta1;
    if (!in || st.J < 2)
      throw std::runtime_error("draws: corrupt snapshot " + std::to_string(s));
    st.theta.resize(st.J - 1);
    for (int j = 0; j < st.J - 1; ++j) in >> st.theta[j];
    if (!in)
      throw std::runtime_error("draws: truncated snapshot " + std::to_string(s));
    loaded.draws.draws.push_back(std::move(st));
  }
  return loaded;
}

namespace {

struct FitOptions {
  std::string input;
  std::string x_col;
  std::string y_col;
  std::string method = "proposed";
  std::string out_dir = ".";
  std::string config_file;
  int grid_size = 1001;
  double level = 0.95;
  bool log_response = false;
  bool standardize_response = false;
  bool save_draws_flag = false;
};

struct SummaryFiles {
  Eigen::VectorXd grid;
  CurveSummary curve;
  CurveSummary deriv1;
  CurveSummary deriv2;
};

void write_curve_csv(const std::string& path, const CurveSummary& curve) {
  CsvWriter csv(path, {"x", "mean", "lower", "upper"});
  for (Eigen::Index i = 0; i < curve.grid.size(); ++i)
    csv.write_row({format_double(curve.grid[i]), format_double(curve.mean[i]),
                   format_double(curve.lower[i]), format_double(curve.upper[i])});
}

void write_derivatives_csv(const std::string& path, const CurveSummary& d1,
                           const CurveSummary& d2) {
  CsvWriter csv(path, {"x", "d1_mean", "d1_lower", "d1_upper", "d2_mean",
                       "d2_lower", "d2_upper"});
  for (Eigen::Index i = 0; i < d1.grid.size(); ++i)
    csv.write_row({format_double(d1.grid[i]), format_double(d1.mean[i]),
                   format_double(d1.lower[i]), format_double(d1.upper[i]),
                   format_double(d2.mean[i]), format_double(d2.lower[i]),
                   format_double(d2.upper[i])});
}

void write_model_size_csv(const std::string& path,
                          const ModelSizeSummary& sizes) {
  CsvWriter csv(path, {"J", "probability"});
  for (const auto& [J, mass] : sizes.histogram)
    csv.write_row({std::to_string(J), format_double(mass)});
}

bool dimension_selecting(const std::string& method) {
  return method == "proposed" || method == "bbs-zs" || method == "bpswbs";
}

SummaryFiles summarize_fit(const FitResult& fit, int grid_size, double level) {
  SummaryFiles out;
  out.grid = Eigen::VectorXd::LinSpaced(grid_size, 0.0, 1.0);
  out.curve = fit.curve(out.grid, 0, level);
  out.deriv1 = fit.curve(out.grid, 1, level);
  out.deriv2 = fit.curve(out.grid, 2, level);
  return out;
}

int cmd_fit(const FitOptions& opt, const ModelConfig& cfg_in) {
  const auto start = std::chrono::steady_clock::now();
  const CsvFile csv = read_csv(opt.input);
  const Eigen::VectorXd x_raw = csv.numeric_column(opt.x_col);
  Eigen::VectorXd y = csv.numeric_column(opt.y_col);
  const Eigen::Index n = x_raw.size();
  if (n < 3) throw std::runtime_error("fit: need at least 3 rows");

  const double x_min = x_raw.minCoeff();
  const double x_max = x_raw.maxCoeff();
  if (!(x_max > x_min))
    throw std::runtime_error("fit: predictor '" + opt.x_col +
                             "' is constant (min = max); nothing to fit");
  if (opt.log_response) {
    if (y.minCoeff() <= 0.0)
      throw std::runtime_error("fit: --log-response requires positive responses");
    y = y.array().log();
  }
  double shift_out = 0.0, scale_out = 1.0;
  if (opt.standardize_response) {
    shift_out = y.mean();
    scale_out = std::sqrt((y.array() - shift_out).square().sum() / (n - 1));
    if (!(scale_out > 0.0)) throw std::runtime_error("fit: constant response");
    y = (y.array() - shift_out) / scale_out;
  }

  // min-max rescale of the predictor onto the model domain, sorted ascending
  Eigen::VectorXd xs = (x_raw.array() - x_min) / (x_max - x_min);
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return xs[a] < xs[b]; });
  Eigen::VectorXd x_fit(n), y_fit(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x_fit[i] = xs[order[static_cast<size_t>(i)]];
    y_fit[i] = y[order[static_cast<size_t>(i)]];
  }

  if (!method_known(opt.method)) {
    std::string msg = "fit: unknown method '" + opt.method + "'; valid tags:";
    for (const auto& t : method_tags()) msg += " " + t;
    throw std::runtime_error(msg);
  }
  if (opt.save_draws_flag && (opt.method == "ps30" || opt.method == "ps60"))
    throw std::runtime_error("fit: --save-draws applies to sampler-based methods only");

  FitResult fit = run_method(opt.method, x_fit, y_fit, cfg_in);
  if (fit.draws && opt.standardize_response) {
    fit.draws->shift = shift_out + scale_out * fit.draws->shift;
    fit.draws->scale *= scale_out;
  }
  if (fit.ps && opt.standardize_response) {
    // f and 1 share the span: fold the affine back-transform into the
    // coefficients via the partition of unity
    fit.ps->coef = (scale_out * fit.ps->coef).array() + shift_out;
    fit.ps->coef_cov *= scale_out * scale_out;
  }

  fs::create_directories(opt.out_dir);
  const SummaryFiles files = summarize_fit(fit, opt.grid_size, opt.level);
  write_curve_csv(opt.out_dir + "/curve.csv", files.curve);
  write_derivatives_csv(opt.out_dir + "/derivatives.csv", files.deriv1,
                        files.deriv2);
  if (fit.draws)
    write_model_size_csv(opt.out_dir + "/model_size.csv",
                         model_size_summary(*fit.draws));
  if (opt.save_draws_flag)
    save_draws(opt.out_dir + "/draws.txt", *fit.draws, opt.method);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const ModelConfig resolved = cfg_in.resolved(static_cast<int>(n));
  json meta;
  meta["method"] = opt.method;
  meta["input"] = opt.input;
  meta["n"] = n;
  meta["x_column"] = opt.x_col;
  meta["y_column"] = opt.y_col;
  meta["x_min"] = x_min;
  meta["x_max"] = x_max;
  meta["log_response"] = opt.log_response;
  meta["standardize_response"] = opt.standardize_response;
  meta["grid_size"] = opt.grid_size;
  meta["level"] = opt.level;
  meta["seconds"] = seconds;
  meta["config"] = {
      {"kappa", resolved.kappa},       {"c_lambda", resolved.c_lambda},
      {"delta", resolved.delta},       {"nu", resolved.nu},
      {"a_sigma", resolved.a_sigma},   {"b_sigma", resolved.b_sigma},
      {"degree", resolved.degree},     {"j_min", resolved.j_min},
      {"j_max", resolved.j_max},       {"tau_grid_size", resolved.tau_grid_size},
      {"iterations", resolved.iterations}, {"burnin", resolved.burnin},
      {"thin", resolved.thin},         {"seed", resolved.seed}};
  if (fit.draws) {
    meta["snapshots"] = fit.draws->draws.size();
    if (fit.draws->dimension_proposals > 0)
      meta["dimension_acceptance_rate"] = fit.draws->dimension_acceptance_rate();
    meta["response_shift"] = fit.draws->shift;
    meta["response_scale"] = fit.draws->scale;
  }
  if (fit.ps) {
    meta["gcv_lambda"] = fit.ps->lambda;
    meta["effective_df"] = fit.ps->edf;
    meta["sigma2_hat"] = fit.ps->sigma2_hat;
  }
  std::ofstream meta_out(opt.out_dir + "/meta.json", std::ios::binary);
  meta_out << meta.dump(2) << "\n";
  if (!meta_out) throw std::runtime_error("fit: cannot write meta.json");
  return 0;
}

struct SummarizeOptions {
  std::string draws_path;
  std::string out_dir = ".";
  int grid_size = 1001;
  double level = 0.95;
  std::vector<double> grid_points;  // explicit grid overrides grid_size
};

int cmd_summarize(const SummarizeOptions& opt) {
  const LoadedDraws loaded = load_draws(opt.draws_path);
  Eigen::VectorXd grid;
  if (!opt.grid_points.empty()) {
    grid = Eigen::Map<const Eigen::VectorXd>(
        opt.grid_points.data(), static_cast<Eigen::Index>(opt.grid_points.size()));
  } else {
    grid = Eigen::VectorXd::LinSpaced(opt.grid_size, 0.0, 1.0);
  }
  fs::create_directories(opt.out_dir);
  write_curve_csv(opt.out_dir + "/curve.csv",
                  curve_summary(loaded.draws, grid, opt.level));
  write_derivatives_csv(opt.out_dir + "/derivatives.csv",
                        derivative_summary(loaded.draws, grid, 1, opt.level),
                        derivative_summary(loaded.draws, grid, 2, opt.level));
  if (dimension_selecting(loaded.method))
    write_model_size_csv(opt.out_dir + "/model_size.csv",
                         model_size_summary(loaded.draws));
  return 0;
}

struct SimulateOptions {
  std::string function = "f2";
  int n = 200;
  double sigma = 0.5;
  int reps = 20;
  std::string methods_csv;
  std::string scenarios_file;
  bool desk = false;
  int parallelism = 0;
  std::string out_dir = ".";
};

std::vector<std::string> split_tags(const std::string& csv_list) {
  std::vector<std::string> tags;
  std::stringstream ss(csv_list);
  std::string tag;
  while (std::getline(ss, tag, ','))
    if (!trim(tag).empty()) tags.push_back(trim(tag));
  return tags;
}

std::vector<Scenario> parse_scenarios_file(const std::string& path,
                                           std::uint64_t base_seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scenarios: cannot open '" + path + "'");
  std::vector<Scenario> scenarios;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    Scenario sc;
    sc.base_seed = base_seed;
    sc.methods = method_tags();
    std::stringstream ss(line);
    std::string token;
    const std::string context = path + ":" + std::to_string(lineno);
    while (ss >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error(context + ": field '" + token +
                                 "' is not key=value");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "function") sc.function = value;
      else if (key == "n") sc.n = static_cast<int>(parse_double(value, context));
      else if (key == "sigma") sc.sigma = parse_double(value, context);
      else if (key == "reps")
        sc.replications = static_cast<int>(parse_double(value, context));
      else if (key == "methods") sc.methods = split_tags(value);
      else if (key == "seed")
        sc.base_seed = static_cast<std::uint64_t>(parse_double(value, context));
      else throw std::runtime_error(context + ": unknown field '" + key + "'");
    }
    if (sc.function != "f1" && sc.function != "f2" && sc.function != "f3")
      throw std::runtime_error(context + ": function must be f1, f2, or f3");
    if (!(sc.sigma > 0.0))
      throw std::runtime_error(context + ": sigma must be positive");
    if (sc.n < 10) throw std::runtime_error(context + ": n must be >= 10");
    if (sc.replications < 1)
      throw std::runtime_error(context + ": reps must be >= 1");
    scenarios.push_back(std::move(sc));
  }
  if (scenarios.empty())
    throw std::runtime_error("scenarios: '" + path + "' defines no scenarios");
  return scenarios;
}

int cmd_simulate(const SimulateOptions& opt, const ModelConfig& cfg) {
  std::vector<Scenario> scenarios;
  if (opt.desk) {
    scenarios = desk_scale_scenarios(opt.reps, cfg.seed);
  } else if (!opt.scenarios_file.empty()) {
    scenarios = parse_scenarios_file(opt.scenarios_file, cfg.seed);
  } else {
    Scenario sc;
    sc.function = opt.function;
    sc.n = opt.n;
    sc.sigma = opt.sigma;
    sc.replications = opt.reps;
    sc.base_seed = cfg.seed;
    sc.methods = opt.methods_csv.empty() ? method_tags()
                                         : split_tags(opt.methods_csv);
    if (sc.function != "f1" && sc.function != "f2" && sc.function != "f3")
      throw std::runtime_error("simulate: function must be f1, f2, or f3");
    if (!(sc.sigma > 0.0))
      throw std::runtime_error("simulate: sigma must be positive");
    if (sc.n < 10) throw std::runtime_error("simulate: n must be >= 10");
    if (sc.replications < 1)
      throw std::runtime_error("simulate: reps must be >= 1");
    scenarios.push_back(std::move(sc));
  }
  const int parallelism =
      opt.parallelism > 0
          ? opt.parallelism
          : std::max(1u, std::thread::hardware_concurrency());
  const BenchmarkResult result = run_benchmark(scenarios, cfg, parallelism);
  fs::create_directories(opt.out_dir);
  write_results_csv(opt.out_dir + "/results.csv", result);
  write_aggregates_csv(opt.out_dir + "/aggregates.csv", result);
  write_long_csv(opt.out_dir + "/long.csv", result);
  write_timing_csv(opt.out_dir + "/timing.csv", result);
  int failures = 0;
  for (const BenchmarkRow& row : result.rows)
    if (!row.ok) {
      ++failures;
      std::cerr << "replication failed: " << row.function << " n=" << row.n
                << " sigma=" << row.sigma << " " << row.method << " rep "
                << row.replication << ": " << row.error << "\n";
    }
  std::cout << "wrote " << result.rows.size() << " replication rows ("
            << failures << " failed), " << result.aggregates.size()
            << " aggregate rows to " << opt.out_dir << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Bayesian spline regression with a fused roughness and "
               "basis-selection prior"};
  app.require_subcommand(1);

  ModelConfig cfg;
  if (const char* env_seed = std::getenv("BPBS_SEED"))
    cfg.seed = static_cast<std::uint64_t>(std::strtoull(env_seed, nullptr, 10));

  std::string config_file;
  auto add_config_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "flat key = value configuration file");
    sub->add_option("--kappa", cfg.kappa, "prior sd scale of the global mean");
    sub->add_option("--c-lambda", cfg.c_lambda, "exponential rate on the dispersion");
    sub->add_option("--delta", cfg.delta, "mixing-weight support truncation");
    sub->add_option("--nu", cfg.nu, "geometric decay of the dimension prior");
    sub->add_option("--a-sigma", cfg.a_sigma, "variance prior shape");
    sub->add_option("--b-sigma", cfg.b_sigma, "variance prior rate");
    sub->add_option("--degree", cfg.degree, "spline degree");
    sub->add_option("--j-min", cfg.j_min, "smallest basis dimension");
    sub->add_option("--j-max", cfg.j_max, "largest basis dimension (0 = min(n,150))");
    sub->add_option("--tau-grid", cfg.tau_grid_size, "mixing-weight grid size");
    sub->add_option("--iterations", cfg.iterations, "MCMC sweeps");
    sub->add_option("--burnin", cfg.burnin, "discarded initial sweeps");
    sub->add_option("--thin", cfg.thin, "snapshot thinning");
    sub->add_option("--seed", cfg.seed, "base RNG seed (overrides BPBS_SEED)");
  };

  FitOptions fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a model to CSV data");
  fit_cmd->add_option("--input", fit.input, "input CSV path")->required();
  fit_cmd->add_option("--x", fit.x_col, "predictor column name")->required();
  fit_cmd->add_option("--y", fit.y_col, "response column name")->required();
  fit_cmd->add_option("--method", fit.method, "method tag (default proposed)");
  fit_cmd->add_option("--out", fit.out_dir, "output directory");
  fit_cmd->add_option("--grid", fit.grid_size, "evaluation grid size")
      ->check(CLI::Range(2, 1000000));
  fit_cmd->add_option("--level", fit.level, "credible band level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));
  fit_cmd->add_flag("--log-response", fit.log_response,
                    "log-transform the response before fitting");
  fit_cmd->add_flag("--standardize-response", fit.standardize_response,
                    "standardize the response before fitting");
  fit_cmd->add_flag("--save-draws", fit.save_draws_flag,
                    "persist posterior draws next to the summaries");
  add_config_options(fit_cmd);

  SimulateOptions sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "run the simulation benchmark");
  sim_cmd->add_option("--function", sim.function, "test function (f1|f2|f3)");
  sim_cmd->add_option("--n", sim.n, "sample size");
  sim_cmd->add_option("--sigma", sim.sigma, "noise standard deviation");
  sim_cmd->add_option("--reps", sim.reps, "replications per scenario");
  sim_cmd->add_option("--methods", sim.methods_csv,
                      "comma-separated method tags (default: all)");
  sim_cmd->add_option("--scenarios", sim.scenarios_file,
                      "scenario spec file (one scenario per line)");
  sim_cmd->add_flag("--desk", sim.desk,
                    "full desk-scale preset: f1-f3, all scenarios, all methods");
  sim_cmd->add_option("--parallelism", sim.parallelism,
                      "concurrent replications (default: hardware)");
  sim_cmd->add_option("--out", sim.out_dir, "output directory");
  add_config_options(sim_cmd);

  SummarizeOptions sum;
  CLI::App* sum_cmd = app.add_subcommand(
      "summarize", "recompute summaries from a saved draws file");
  sum_cmd->add_option("--draws", sum.draws_path, "draws file from fit --save-draws")
      ->required();
  sum_cmd->add_option("--out", sum.out_dir, "output directory");
  sum_cmd->add_option("--grid", sum.grid_size, "evaluation grid size")
      ->check(CLI::Range(2, 1000000));
  sum_cmd->add_option("--grid-points", sum.grid_points,
                      "explicit evaluation points in [0,1]");
  sum_cmd->add_option("--level", sum.level, "credible band level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    // config file values fill in only where no flag was given (flags win)
    if (!config_file.empty()) {
      ModelConfig defaults;
      if (const char* env_seed = std::getenv("BPBS_SEED"))
        defaults.seed =
            static_cast<std::uint64_t>(std::strtoull(env_seed, nullptr, 10));
      const ModelConfig from_file = load_config_file(config_file, defaults);
      CLI::App* active = app.get_subcommands().front();
      auto keep_flag = [&](const std::string& flag, auto member) {
        if (active->count(flag) == 0) cfg.*member = from_file.*member;
      };
      keep_flag("--kappa", &ModelConfig::kappa);
      keep_flag("--c-lambda", &ModelConfig::c_lambda);
      keep_flag("--delta", &ModelConfig::delta);
      keep_flag("--nu", &ModelConfig::nu);
      keep_flag("--a-sigma", &ModelConfig::a_sigma);
      keep_flag("--b-sigma", &ModelConfig::b_sigma);
      keep_flag("--degree", &ModelConfig::degree);
      keep_flag("--j-min", &ModelConfig::j_min);
      keep_flag("--j-max", &ModelConfig::j_max);
      keep_flag("--tau-grid", &ModelConfig::tau_grid_size);
      keep_flag("--iterations", &ModelConfig::iterations);
      keep_flag("--burnin", &ModelConfig::burnin);
      keep_flag("--thin", &ModelConfig::thin);
      keep_flag("--seed", &ModelConfig::seed);
    }
    if (app.got_subcommand(fit_cmd)) return cmd_fit(fit, cfg);
    if (app.got_subcommand(sim_cmd)) return cmd_simulate(sim, cfg);
    if (app.got_subcommand(sum_cmd)) return cmd_summarize(sum);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("bpbs");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace bpbs
