#include "bpbs/simbench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "bpbs/csv.hpp"
#include "bpbs/rng.hpp"

namespace bpbs {

namespace {

double normal_pdf(double x, double mu, double sd) {
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double f3_value(double x, int order) {
  // bump difference + smoothed step
  const double s1 = 0.1, s2 = 0.1;
  const double p1 = normal_pdf(x, 0.3, s1);
  const double p2 = normal_pdf(x, 0.7, s2);
  const double z1 = (x - 0.3) / (s1 * s1);
  const double z2 = (x - 0.7) / (s2 * s2);
  const double s = logistic(100.0 * (x - 0.5));
  switch (order) {
    case 0:
      return (p1 - p2) / 3.0 + 2.0 * s / 3.0;
    case 1:
      return (-z1 * p1 + z2 * p2) / 3.0 + (200.0 / 3.0) * s * (1.0 - s);
    default:
      return ((z1 * z1 - 1.0 / (s1 * s1)) * p1 -
              (z2 * z2 - 1.0 / (s2 * s2)) * p2) /
                 3.0 +
             (20000.0 / 3.0) * s * (1.0 - s) * (1.0 - 2.0 * s);
  }
}

std::uint64_t tag_bits(const std::string& tag) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t sigma_bits(double sigma) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(sigma));
  std::memcpy(&bits, &sigma, sizeof(bits));
  return bits;
}

}  // namespace

double eval_test_function(const std::string& tag, double x, int order) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (tag == "f1") return std::exp(x);
  if (tag == "f2") {
    switch (order) {
      case 0: return 1.0 + std::sin(two_pi * x);
      case 1: return two_pi * std::cos(two_pi * x);
      default: return -two_pi * two_pi * std::sin(two_pi * x);
    }
  }
  if (tag == "f3") return f3_value(x, order);
  throw std::invalid_argument("unknown test function '" + tag + "'");
}

std::uint64_t dataset_seed(const Scenario& sc, int replication) {
  return mix_seed(sc.base_seed, tag_bits(sc.function) ^ static_cast<std::uint64_t>(sc.n),
                  sigma_bits(sc.sigma), static_cast<std::uint64_t>(replication));
}

std::uint64_t chain_seed(const Scenario& sc, const std::string& method,
                         int replication) {
  return mix_seed(dataset_seed(sc, replication), tag_bits(method));
}

Dataset generate_dataset(const Scenario& sc, int replication) {
  if (sc.n < 10) throw std::invalid_argument("scenario: n must be >= 10");
  if (!(sc.sigma > 0.0)) throw std::invalid_argument("scenario: sigma must be positive");
  RngStream rng(dataset_seed(sc, replication));
  Eigen::VectorXd x(sc.n), noise(sc.n);
  for (int i = 0; i < sc.n; ++i) x[i] = rng.uniform_open();
  for (int i = 0; i < sc.n; ++i) noise[i] = sc.sigma * rng.normal();

  std::vector<int> order(static_cast<size_t>(sc.n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return x[a] < x[b]; });
  Dataset data;
  data.x.resize(sc.n);
  data.y.resize(sc.n);
  for (int i = 0; i < sc.n; ++i) {
    data.x[i] = x[order[static_cast<size_t>(i)]];
    data.y[i] = eval_test_function(sc.function, data.x[i]) +
                noise[order[static_cast<size_t>(i)]];
  }
  return data;
}

Eigen::VectorXd coverage_points() {
  Eigen::VectorXd pts(10);
  for (int i = 0; i < 10; ++i) pts[i] = 0.05 + 0.1 * i;
  return pts;
}

Eigen::VectorXd metric_grid(int size) {
  return Eigen::VectorXd::LinSpaced(size, 0.0, 1.0);
}

MethodFit reduce_fit(const FitResult& fit, const Eigen::VectorXd& grid,
                     double level) {
  MethodFit out;
  out.grid = grid;
  out.mean_f = fit.mean(grid, 0);
  out.mean_d1 = fit.mean(grid, 1);
  out.mean_d2 = fit.mean(grid, 2);
  out.cov_points = coverage_points();
  const CurveSummary band = fit.curve(out.cov_points, 0, level);
  out.cov_lower = band.lower;
  out.cov_upper = band.upper;
  out.mean_J = fit.mean_dimension();
  return out;
}

MetricRecord compute_metrics(const MethodFit& fit,
                             const std::string& function_tag) {
  const Eigen::Index G = fit.grid.size();
  if (fit.mean_f.size() != G || fit.mean_d1.size() != G ||
      fit.mean_d2.size() != G)
    throw std::invalid_argument("metrics: grid/curve length mismatch");
  if (fit.cov_lower.size() != fit.cov_points.size() ||
      fit.cov_upper.size() != fit.cov_points.size())
    throw std::invalid_argument("metrics: coverage band length mismatch");

  MetricRecord rec;
  double sum_f = 0.0, sum_d1 = 0.0, sum_d2 = 0.0;
  Eigen::Index interior = 0;
  for (Eigen::Index g = 0; g < G; ++g) {
    const double x = fit.grid[g];
    const double e0 = fit.mean_f[g] - eval_test_function(function_tag, x, 0);
    sum_f += e0 * e0;
    if (x > 0.01 && x < 0.99) {
      const double e1 = fit.mean_d1[g] - eval_test_function(function_tag, x, 1);
      const double e2 = fit.mean_d2[g] - eval_test_function(function_tag, x, 2);
      sum_d1 += e1 * e1;
      sum_d2 += e2 * e2;
      ++interior;
    }
  }
  rec.mse_f = sum_f / static_cast<double>(G);
  rec.mse_d1 = sum_d1 / static_cast<double>(interior);
  rec.mse_d2 = sum_d2 / static_cast<double>(interior);

  rec.coverage.resize(fit.cov_points.size());
  for (Eigen::Index i = 0; i < fit.cov_points.size(); ++i) {
    const double truth = eval_test_function(function_tag, fit.cov_points[i], 0);
    rec.coverage[i] =
        (truth >= fit.cov_lower[i] && truth <= fit.cov_upper[i]) ? 1.0 : 0.0;
  }
  rec.mean_J = fit.mean_J;
  return rec;
}

namespace {

struct Task {
  int scenario = 0;
  int method = 0;
  int replication = 0;
};

BenchmarkRow run_task(const Scenario& sc, const std::string& method,
                      int replication, const ModelConfig& base_cfg) {
  BenchmarkRow row;
  row.function = sc.function;
  row.n = sc.n;
  row.sigma = sc.sigma;
  row.method = method;
  row.replication = replication;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Dataset data = generate_dataset(sc, replication);
    ModelConfig cfg = base_cfg;
    cfg.seed = chain_seed(sc, method, replication);
    const FitResult fit = run_method(method, data.x, data.y, cfg);
    row.metrics = compute_metrics(reduce_fit(fit, metric_grid()), sc.function);
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  row.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

double median(std::vector<double> v) {
  const size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(m), v.end());
  double hi = v[m];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(m) - 1, v.end());
  return 0.5 * (hi + v[m - 1]);
}

}  // namespace

BenchmarkResult run_benchmark(const std::vector<Scenario>& scenarios,
                              const ModelConfig& cfg, int parallelism) {
  std::vector<Task> tasks;
  for (int s = 0; s < static_cast<int>(scenarios.size()); ++s) {
    const Scenario& sc = scenarios[static_cast<size_t>(s)];
    if (sc.replications < 1)
      throw std::invalid_argument("scenario: replications must be >= 1");
    if (sc.methods.empty())
      throw std::invalid_argument("scenario: no methods registered");
    for (const std::string& m : sc.methods)
      if (!method_known(m))
        throw std::invalid_argument("scenario: unknown method '" + m + "'");
    for (int m = 0; m < static_cast<int>(sc.methods.size()); ++m)
      for (int r = 0; r < sc.replications; ++r) tasks.push_back({s, m, r});
  }

  BenchmarkResult result;
  result.rows.resize(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      const Scenario& sc = scenarios[static_cast<size_t>(t.scenario)];
      result.rows[i] = run_task(sc, sc.methods[static_cast<size_t>(t.method)],
                                t.replication, cfg);
    }
  };
  const int workers = std::max(
      1, std::min<int>(parallelism, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // Aggregate over replications, task order preserved.
  size_t row_idx = 0;
  for (const Scenario& sc : scenarios) {
    for (const std::string& method : sc.methods) {
      AggregateRow agg;
      agg.function = sc.function;
      agg.n = sc.n;
      agg.sigma = sc.sigma;
      agg.method = method;
      agg.mean_coverage = Eigen::VectorXd::Zero(coverage_points().size());
      std::vector<double> dims;
      for (int r = 0; r < sc.replications; ++r) {
        const BenchmarkRow& row = result.rows[row_idx++];
        if (!row.ok) {
          ++agg.failed;
          continue;
        }
        ++agg.completed;
        agg.mean_log_mse_f += std::log(row.metrics.mse_f);
        agg.mean_log_mse_d1 += std::log(row.metrics.mse_d1);
        agg.mean_log_mse_d2 += std::log(row.metrics.mse_d2);
        agg.mean_coverage += row.metrics.coverage;
        if (row.metrics.mean_J) dims.push_back(*row.metrics.mean_J);
      }
      if (agg.completed > 0) {
        agg.mean_log_mse_f /= agg.completed;
        agg.mean_log_mse_d1 /= agg.completed;
        agg.mean_log_mse_d2 /= agg.completed;
        agg.mean_coverage /= agg.completed;
      }
      if (!dims.empty()) {
        agg.mean_mean_J =
            std::accumulate(dims.begin(), dims.end(), 0.0) / dims.size();
        agg.median_mean_J = median(dims);
      }
      result.aggregates.push_back(std::move(agg));
    }
  }
  return result;
}

std::vector<Scenario> desk_scale_scenarios(int replications,
                                           std::uint64_t base_seed) {
  std::vector<Scenario> scenarios;
  for (const char* f : {"f1", "f2", "f3"})
    for (int n : {200, 500, 1000})
      for (double sigma : {0.1, 0.5}) {
        Scenario sc;
        sc.function = f;
        sc.n = n;
        sc.sigma = sigma;
        sc.replications = replications;
        sc.methods = method_tags();
        sc.base_seed = base_seed;
        scenarios.push_back(std::move(sc));
      }
  return scenarios;
}

namespace {

std::vector<std::string> results_header() {
  std::vector<std::string> h = {"function", "n",           "sigma",
                                "method",   "replication", "status",
                                "mse_f",    "mse_d1",      "mse_d2"};
  const Eigen::VectorXd pts = coverage_points();
  for (Eigen::Index i = 0; i < pts.size(); ++i)
    h.push_back("coverage_" + format_double(pts[i]));
  h.push_back("mean_J");
  return h;
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

}  // namespace

void write_results_csv(const std::string& path, const BenchmarkResult& result) {
  CsvWriter csv(path, results_header());
  for (const BenchmarkRow& row : result.rows) {
    std::vector<std::string> cells = {
        row.function,
        std::to_string(row.n),
        format_double(row.sigma),
        row.method,
        std::to_string(row.replication),
        row.ok ? "ok" : "failed: " + sanitize(row.error),
    };
    if (row.ok) {
      cells.push_back(format_double(row.metrics.mse_f));
      cells.push_back(format_double(row.metrics.mse_d1));
      cells.push_back(format_double(row.metrics.mse_d2));
      for (Eigen::Index i = 0; i < row.metrics.coverage.size(); ++i)
        cells.push_back(format_double(row.metrics.coverage[i]));
      cells.push_back(row.metrics.mean_J ? format_double(*row.metrics.mean_J)
                                         : "");
    } else {
      for (size_t i = 6; i < results_header().size(); ++i) cells.push_back("");
    }
    csv.write_row(cells);
  }
}

void write_aggregates_csv(const std::string& path,
                          const BenchmarkResult& result) {
  std::vector<std::string> header = {
      "function", "n",          "sigma",           "method",
      "completed", "failed",    "mean_log_mse_f",  "mean_log_mse_d1",
      "mean_log_mse_d2"};
  const Eigen::VectorXd pts = coverage_points();
  for (Eigen::Index i = 0; i < pts.size(); ++i)
    header.push_back("mean_coverage_" + format_double(pts[i]));
  header.push_back("mean_mean_J");
  header.push_back("median_mean_J");
  CsvWriter csv(path, header);
  for (const AggregateRow& agg : result.aggregates) {
    std::vector<std::string> cells = {
        agg.function,
        std::to_string(agg.n),
        format_double(agg.sigma),
        agg.method,
        std::to_string(agg.completed),
        std::to_string(agg.failed),
        format_double(agg.mean_log_mse_f),
        format_double(agg.mean_log_mse_d1),
        format_double(agg.mean_log_mse_d2),
    };
    for (Eigen::Index i = 0; i < agg.mean_coverage.size(); ++i)
      cells.push_back(format_double(agg.mean_coverage[i]));
    cells.push_back(agg.mean_mean_J ? format_double(*agg.mean_mean_J) : "");
    cells.push_back(agg.median_mean_J ? format_double(*agg.median_mean_J) : "");
    csv.write_row(cells);
  }
}

void write_long_csv(const std::string& path, const BenchmarkResult& result) {
  CsvWriter csv(path, {"function", "n", "sigma", "method", "metric", "value"});
  const Eigen::VectorXd pts = coverage_points();
  for (const AggregateRow& agg : result.aggregates) {
    if (agg.completed == 0) continue;
    const std::vector<std::string> prefix = {agg.function,
                                             std::to_string(agg.n),
                                             format_double(agg.sigma),
                                             agg.method};
    auto emit = [&](const std::string& metric, double value) {
      std::vector<std::string> cells = prefix;
      cells.push_back(metric);
      cells.push_back(format_double(value));
      csv.write_row(cells);
    };
    emit("log_mse_f", agg.mean_log_mse_f);
    emit("log_mse_d1", agg.mean_log_mse_d1);
    emit("log_mse_d2", agg.mean_log_mse_d2);
    for (Eigen::Index i = 0; i < pts.size(); ++i)
      emit("coverage_" + format_double(pts[i]), agg.mean_coverage[i]);
    if (agg.mean_mean_J) emit("mean_J", *agg.mean_mean_J);
  }
}

void write_timing_csv(const std::string& path, const BenchmarkResult& result) {
  CsvWriter csv(path,
                {"function", "n", "sigma", "method", "replication", "seconds"});
  for (const BenchmarkRow& row : result.rows)
    csv.write_row({row.function, std::to_string(row.n), format_double(row.sigma),
                   row.method, std::to_string(row.replication),
                   format_double(row.seconds)});
}

}  // namespace bpbs
