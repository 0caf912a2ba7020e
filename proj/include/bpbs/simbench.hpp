#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "bpbs/baselines.hpp"
#include "bpbs/model.hpp"

namespace bpbs {

/// Closed-form test function value (order 0) or derivative (orders 1, 2)
/// for tags f1, f2, f3.
double eval_test_function(const std::string& tag, double x, int order = 0);

struct Scenario {
  std::string function = "f2";
  int n = 200;
  double sigma = 0.5;
  int replications = 20;
  std::vector<std::string> methods;
  std::uint64_t base_seed = 90210;
};

struct Dataset {
  Eigen::VectorXd x;  // sorted ascending
  Eigen::VectorXd y;
};

/// Uniform design on (0,1) with Gaussian noise around the scenario's test
/// function; deterministic in (scenario, replication).
Dataset generate_dataset(const Scenario& scenario, int replication);

std::uint64_t dataset_seed(const Scenario& scenario, int replication);
std::uint64_t chain_seed(const Scenario& scenario, const std::string& method,
                         int replication);

/// Evaluation points at which coverage of the 95% band is scored.
Eigen::VectorXd coverage_points();

/// Equispaced metric grid on [0,1].
Eigen::VectorXd metric_grid(int size = 1001);

/// Fitted curves reduced to what the metrics need: posterior-mean curves of
/// orders 0-2 on the metric grid and the band at the coverage points.
struct MethodFit {
  Eigen::VectorXd grid;
  Eigen::VectorXd mean_f;
  Eigen::VectorXd mean_d1;
  Eigen::VectorXd mean_d2;
  Eigen::VectorXd cov_points;
  Eigen::VectorXd cov_lower;
  Eigen::VectorXd cov_upper;
  std::optional<double> mean_J;
};

MethodFit reduce_fit(const FitResult& fit, const Eigen::VectorXd& grid,
                     double level = 0.95);

struct MetricRecord {
  double mse_f = 0.0;
  double mse_d1 = 0.0;  // truncated to (0.01, 0.99)
  double mse_d2 = 0.0;  // truncated to (0.01, 0.99)
  Eigen::VectorXd coverage;  // one indicator per coverage point
  std::optional<double> mean_J;
};

MetricRecord compute_metrics(const MethodFit& fit,
                             const std::string& function_tag);

struct BenchmarkRow {
  std::string function;
  int n = 0;
  double sigma = 0.0;
  std::string method;
  int replication = 0;
  bool ok = false;
  std::string error;
  MetricRecord metrics;
  double seconds = 0.0;
};

struct AggregateRow {
  std::string function;
  int n = 0;
  double sigma = 0.0;
  std::string method;
  int completed = 0;
  int failed = 0;
  double mean_log_mse_f = 0.0;
  double mean_log_mse_d1 = 0.0;
  double mean_log_mse_d2 = 0.0;
  Eigen::VectorXd mean_coverage;
  std::optional<double> mean_mean_J;
  std::optional<double> median_mean_J;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;        // one per (scenario, method, replication)
  std::vector<AggregateRow> aggregates;  // one per (scenario, method)
};

/// Runs every (scenario, method, replication) cell, up to `parallelism`
/// concurrently. Rows keep the deterministic task order; failures are
/// flagged per row and excluded from aggregates.
BenchmarkResult run_benchmark(const std::vector<Scenario>& scenarios,
                              const ModelConfig& cfg, int parallelism);

/// Full desk-scale preset: f1-f3 x {200,500,1000} x {0.1,0.5}, all methods.
std::vector<Scenario> desk_scale_scenarios(int replications,
                                           std::uint64_t base_seed);

void write_results_csv(const std::string& path, const BenchmarkResult& result);
void write_aggregates_csv(const std::string& path,
                          const BenchmarkResult& result);
/// Plot-ready long format: one (scenario, method, metric, value) per line.
void write_long_csv(const std::string& path, const BenchmarkResult& result);
/// Wall-clock diagnostics; kept out of the result tables so those stay
/// bitwise reproducible.
void write_timing_csv(const std::string& path, const BenchmarkResult& result);

}  // namespace bpbs
