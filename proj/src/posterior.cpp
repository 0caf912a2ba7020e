#include "bpbs/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bpbs {

namespace {

// Snapshot indices grouped by dimension.
std::map<int, std::vector<Eigen::Index>> group_by_dimension(
    const PosteriorDraws& draws) {
  std::map<int, std::vector<Eigen::Index>> groups;
  for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(draws.draws.size()); ++s)
    groups[draws.draws[static_cast<size_t>(s)].J].push_back(s);
  return groups;
}

// Centered basis (order 0) or raw derivative basis columns 2..J (order >= 1)
// at the requested points; centering uses the training-design column means.
Eigen::MatrixXd centered_eval_matrix(const PosteriorDraws& draws, int J,
                                     const Eigen::VectorXd& grid, int order) {
  const KnotGrid knots = make_knots(J, draws.degree);
  Eigen::MatrixXd raw = basis_matrix(knots, grid, order);
  if (order == 0) {
    const Eigen::VectorXd col_means =
        basis_matrix(knots, draws.design_x, 0).colwise().mean();
    return raw.rightCols(J - 1).rowwise() -
           col_means.tail(J - 1).transpose();
  }
  return raw.rightCols(J - 1);  // the centering constant differentiates away
}

// Equal-tailed empirical quantile with linear interpolation between order
// statistics; v must be sorted.
double sorted_quantile(const std::vector<double>& v, double p) {
  const auto m = static_cast<Eigen::Index>(v.size());
  if (m == 1) return v[0];
  const double h = p * static_cast<double>(m - 1);
  const auto lo = static_cast<Eigen::Index>(std::floor(h));
  if (lo >= m - 1) return v[static_cast<size_t>(m - 1)];
  const double frac = h - static_cast<double>(lo);
  return v[static_cast<size_t>(lo)] +
         frac * (v[static_cast<size_t>(lo + 1)] - v[static_cast<size_t>(lo)]);
}

CurveSummary summarize_values(const Eigen::VectorXd& grid,
                              const Eigen::MatrixXd& values, double level) {
  CurveSummary out;
  out.grid = grid;
  out.level = level;
  out.mean = values.rowwise().mean();
  out.lower.resize(grid.size());
  out.upper.resize(grid.size());
  const double a = 1.0 - level;
  std::vector<double> row(static_cast<size_t>(values.cols()));
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    for (Eigen::Index s = 0; s < values.cols(); ++s)
      row[static_cast<size_t>(s)] = values(g, s);
    std::sort(row.begin(), row.end());
    out.lower[g] = sorted_quantile(row, a / 2.0);
    out.upper[g] = sorted_quantile(row, 1.0 - a / 2.0);
  }
  return out;
}

Eigen::MatrixXd evaluate_draws(const PosteriorDraws& draws,
                               const Eigen::VectorXd& grid, int order) {
  if (draws.draws.empty()) throw std::invalid_argument("summary: no draws");
  Eigen::MatrixXd values(grid.size(),
                         static_cast<Eigen::Index>(draws.draws.size()));
  for (const auto& [J, members] : group_by_dimension(draws)) {
    const Eigen::MatrixXd eval = centered_eval_matrix(draws, J, grid, order);
    for (Eigen::Index s : members) {
      const ChainState& st = draws.draws[static_cast<size_t>(s)];
      Eigen::VectorXd f = eval * st.theta;
      if (order == 0) f.array() += st.theta1;
      values.col(s) = draws.scale * f;
      if (order == 0) values.col(s).array() += draws.shift;
    }
  }
  return values;
}

}  // namespace

CurveSummary curve_summary(const PosteriorDraws& draws,
                           const Eigen::VectorXd& grid, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("summary: level outside (0,1)");
  return summarize_values(grid, evaluate_draws(draws, grid, 0), level);
}

CurveSummary derivative_summary(const PosteriorDraws& draws,
                                const Eigen::VectorXd& grid, int order,
                                double level) {
  if (order < 1 || order > 2)
    throw std::invalid_argument("summary: derivative order must be 1 or 2");
  if (order > draws.degree)
    throw std::invalid_argument("summary: derivative order exceeds degree");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("summary: level outside (0,1)");
  return summarize_values(grid, evaluate_draws(draws, grid, order), level);
}

Eigen::VectorXd mean_curve(const PosteriorDraws& draws,
                           const Eigen::VectorXd& grid, int order) {
  if (draws.draws.empty()) throw std::invalid_argument("summary: no draws");
  const auto total = static_cast<double>(draws.draws.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(grid.size());
  double mean_theta1 = 0.0;
  for (const auto& [J, members] : group_by_dimension(draws)) {
    Eigen::VectorXd theta_sum = Eigen::VectorXd::Zero(J - 1);
    for (Eigen::Index s : members) {
      theta_sum += draws.draws[static_cast<size_t>(s)].theta;
      mean_theta1 += draws.draws[static_cast<size_t>(s)].theta1;
    }
    mean += centered_eval_matrix(draws, J, grid, order) * (theta_sum / total);
  }
  mean *= draws.scale;
  if (order == 0)
    mean.array() += draws.shift + draws.scale * mean_theta1 / total;
  return mean;
}

ModelSizeSummary model_size_summary(const PosteriorDraws& draws) {
  if (draws.draws.empty()) throw std::invalid_argument("summary: no draws");
  ModelSizeSummary out;
  for (const ChainState& st : draws.draws) {
    out.mean_J += st.J;
    out.histogram[st.J] += 1.0;
  }
  const auto total = static_cast<double>(draws.draws.size());
  out.mean_J /= total;
  for (auto& [J, mass] : out.histogram) mass /= total;
  return out;
}

}  // namespace bpbs
