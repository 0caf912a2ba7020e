#pragma once

#include <Eigen/Dense>
#include <map>

#include "bpbs/sampler.hpp"

namespace bpbs {

/// Pointwise posterior summary of the fitted function (or a derivative) on
/// an evaluation grid: draw mean plus an equal-tailed quantile band.
struct CurveSummary {
  Eigen::VectorXd grid;
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double level = 0.95;
};

/// Model-averaged curve summary: every snapshot is evaluated under its own
/// dimension's basis, centered with the column means of the training design.
CurveSummary curve_summary(const PosteriorDraws& draws,
                           const Eigen::VectorXd& grid, double level = 0.95);

/// Same for the order-th derivative of the fitted function.
CurveSummary derivative_summary(const PosteriorDraws& draws,
                                const Eigen::VectorXd& grid, int order,
                                double level = 0.95);

/// Posterior mean of the fitted curve (or derivative) alone; exact, without
/// materializing the draw-by-grid value matrix.
Eigen::VectorXd mean_curve(const PosteriorDraws& draws,
                           const Eigen::VectorXd& grid, int order = 0);

struct ModelSizeSummary {
  double mean_J = 0.0;
  std::map<int, double> histogram;  // J -> posterior frequency
};

ModelSizeSummary model_size_summary(const PosteriorDraws& draws);

}  // namespace bpbs
