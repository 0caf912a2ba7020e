#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "bpbs/model.hpp"
#include "bpbs/posterior.hpp"
#include "bpbs/sampler.hpp"

namespace bpbs {

/// Frequentist penalized-spline fit with the smoothing parameter chosen by
/// generalized cross-validation on a fixed grid.
struct PsFit {
  KnotGrid knots;
  Eigen::VectorXd coef;
  double lambda = 0.0;
  double sigma2_hat = 0.0;
  double edf = 0.0;  // trace of the hat matrix
  double gcv = 0.0;
  Eigen::MatrixXd coef_cov;  // sampling covariance of the coefficient estimate
};

/// 101 logarithmically spaced smoothing parameters in [1e-6, 1e6].
Eigen::VectorXd default_gcv_grid();

PsFit fit_ps_gcv(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 int interior_knots, int degree,
                 const Eigen::VectorXd& lambda_grid);

/// Pointwise Gaussian mean/band of the PS fit (or its derivative).
CurveSummary ps_curve(const PsFit& fit, const Eigen::VectorXd& grid, int order,
                      double level = 0.95);

/// Bayesian P-splines at fixed dimension: improper second-difference prior
/// on the raw coefficients, inverse-gamma dispersion, Jeffreys variance.
/// Works on the internally standardized response; the draws it produces are
/// re-expressed in the centered parameterization with the back-transform
/// attached. Kernels are public for stationarity tests.
class BpsSampler {
 public:
  BpsSampler(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
             int interior_knots, const ModelConfig& cfg,
             double a_lambda = 0.01, double b_lambda = 0.01);

  void step_coefficients(RngStream& rng);  // theta | lambda, sigma2
  void step_dispersion(RngStream& rng);    // lambda | theta
  void step_variance(RngStream& rng);      // sigma2 | theta

  PosteriorDraws run();

  Eigen::VectorXd& coefficients() { return coef_; }
  double& dispersion() { return lambda_; }
  double& variance() { return sigma2_; }
  const SplineBasis& basis() const { return basis_; }
  const PenaltySet& penalties() const { return pens_; }
  const Eigen::VectorXd& standardized_response() const { return ys_; }
  int penalty_rank() const { return basis_.grid.dimension() - 2; }

 private:
  ModelConfig cfg_;
  double a_lambda_, b_lambda_;
  double shift_ = 0.0, scale_ = 1.0;
  Eigen::VectorXd ys_;
  SplineBasis basis_;
  PenaltySet pens_;
  Eigen::MatrixXd gram_;  // BᵀB on the raw basis
  Eigen::VectorXd gram_y_;
  Eigen::VectorXd coef_;
  double lambda_ = 1.0;
  double sigma2_ = 1.0;
};

PosteriorDraws fit_bps(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       int interior_knots, const ModelConfig& cfg,
                       double a_lambda = 0.01, double b_lambda = 0.01);

/// Basis selection under the Zellner-Siow g-prior: gram-scaled coefficient
/// prior, conjugate IG(1/2, 1/2) dispersion, flat global mean.
PosteriorDraws fit_bbs_zs(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const ModelConfig& cfg);

/// Twofold penalty at fixed dimension: the fused prior with the dimension
/// move disabled and a conjugate IG(0.01, 0.01) dispersion update.
PosteriorDraws fit_btp(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       int interior_knots, const ModelConfig& cfg,
                       double a_lambda = 0.01, double b_lambda = 0.01);

/// P-spline prior with basis selection: ridge-propered difference penalty
/// P̃ + eta I, conjugate IG(1/2, 1/2) dispersion.
PosteriorDraws fit_bpswbs(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const ModelConfig& cfg, double eta = 1e-3);

/// Uniform front end over all registered methods. Exactly one of `draws`
/// and `ps` is set.
struct FitResult {
  std::string method;
  bool selects_dimension = false;
  std::optional<PosteriorDraws> draws;
  std::optional<PsFit> ps;

  CurveSummary curve(const Eigen::VectorXd& grid, int order,
                     double level = 0.95) const;
  Eigen::VectorXd mean(const Eigen::VectorXd& grid, int order = 0) const;
  std::optional<double> mean_dimension() const;
};

const std::vector<std::string>& method_tags();
bool method_known(const std::string& tag);

/// Fits `tag` (proposed | ps30 | ps60 | bps30 | bps60 | btp30 | btp60 |
/// bbs-zs | bpswbs) to (x, y) under cfg. Throws on an unknown tag.
FitResult run_method(const std::string& tag, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y, const ModelConfig& cfg);

}  // namespace bpbs
