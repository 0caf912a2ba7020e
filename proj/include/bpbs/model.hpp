#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "bpbs/splines.hpp"

namespace bpbs {

/// Fixed hyperparameters and run lengths shared by the regression model and
/// its sampler.
struct ModelConfig {
  double kappa = 1e7;       // prior sd scale of the global mean (inf = flat)
  double c_lambda = 0.315;  // exponential rate on the dispersion parameter
  double delta = 0.05;      // truncation of the mixing-weight support
  double nu = 0.9;          // geometric decay of the dimension prior
  double a_sigma = 0.0;     // inverse-gamma shape for the noise variance
  double b_sigma = 0.0;     // inverse-gamma rate; (0,0) = Jeffreys
  int degree = 3;
  int j_min = 4;
  int j_max = 0;  // 0 = resolve to min(n, 150) at fit time
  int tau_grid_size = 201;
  int iterations = 12000;
  int burnin = 2000;
  int thin = 1;
  std::uint64_t seed = 90210;

  double inv_kappa_sq() const;

  /// Copy with j_max resolved against the sample size and all invariants
  /// checked; throws std::invalid_argument on a violated constraint.
  ModelConfig resolved(int n) const;
};

/// The two precision matrices of the centered coefficient block: the fused
/// penalty Q = (1-tau) P̃ + (tau/n) B̃ᵀB̃ and the conditional posterior
/// precision Ω = Q/lambda + B̃ᵀB̃, with the Cholesky factor of Ω.
struct PrecisionParts {
  int J = 0;
  Eigen::MatrixXd fused;
  Eigen::MatrixXd posterior;
  Eigen::LLT<Eigen::MatrixXd> chol_posterior;
};

/// Per-dataset scalars entering every marginal-likelihood evaluation.
struct DataMoments {
  int n = 0;
  double yty = 0.0;
  double sum_y = 0.0;
};

DataMoments data_moments(const Eigen::VectorXd& y);

/// Result of collapsing the coefficients out of the Gaussian likelihood at
/// one (J, lambda, tau): the log marginal likelihood (with the dataset
/// constant fixed once, so values are comparable across J), the residual
/// quadratic form feeding the variance update, and the posterior Cholesky.
struct MarginalEval {
  double log_ml = 0.0;
  double bracket = 0.0;
  Eigen::LLT<Eigen::MatrixXd> chol_posterior;
};

Eigen::MatrixXd fused_penalty(const Eigen::MatrixXd& penalty_centered,
                              const Eigen::MatrixXd& gram, int n, double tau);

PrecisionParts build_precision(const SplineBasis& basis,
                               const PenaltySet& penalties, double lambda,
                               double tau);

double log_prior_J(int J, const ModelConfig& cfg);
double log_prior_lambda(double lambda, const ModelConfig& cfg);
double log_prior_tau(double tau, const ModelConfig& cfg);

/// Collapsed evaluation from precomputed per-dimension pieces. `prior_prec`
/// is the coefficient prior precision divided by (lambda sigma^2) — the
/// fused penalty for the proposed model, or a baseline's substitute — and
/// `gram`/`gram_y` are B̃ᵀB̃ and B̃ᵀy.
MarginalEval marginal_eval(const DataMoments& moments,
                           const Eigen::MatrixXd& prior_prec,
                           const Eigen::MatrixXd& gram,
                           const Eigen::VectorXd& gram_y, double lambda,
                           const ModelConfig& cfg);

double log_marginal_likelihood(const Eigen::VectorXd& y,
                               const SplineBasis& basis,
                               const PenaltySet& penalties, double lambda,
                               double tau, const ModelConfig& cfg);

}  // namespace bpbs
