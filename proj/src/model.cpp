#include "bpbs/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bpbs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

// (J, lambda, tau)-independent part of the collapsed likelihood: Gaussian
// normalizer, global-mean determinant share, and the inverse-gamma
// normalizer of the variance prior (omitted for the improper Jeffreys case).
double dataset_constant(const DataMoments& m, const ModelConfig& cfg) {
  double c = -0.5 * m.n * std::log(2.0 * std::numbers::pi);
  if (std::isinf(cfg.kappa))
    c -= 0.5 * std::log(static_cast<double>(m.n));
  else
    c -= 0.5 * std::log1p(m.n * cfg.kappa * cfg.kappa);
  c += std::lgamma(cfg.a_sigma + 0.5 * m.n);
  if (cfg.a_sigma > 0.0 && cfg.b_sigma > 0.0)
    c += cfg.a_sigma * std::log(cfg.b_sigma) - std::lgamma(cfg.a_sigma);
  return c;
}

}  // namespace

double ModelConfig::inv_kappa_sq() const {
  return std::isinf(kappa) ? 0.0 : 1.0 / (kappa * kappa);
}

ModelConfig ModelConfig::resolved(int n) const {
  ModelConfig cfg = *this;
  if (cfg.j_max <= 0) cfg.j_max = std::min(n, 150);
  if (cfg.degree < 1) throw std::invalid_argument("config: degree must be >= 1");
  if (cfg.j_min < cfg.degree + 1)
    throw std::invalid_argument("config: j_min below degree + 1");
  if (cfg.j_max > n) throw std::invalid_argument("config: j_max exceeds sample size");
  if (cfg.j_max < cfg.j_min) throw std::invalid_argument("config: empty dimension range");
  if (!(cfg.kappa > 0.0)) throw std::invalid_argument("config: kappa must be positive");
  if (!(cfg.c_lambda > 0.0)) throw std::invalid_argument("config: c_lambda must be positive");
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5))
    throw std::invalid_argument("config: delta must lie in (0, 0.5)");
  if (!(cfg.nu > 0.0 && cfg.nu < 1.0))
    throw std::invalid_argument("config: nu must lie in (0, 1)");
  if (cfg.a_sigma < 0.0 || cfg.b_sigma < 0.0)
    throw std::invalid_argument("config: negative variance hyperparameter");
  if (cfg.tau_grid_size < 2) throw std::invalid_argument("config: tau grid too small");
  if (cfg.iterations <= cfg.burnin)
    throw std::invalid_argument("config: iterations must exceed burnin");
  if (cfg.thin < 1) throw std::invalid_argument("config: thin must be >= 1");
  return cfg;
}

DataMoments data_moments(const Eigen::VectorXd& y) {
  DataMoments m;
  m.n = static_cast<int>(y.size());
  m.yty = y.squaredNorm();
  m.sum_y = y.sum();
  return m;
}

Eigen::MatrixXd fused_penalty(const Eigen::MatrixXd& penalty_centered,
                              const Eigen::MatrixXd& gram, int n, double tau) {
  return (1.0 - tau) * penalty_centered + (tau / n) * gram;
}

PrecisionParts build_precision(const SplineBasis& basis,
                               const PenaltySet& penalties, double lambda,
                               double tau) {
  if (!(lambda > 0.0)) throw std::invalid_argument("build_precision: lambda <= 0");
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("build_precision: tau outside (0,1)");
  const int n = static_cast<int>(basis.x.size());
  PrecisionParts parts;
  parts.J = basis.grid.dimension();
  const Eigen::MatrixXd gram = basis.centered.transpose() * basis.centered;
  parts.fused = fused_penalty(penalties.penalty_centered, gram, n, tau);
  parts.posterior = parts.fused / lambda + gram;
  parts.chol_posterior.compute(parts.posterior);
  if (parts.chol_posterior.info() != Eigen::Success)
    throw std::runtime_error(
        "build_precision: posterior precision not positive definite "
        "(centered basis rank deficient?)");
  return parts;
}

double log_prior_J(int J, const ModelConfig& cfg) {
  if (J < cfg.j_min || J > cfg.j_max) return kNegInf;
  const double log_nu = std::log(cfg.nu);
  const int m = cfg.j_max - cfg.j_min + 1;
  // log sum_{j=j_min}^{j_max} nu^j via the geometric series
  const double log_norm = cfg.j_min * log_nu +
                          std::log1p(-std::pow(cfg.nu, m)) -
                          std::log1p(-cfg.nu);
  return J * log_nu - log_norm;
}

double log_prior_lambda(double lambda, const ModelConfig& cfg) {
  if (lambda < 0.0) return kNegInf;
  return std::log(cfg.c_lambda) - cfg.c_lambda * lambda;
}

double log_prior_tau(double tau, const ModelConfig& cfg) {
  if (tau <= cfg.delta || tau >= 1.0 - cfg.delta) return kNegInf;
  return -std::log1p(-2.0 * cfg.delta);
}

MarginalEval marginal_eval(const DataMoments& moments,
                           const Eigen::MatrixXd& prior_prec,
                           const Eigen::MatrixXd& gram,
                           const Eigen::VectorXd& gram_y, double lambda,
                           const ModelConfig& cfg) {
  const int dim = static_cast<int>(prior_prec.rows());
  MarginalEval eval;

  Eigen::LLT<Eigen::MatrixXd> chol_prior(prior_prec);
  if (chol_prior.info() != Eigen::Success)
    throw std::runtime_error("marginal: prior precision not positive definite");
  eval.chol_posterior.compute(prior_prec / lambda + gram);
  if (eval.chol_posterior.info() != Eigen::Success)
    throw std::runtime_error("marginal: posterior precision not positive definite");

  // |I - Ω^{-1} B̃ᵀB̃| = |Q/lambda| / |Ω| via the two Cholesky factors
  const double half_log_det = 0.5 * (log_det_from_llt(chol_prior) -
                                     dim * std::log(lambda) -
                                     log_det_from_llt(eval.chol_posterior));

  const double mean_mass = moments.sum_y * moments.sum_y /
                           (moments.n + cfg.inv_kappa_sq());
  const double fit_mass = gram_y.dot(eval.chol_posterior.solve(gram_y));
  eval.bracket = moments.yty - mean_mass - fit_mass;
  if (!(cfg.b_sigma + 0.5 * eval.bracket > 0.0))
    throw std::runtime_error(
        "marginal: nonpositive residual quadratic form (degenerate data?)");

  eval.log_ml = half_log_det -
                (cfg.a_sigma + 0.5 * moments.n) *
                    std::log(cfg.b_sigma + 0.5 * eval.bracket) +
                dataset_constant(moments, cfg);
  return eval;
}

double log_marginal_likelihood(const Eigen::VectorXd& y,
                               const SplineBasis& basis,
                               const PenaltySet& penalties, double lambda,
                               double tau, const ModelConfig& cfg) {
  if (y.size() != basis.x.size())
    throw std::invalid_argument("marginal: response/design size mismatch");
  if (y.size() < 2) throw std::invalid_argument("marginal: need n >= 2");
  if (!(lambda > 0.0) || !(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("marginal: (lambda, tau) outside support");
  const int n = static_cast<int>(y.size());
  const Eigen::MatrixXd gram = basis.centered.transpose() * basis.centered;
  const Eigen::VectorXd gram_y = basis.centered.transpose() * y;
  const Eigen::MatrixXd prior_prec =
      fused_penalty(penalties.penalty_centered, gram, n, tau);
  return marginal_eval(data_moments(y), prior_prec, gram, gram_y, lambda, cfg)
      .log_ml;
}

}  // namespace bpbs
