#include "bpbs/sampler.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bpbs/dist.hpp"

namespace bpbs {

GibbsSampler::GibbsSampler(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const ModelConfig& cfg, const SamplerOptions& opt)
    : x_(x), y_(y), cfg_(cfg.resolved(static_cast<int>(y.size()))), opt_(opt) {
  if (x.size() != y.size())
    throw std::invalid_argument("sampler: design/response size mismatch");
  if (static_cast<int>(y.size()) < cfg_.j_min + 2)
    throw std::invalid_argument("sampler: need at least j_min + 2 observations");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw std::invalid_argument("sampler: design point outside [0,1]");
  moments_ = data_moments(y_);
}

GibbsSampler::JCache& GibbsSampler::cache_for(int J) {
  auto it = caches_.find(J);
  if (it != caches_.end()) return it->second;
  JCache cache;
  cache.basis = eval_basis(make_knots(J, cfg_.degree), x_);
  cache.pens = penalty_set(J);
  cache.gram = cache.basis.centered.transpose() * cache.basis.centered;
  cache.gram_y = cache.basis.centered.transpose() * y_;
  return caches_.emplace(J, std::move(cache)).first->second;
}

const Eigen::VectorXd* GibbsSampler::pencil_eigs(JCache& cache) {
  if (!cache.pencil_tried) {
    cache.pencil_tried = true;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        cache.pens.penalty_centered, cache.gram);
    // The solver needs a positive definite gram; near the J = n edge this
    // can fail, in which case the mixing step evaluates the determinant
    // directly per grid point.
    if (solver.info() == Eigen::Success &&
        solver.eigenvalues().allFinite())
      // the pencil is PSD apart from roundoff; clamp stray negatives
      cache.pencil_eigs = solver.eigenvalues().cwiseMax(0.0);
  }
  return cache.pencil_eigs ? &*cache.pencil_eigs : nullptr;
}

Eigen::MatrixXd GibbsSampler::prior_precision(const JCache& cache,
                                              double tau) const {
  const int dim = cache.basis.grid.dimension() - 1;
  switch (opt_.prior.kind) {
    case PriorStructure::Kind::Fused:
      return fused_penalty(cache.pens.penalty_centered, cache.gram, moments_.n,
                           tau);
    case PriorStructure::Kind::ScaledGram:
      return cache.gram / moments_.n;
    case PriorStructure::Kind::DiffRidge:
      return cache.pens.penalty_centered +
             opt_.prior.eta * Eigen::MatrixXd::Identity(dim, dim);
  }
  throw std::logic_error("unknown prior structure");
}

const MarginalEval& GibbsSampler::current_eval() {
  if (!eval_) {
    JCache& cache = cache_for(state_.J);
    eval_ = marginal_eval(moments_, prior_precision(cache, state_.tau),
                          cache.gram, cache.gram_y, state_.lambda, cfg_);
  }
  return *eval_;
}

MarginalEval GibbsSampler::marginal_for(int J, double lambda, double tau) {
  JCache& cache = cache_for(J);
  return marginal_eval(moments_, prior_precision(cache, tau), cache.gram,
                       cache.gram_y, lambda, cfg_);
}

double GibbsSampler::proposal_log_prob(int from, int to) const {
  assert(std::abs(to - from) == 1);
  (void)to;
  return (from == cfg_.j_min || from == cfg_.j_max) ? 0.0 : -std::numbers::ln2;
}

void GibbsSampler::step_dimension(RngStream& rng) {
  if (cfg_.j_min == cfg_.j_max) return;
  const int J = state_.J;
  int proposed;
  if (J == cfg_.j_min)
    proposed = J + 1;
  else if (J == cfg_.j_max)
    proposed = J - 1;
  else
    proposed = rng.uniform() < 0.5 ? J - 1 : J + 1;
  ++dim_proposals_;

  const double cur_target = log_prior_J(J, cfg_) + current_eval().log_ml;
  MarginalEval prop_eval;
  try {
    prop_eval = marginal_for(proposed, state_.lambda, state_.tau);
  } catch (const std::runtime_error&) {
    // a dimension whose collapsed precision is numerically rank deficient
    // lies outside the effective support: reject
    return;
  }
  const double prop_target = log_prior_J(proposed, cfg_) + prop_eval.log_ml;
  const double log_alpha = prop_target - cur_target +
                           proposal_log_prob(proposed, J) -
                           proposal_log_prob(J, proposed);
  if (std::log(rng.uniform_pos()) < log_alpha) {
    state_.J = proposed;
    state_.theta = Eigen::VectorXd::Zero(proposed - 1);  // redrawn in step (iii)
    eval_ = std::move(prop_eval);
    ++dim_accepts_;
  }
}

void GibbsSampler::step_variance(RngStream& rng) {
  const MarginalEval& eval = current_eval();
  const double shape = cfg_.a_sigma + 0.5 * moments_.n;
  const double rate = cfg_.b_sigma + 0.5 * eval.bracket;
  state_.sigma2 = rng.inverse_gamma(shape, rate);
}

void GibbsSampler::step_coefficients(RngStream& rng) {
  const MarginalEval& eval = current_eval();
  const double mean_prec = moments_.n + cfg_.inv_kappa_sq();
  state_.theta1 = rng.normal(moments_.sum_y / mean_prec,
                             std::sqrt(state_.sigma2 / mean_prec));
  const JCache& cache = cache_for(state_.J);
  Eigen::VectorXd z(state_.J - 1);
  for (int i = 0; i < state_.J - 1; ++i) z[i] = rng.normal();
  state_.theta = eval.chol_posterior.solve(cache.gram_y) +
                 std::sqrt(state_.sigma2) *
                     eval.chol_posterior.matrixU().solve(z);
}

double GibbsSampler::exponential_density_inverse(double gamma, double rate) {
  return -std::log(gamma / rate) / rate;
}

void GibbsSampler::step_dispersion_slice(RngStream& rng) {
  const double shape = 0.5 * (state_.J - 3);
  assert(shape > 0.0 && "dimension below 4 cannot occur in the support");
  JCache& cache = cache_for(state_.J);
  const Eigen::MatrixXd prior_prec = prior_precision(cache, state_.tau);
  const double quad = state_.theta.dot(prior_prec * state_.theta);
  if (!(quad > 0.0))
    throw std::runtime_error("dispersion step: degenerate coefficient quadratic form");
  const double density_at =
      cfg_.c_lambda * std::exp(-cfg_.c_lambda * state_.lambda);
  const double level = rng.uniform_pos() * density_at;
  const double bound = exponential_density_inverse(level, cfg_.c_lambda);
  state_.lambda = truncated_inverse_gamma(rng, shape,
                                          quad / (2.0 * state_.sigma2), bound);
  eval_.reset();
}

void GibbsSampler::step_dispersion_conjugate(RngStream& rng) {
  JCache& cache = cache_for(state_.J);
  const Eigen::MatrixXd prior_prec = prior_precision(cache, state_.tau);
  const double quad = state_.theta.dot(prior_prec * state_.theta);
  const double shape = opt_.a_lambda + 0.5 * (state_.J - 1);
  const double rate = opt_.b_lambda + quad / (2.0 * state_.sigma2);
  state_.lambda = rng.inverse_gamma(shape, rate);
  eval_.reset();
}

Eigen::VectorXd GibbsSampler::mixing_grid_points() const {
  const int G = cfg_.tau_grid_size;
  const double width = 1.0 - 2.0 * cfg_.delta;
  Eigen::VectorXd grid(G);
  for (int g = 0; g < G; ++g)
    grid[g] = cfg_.delta + width * (g + 0.5) / G;  // cell midpoints
  return grid;
}

Eigen::VectorXd GibbsSampler::mixing_grid_log_density() {
  JCache& cache = cache_for(state_.J);
  const Eigen::VectorXd* rho = pencil_eigs(cache);
  const double quad_pen =
      state_.theta.dot(cache.pens.penalty_centered * state_.theta);
  const double quad_gram = state_.theta.dot(cache.gram * state_.theta);
  const double inv_scale = 1.0 / (state_.lambda * state_.sigma2);
  const double n = moments_.n;
  const Eigen::VectorXd grid = mixing_grid_points();

  Eigen::VectorXd logw(grid.size());
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    const double tau = grid[g];
    double half_log_det;
    if (rho) {
      half_log_det = 0.5 * (state_.J - 1) * std::log(tau);
      const double factor = n * (1.0 - tau) / tau;
      for (Eigen::Index k = 0; k < rho->size(); ++k)
        half_log_det += 0.5 * std::log1p(factor * (*rho)[k]);
    } else {
      Eigen::LLT<Eigen::MatrixXd> chol(
          fused_penalty(cache.pens.penalty_centered, cache.gram, moments_.n, tau));
      if (chol.info() != Eigen::Success)
        throw std::runtime_error("mixing step: fused penalty not positive definite");
      half_log_det = chol.matrixLLT().diagonal().array().log().sum();
    }
    logw[g] = log_prior_tau(tau, cfg_) + half_log_det -
              0.5 * (1.0 - tau) * inv_scale * quad_pen -
              0.5 * tau * inv_scale / n * quad_gram;
  }
  return logw;
}

void GibbsSampler::step_mixing_grid(RngStream& rng) {
  const Eigen::VectorXd logw = mixing_grid_log_density();
  const int pick =
      rng.categorical_from_log_weights(logw.data(), static_cast<int>(logw.size()));
  state_.tau = mixing_grid_points()[pick];
  eval_.reset();
}

void GibbsSampler::initialize(RngStream& rng) {
  state_.J = cfg_.j_min + (cfg_.j_max - cfg_.j_min + 3) / 4;
  state_.lambda = std::numbers::ln2 / cfg_.c_lambda;  // exponential median
  state_.tau = opt_.init_tau;
  const double mean_y = moments_.sum_y / moments_.n;
  state_.sigma2 =
      (moments_.yty - moments_.n * mean_y * mean_y) / std::max(moments_.n - 1, 1);
  if (!(state_.sigma2 > 0.0)) state_.sigma2 = 1.0;
  eval_.reset();
  step_coefficients(rng);
}

PosteriorDraws GibbsSampler::run() {
  RngStream rng(cfg_.seed);
  initialize(rng);
  PosteriorDraws out;
  out.design_x = x_;
  out.degree = cfg_.degree;
  out.draws.reserve(
      static_cast<size_t>((cfg_.iterations - cfg_.burnin) / cfg_.thin));
  for (int it = 1; it <= cfg_.iterations; ++it) {
    try {
      if (opt_.sample_dimension) step_dimension(rng);
      step_variance(rng);
      step_coefficients(rng);
      if (opt_.dispersion_update == SamplerOptions::DispersionUpdate::SliceUnderExponential)
        step_dispersion_slice(rng);
      else
        step_dispersion_conjugate(rng);
      if (opt_.sample_mixing && opt_.prior.kind == PriorStructure::Kind::Fused)
        step_mixing_grid(rng);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep " + std::to_string(it) + ": " + e.what());
    }
    if (it > cfg_.burnin && (it - cfg_.burnin - 1) % cfg_.thin == 0) {
      if (!std::isfinite(state_.sigma2) || !std::isfinite(state_.theta1) ||
          !std::isfinite(state_.lambda) || !state_.theta.allFinite())
        throw std::runtime_error("sweep " + std::to_string(it) +
                                 ": non-finite state");
      out.draws.push_back(state_);
    }
  }
  out.dimension_proposals = dim_proposals_;
  out.dimension_accepts = dim_accepts_;
  return out;
}

PosteriorDraws run_chain(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const ModelConfig& cfg) {
  GibbsSampler sampler(x, y, cfg);
  return sampler.run();
}

}  // namespace bpbs
