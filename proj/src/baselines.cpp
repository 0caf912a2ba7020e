#include "bpbs/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "bpbs/dist.hpp"

namespace bpbs {

Eigen::VectorXd default_gcv_grid() {
  Eigen::VectorXd grid(101);
  for (int i = 0; i < 101; ++i)
    grid[i] = std::pow(10.0, -6.0 + 12.0 * i / 100.0);
  return grid;
}

PsFit fit_ps_gcv(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 int interior_knots, int degree,
                 const Eigen::VectorXd& lambda_grid) {
  if (lambda_grid.size() == 0)
    throw std::invalid_argument("ps: empty smoothing grid");
  const int n = static_cast<int>(y.size());
  const int J = interior_knots + degree + 1;
  const KnotGrid knots = make_knots(J, degree);
  const SplineBasis basis = eval_basis(knots, x);
  const Eigen::MatrixXd& B = basis.values;
  const Eigen::MatrixXd BtB = B.transpose() * B;
  const Eigen::VectorXd Bty = B.transpose() * y;
  const Eigen::MatrixXd P = penalty_set(J).penalty;

  double best_gcv = std::numeric_limits<double>::infinity();
  int best_idx = -1;
  for (Eigen::Index i = 0; i < lambda_grid.size(); ++i) {
    const double lambda = lambda_grid[i];
    Eigen::LLT<Eigen::MatrixXd> chol(BtB + lambda * P);
    if (chol.info() != Eigen::Success)
      throw std::runtime_error("ps: singular penalized normal equations");
    const Eigen::VectorXd coef = chol.solve(Bty);
    const double rss = (y - B * coef).squaredNorm();
    const double tr_hat = chol.solve(BtB).trace();
    const double gcv = n * rss / ((n - tr_hat) * (n - tr_hat));
    if (gcv < best_gcv) {
      best_gcv = gcv;
      best_idx = static_cast<int>(i);
    }
  }

  PsFit fit;
  fit.knots = knots;
  fit.lambda = lambda_grid[best_idx];
  fit.gcv = best_gcv;
  Eigen::LLT<Eigen::MatrixXd> chol(BtB + fit.lambda * P);
  fit.coef = chol.solve(Bty);
  const Eigen::MatrixXd inv_BtB = chol.solve(BtB);  // M^{-1} BᵀB
  fit.edf = inv_BtB.trace();
  const double rss = (y - B * fit.coef).squaredNorm();
  fit.sigma2_hat = rss / (n - fit.edf);
  fit.coef_cov = fit.sigma2_hat * inv_BtB * chol.solve(Eigen::MatrixXd::Identity(J, J));
  return fit;
}

CurveSummary ps_curve(const PsFit& fit, const Eigen::VectorXd& grid, int order,
                      double level) {
  const Eigen::MatrixXd eval = basis_matrix(fit.knots, grid, order);
  CurveSummary out;
  out.grid = grid;
  out.level = level;
  out.mean = eval * fit.coef;
  const double z = normal_quantile(0.5 + level / 2.0);
  out.lower.resize(grid.size());
  out.upper.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double var = eval.row(i) * fit.coef_cov * eval.row(i).transpose();
    const double half = z * std::sqrt(std::max(var, 0.0));
    out.lower[i] = out.mean[i] - half;
    out.upper[i] = out.mean[i] + half;
  }
  return out;
}

BpsSampler::BpsSampler(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       int interior_knots, const ModelConfig& cfg,
                       double a_lambda, double b_lambda)
    : cfg_(cfg), a_lambda_(a_lambda), b_lambda_(b_lambda) {
  const int n = static_cast<int>(y.size());
  const int J = interior_knots + cfg.degree + 1;
  if (n <= J) throw std::invalid_argument("bps: need n > J");
  shift_ = y.mean();
  scale_ = std::sqrt((y.array() - shift_).square().sum() / (n - 1));
  if (!(scale_ > 0.0)) throw std::invalid_argument("bps: constant response");
  ys_ = (y.array() - shift_) / scale_;
  basis_ = eval_basis(make_knots(J, cfg.degree), x);
  pens_ = penalty_set(J);
  gram_ = basis_.values.transpose() * basis_.values;
  gram_y_ = basis_.values.transpose() * ys_;
  coef_ = Eigen::VectorXd::Zero(J);
}

void BpsSampler::step_coefficients(RngStream& rng) {
  const int J = basis_.grid.dimension();
  Eigen::LLT<Eigen::MatrixXd> chol(gram_ / sigma2_ + pens_.penalty / lambda_);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error("bps: posterior precision not positive definite");
  Eigen::VectorXd z(J);
  for (int j = 0; j < J; ++j) z[j] = rng.normal();
  coef_ = chol.solve(gram_y_ / sigma2_) + chol.matrixU().solve(z);
}

void BpsSampler::step_dispersion(RngStream& rng) {
  const double quad = coef_.dot(pens_.penalty * coef_);
  lambda_ = rng.inverse_gamma(a_lambda_ + 0.5 * penalty_rank(),
                              b_lambda_ + 0.5 * quad);
}

void BpsSampler::step_variance(RngStream& rng) {
  const double rss = (ys_ - basis_.values * coef_).squaredNorm();
  sigma2_ = rng.inverse_gamma(0.5 * ys_.size(), 0.5 * rss);
}

PosteriorDraws BpsSampler::run() {
  const int J = basis_.grid.dimension();
  PosteriorDraws out;
  out.design_x = basis_.x;
  out.degree = cfg_.degree;
  out.shift = shift_;
  out.scale = scale_;
  out.draws.reserve(
      static_cast<size_t>((cfg_.iterations - cfg_.burnin) / cfg_.thin));
  RngStream rng(cfg_.seed);
  lambda_ = 1.0;
  sigma2_ = 1.0;
  for (int it = 1; it <= cfg_.iterations; ++it) {
    step_coefficients(rng);
    step_dispersion(rng);
    step_variance(rng);
    if (it > cfg_.burnin && (it - cfg_.burnin - 1) % cfg_.thin == 0) {
      ChainState st;
      st.J = J;
      st.sigma2 = sigma2_;
      st.lambda = lambda_;
      st.tau = 0.5;  // not a parameter of this prior
      st.theta1 = basis_.col_means.dot(coef_);
      st.theta = coef_.tail(J - 1).array() - coef_[0];
      out.draws.push_back(std::move(st));
    }
  }
  return out;
}

PosteriorDraws fit_bps(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       int interior_knots, const ModelConfig& cfg,
                       double a_lambda, double b_lambda) {
  return BpsSampler(x, y, interior_knots, cfg, a_lambda, b_lambda).run();
}

PosteriorDraws fit_bbs_zs(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const ModelConfig& cfg) {
  ModelConfig zs = cfg;
  zs.kappa = std::numeric_limits<double>::infinity();  // flat global mean
  SamplerOptions opt;
  opt.prior.kind = PriorStructure::Kind::ScaledGram;
  opt.sample_mixing = false;
  opt.dispersion_update = SamplerOptions::DispersionUpdate::ConjugateInverseGamma;
  opt.a_lambda = 0.5;
  opt.b_lambda = 0.5;
  return GibbsSampler(x, y, zs, opt).run();
}

PosteriorDraws fit_btp(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       int interior_knots, const ModelConfig& cfg,
                       double a_lambda, double b_lambda) {
  ModelConfig fixed = cfg;
  fixed.j_min = fixed.j_max = interior_knots + cfg.degree + 1;
  SamplerOptions opt;
  opt.prior.kind = PriorStructure::Kind::Fused;
  opt.sample_dimension = false;
  opt.dispersion_update = SamplerOptions::DispersionUpdate::ConjugateInverseGamma;
  opt.a_lambda = a_lambda;
  opt.b_lambda = b_lambda;
  return GibbsSampler(x, y, fixed, opt).run();
}

PosteriorDraws fit_bpswbs(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const ModelConfig& cfg, double eta) {
  SamplerOptions opt;
  opt.prior.kind = PriorStructure::Kind::DiffRidge;
  opt.prior.eta = eta;
  opt.sample_mixing = false;
  opt.dispersion_update = SamplerOptions::DispersionUpdate::ConjugateInverseGamma;
  opt.a_lambda = 0.5;
  opt.b_lambda = 0.5;
  return GibbsSampler(x, y, cfg, opt).run();
}

CurveSummary FitResult::curve(const Eigen::VectorXd& grid, int order,
                              double level) const {
  if (ps) return ps_curve(*ps, grid, order, level);
  if (order == 0) return curve_summary(*draws, grid, level);
  return derivative_summary(*draws, grid, order, level);
}

Eigen::VectorXd FitResult::mean(const Eigen::VectorXd& grid, int order) const {
  if (ps) return basis_matrix(ps->knots, grid, order) * ps->coef;
  return mean_curve(*draws, grid, order);
}

std::optional<double> FitResult::mean_dimension() const {
  if (!selects_dimension || !draws) return std::nullopt;
  return model_size_summary(*draws).mean_J;
}

const std::vector<std::string>& method_tags() {
  static const std::vector<std::string> tags = {
      "proposed", "ps30",  "ps60",   "bps30",  "bps60",
      "btp30",    "btp60", "bbs-zs", "bpswbs",
  };
  return tags;
}

bool method_known(const std::string& tag) {
  for (const auto& t : method_tags())
    if (t == tag) return true;
  return false;
}

FitResult run_method(const std::string& tag, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y, const ModelConfig& cfg) {
  FitResult result;
  result.method = tag;
  result.selects_dimension =
      tag == "proposed" || tag == "bbs-zs" || tag == "bpswbs";
  if (tag == "proposed") {
    result.draws = run_chain(x, y, cfg);
  } else if (tag == "ps30" || tag == "ps60") {
    result.ps = fit_ps_gcv(x, y, tag == "ps30" ? 30 : 60, cfg.degree,
                           default_gcv_grid());
  } else if (tag == "bps30" || tag == "bps60") {
    result.draws = fit_bps(x, y, tag == "bps30" ? 30 : 60, cfg);
  } else if (tag == "btp30" || tag == "btp60") {
    result.draws = fit_btp(x, y, tag == "btp30" ? 30 : 60, cfg);
  } else if (tag == "bbs-zs") {
    result.draws = fit_bbs_zs(x, y, cfg);
  } else if (tag == "bpswbs") {
    result.draws = fit_bpswbs(x, y, cfg);
  } else {
    std::string msg = "unknown method '" + tag + "'; valid tags:";
    for (const auto& t : method_tags()) msg += " " + t;
    throw std::invalid_argument(msg);
  }
  return result;
}

}  // namespace bpbs
