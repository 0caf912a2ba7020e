#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "bpbs/dist.hpp"
#include "bpbs/sampler.hpp"
#include "oracles.hpp"

using namespace bpbs;

namespace {

Eigen::VectorXd random_design(RngStream& rng, int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform_open();
  std::sort(x.data(), x.data() + n);
  return x;
}

Eigen::VectorXd f2_data(RngStream& rng, const Eigen::VectorXd& x, double sigma) {
  Eigen::VectorXd y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    y[i] = 1.0 + std::sin(2.0 * std::numbers::pi * x[i]) +
           rng.normal(0.0, sigma);
  return y;
}

}  // namespace

TEST_CASE("slice-bound inverse of the exponential density") {
  const double c = 0.315;
  for (double lambda : {0.1, 1.0, 10.0}) {
    const double h = c * std::exp(-c * lambda);
    CHECK(std::abs(GibbsSampler::exponential_density_inverse(h, c) - lambda) <
          1e-12);
  }
  // a level drawn at the density maximum pins the bound at the current point
  const double at_max = c * std::exp(-c * 2.0);
  CHECK(GibbsSampler::exponential_density_inverse(at_max, c) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("truncated inverse-gamma sampler hits its distribution") {
  RngStream rng(5);
  SUBCASE("inverse-CDF region") {
    const double shape = 2.5, rate = 3.0, upper = 2.0;
    std::vector<double> sample(50000);
    for (auto& v : sample)
      v = truncated_inverse_gamma(rng, shape, rate, upper);
    const double mass = oracle::inv_gamma_cdf(upper, shape, rate);
    for (double v : sample) CHECK(v <= upper);
    const double ks = oracle::ks_statistic(sample, [&](double v) {
      return oracle::inv_gamma_cdf(v, shape, rate) / mass;
    });
    CHECK(ks < 0.01);
  }
  SUBCASE("underflow fallback region") {
    // truncation so deep in the lower tail that the CDF underflows
    const double shape = 1.5, rate = 900.0, upper = 1.0;
    REQUIRE(oracle::inv_gamma_cdf(upper, shape, rate) < 1e-280);
    std::vector<double> sample(20000);
    for (auto& v : sample)
      v = truncated_inverse_gamma(rng, shape, rate, upper);
    for (double v : sample) {
      CHECK(v <= upper);
      CHECK(v > 0.0);
    }
    // conditional law given X <= 1 against quadrature of the tilted density
    const int cells = 400000;
    std::vector<double> cdf(static_cast<size_t>(cells) + 1, 0.0);
    double acc = 0.0;
    const double lo = 0.5;  // essentially all conditional mass sits above 0.5
    double prev = std::exp(inverse_gamma_logpdf(lo, shape, rate) + 880.0);
    for (int i = 1; i <= cells; ++i) {
      const double b = lo + (upper - lo) * i / cells;
      const double fb = std::exp(inverse_gamma_logpdf(b, shape, rate) + 880.0);
      acc += 0.5 * (prev + fb) * (upper - lo) / cells;
      prev = fb;
      cdf[static_cast<size_t>(i)] = acc;
    }
    const double ks = oracle::ks_statistic(sample, [&](double v) {
      if (v <= lo) return 0.0;
      const double pos = (v - lo) / (upper - lo) * cells;
      const auto idx = std::min<size_t>(static_cast<size_t>(pos),
                                        static_cast<size_t>(cells));
      return cdf[idx] / acc;
    });
    CHECK(ks < 0.015);
  }
}

TEST_CASE("dimension move") {
  RngStream rng(31);
  const int n = 25;
  const Eigen::VectorXd x = random_design(rng, n);

  SUBCASE("long-run frequencies match the enumerated posterior") {
    ModelConfig cfg;
    cfg.j_min = 4;
    cfg.j_max = 12;
    cfg.a_sigma = 1.0;
    cfg.b_sigma = 1.0;
    const Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = 6;
    sampler.state().lambda = 1.0;
    sampler.state().tau = 0.5;

    // enumerated target from the independent conjugate-marginal oracle
    std::map<int, double> log_post;
    double logmax = -1e300;
    for (int J = 4; J <= 12; ++J) {
      const SplineBasis basis = eval_basis(make_knots(J, 3), x);
      const PenaltySet pens = penalty_set(J);
      const Eigen::MatrixXd Q =
          0.5 * pens.penalty_centered +
          0.5 / n * basis.centered.transpose() * basis.centered;
      log_post[J] = log_prior_J(J, cfg) +
                    oracle::nig_marginal_logpdf(y, basis.centered, Q, 1.0,
                                                cfg.kappa, 1.0, 1.0);
      logmax = std::max(logmax, log_post[J]);
    }
    double norm = 0.0;
    for (auto& [J, lp] : log_post) norm += std::exp(lp - logmax);

    RngStream moves(77);
    for (int it = 0; it < 1000; ++it) sampler.step_dimension(moves);
    std::map<int, int> counts;
    const int sweeps = 50000;
    for (int it = 0; it < sweeps; ++it) {
      sampler.step_dimension(moves);
      counts[sampler.state().J]++;
    }
    double tv = 0.0;
    for (int J = 4; J <= 12; ++J) {
      const double expect = std::exp(log_post[J] - logmax) / norm;
      const double got = static_cast<double>(counts[J]) / sweeps;
      tv += 0.5 * std::abs(expect - got);
    }
    CHECK(tv < 0.05);
  }
  SUBCASE("never proposes outside the range") {
    ModelConfig cfg;
    cfg.j_min = 4;
    cfg.j_max = 6;
    Eigen::VectorXd y = f2_data(rng, x, 0.5);
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = 4;
    sampler.state().lambda = 1.0;
    sampler.state().tau = 0.5;
    RngStream moves(13);
    for (int it = 0; it < 2000; ++it) {
      sampler.step_dimension(moves);
      CHECK(sampler.state().J >= 4);
      CHECK(sampler.state().J <= 6);
    }
  }
  SUBCASE("interior acceptance ratio is reciprocal") {
    ModelConfig cfg;
    cfg.j_min = 4;
    cfg.j_max = 20;
    Eigen::VectorXd y = f2_data(rng, x, 0.5);
    GibbsSampler sampler(x, y, cfg, {});
    const double up =
        (log_prior_J(8, cfg) + sampler.marginal_for(8, 1.3, 0.4).log_ml) -
        (log_prior_J(7, cfg) + sampler.marginal_for(7, 1.3, 0.4).log_ml);
    const double down =
        (log_prior_J(7, cfg) + sampler.marginal_for(7, 1.3, 0.4).log_ml) -
        (log_prior_J(8, cfg) + sampler.marginal_for(8, 1.3, 0.4).log_ml);
    CHECK(up == -down);
  }
  SUBCASE("a rejected move leaves the target unchanged") {
    ModelConfig cfg;
    cfg.j_min = 4;
    cfg.j_max = 20;
    Eigen::VectorXd y = f2_data(rng, x, 0.1);
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = 8;
    sampler.state().lambda = 0.5;
    sampler.state().tau = 0.4;
    RngStream moves(99);
    int rejected = 0;
    for (int tries = 0; tries < 500; ++tries) {
      const long before_accepts = sampler.dimension_accepts();
      const int before_J = sampler.state().J;
      const double before_target =
          log_prior_J(before_J, cfg) +
          sampler.marginal_for(before_J, 0.5, 0.4).log_ml;
      sampler.step_dimension(moves);
      if (sampler.dimension_accepts() == before_accepts) {
        ++rejected;
        CHECK(sampler.state().J == before_J);
        const double after_target =
            log_prior_J(sampler.state().J, cfg) +
            sampler.marginal_for(sampler.state().J, 0.5, 0.4).log_ml;
        CHECK(after_target == before_target);
      }
    }
    CHECK(rejected > 0);
  }
}

TEST_CASE("variance kernel") {
  RngStream rng(17);
  SUBCASE("conditional density matches the inverse-gamma oracle") {
    const int n = 40;
    const Eigen::VectorXd x = random_design(rng, n);
    const Eigen::VectorXd y = f2_data(rng, x, 0.5);
    ModelConfig cfg;
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = 7;
    sampler.state().lambda = 0.8;
    sampler.state().tau = 0.45;
    const MarginalEval eval = sampler.marginal_for(7, 0.8, 0.45);
    const double shape = 0.5 * n;
    const double rate = 0.5 * eval.bracket;
    RngStream draws(21);
    std::vector<double> sample(100000);
    for (auto& v : sample) {
      sampler.step_variance(draws);
      v = sampler.state().sigma2;
    }
    const double ks = oracle::ks_statistic(sample, [&](double v) {
      return oracle::inv_gamma_cdf(v, shape, rate);
    });
    CHECK(ks < 0.01);
  }
  SUBCASE("concentrates at the generating noise level") {
    const int n = 2000;
    const Eigen::VectorXd x = random_design(rng, n);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.normal(0.3, 0.5);
    ModelConfig cfg;
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = 6;
    sampler.state().lambda = 1.0;
    sampler.state().tau = 0.5;
    RngStream draws(22);
    double mean_sigma = 0.0;
    const int m = 4000;
    for (int i = 0; i < m; ++i) {
      sampler.step_variance(draws);
      mean_sigma += std::sqrt(sampler.state().sigma2);
    }
    mean_sigma /= m;
    CHECK(mean_sigma > 0.45);
    CHECK(mean_sigma < 0.55);
  }
  SUBCASE("positive rate with residual variation and Jeffreys prior") {
    const int n = 30;
    const Eigen::VectorXd x = random_design(rng, n);
    const Eigen::VectorXd y = f2_data(rng, x, 0.5);
    ModelConfig cfg;  // a_sigma = b_sigma = 0
    GibbsSampler sampler(x, y, cfg, {});
    const MarginalEval eval = sampler.marginal_for(6, 1.0, 0.5);
    CHECK(eval.bracket > 0.0);
  }
}

TEST_CASE("coefficient kernel") {
  RngStream rng(23);
  const int n = 100;
  const Eigen::VectorXd x = random_design(rng, n);
  const Eigen::VectorXd y = f2_data(rng, x, 0.3);

  SUBCASE("global mean centers on the sample mean under diffuse kappa") {
    ModelConfig cfg;
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = 6;
    sampler.state().lambda = 1.0;
    sampler.state().tau = 0.5;
    sampler.state().sigma2 = 1e-24;  // pin the draw at the conditional mean
    RngStream draws(3);
    sampler.step_coefficients(draws);
    CHECK(std::abs(sampler.state().theta1 - y.mean()) <
          1e-10 * std::abs(y.mean()));
  }
  SUBCASE("empirical moments match sigma2 * posterior inverse") {
    ModelConfig cfg;
    GibbsSampler sampler(x, y, cfg, {});
    const int J = 5;
    sampler.state().J = J;
    sampler.state().lambda = 0.9;
    sampler.state().tau = 0.35;
    sampler.state().sigma2 = 0.8;

    const SplineBasis basis = eval_basis(make_knots(J, 3), x);
    const PenaltySet pens = penalty_set(J);
    const Eigen::MatrixXd gram = basis.centered.transpose() * basis.centered;
    const Eigen::MatrixXd omega =
        fused_penalty(pens.penalty_centered, gram, n, 0.35) / 0.9 + gram;
    const Eigen::MatrixXd cov =
        0.8 * omega.ldlt().solve(Eigen::MatrixXd::Identity(J - 1, J - 1));
    const Eigen::VectorXd mean =
        omega.ldlt().solve(basis.centered.transpose() * y);

    const int m = 100000;
    RngStream draws(4);
    Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(J - 1, J - 1);
    Eigen::VectorXd sum1 = Eigen::VectorXd::Zero(J - 1);
    for (int s = 0; s < m; ++s) {
      sampler.step_coefficients(draws);
      sum1 += sampler.state().theta;
      sum2 += sampler.state().theta * sampler.state().theta.transpose();
    }
    const Eigen::VectorXd mhat = sum1 / m;
    const Eigen::MatrixXd chat = sum2 / m - mhat * mhat.transpose();
    for (int a = 0; a < J - 1; ++a) {
      CHECK(std::abs(mhat[a] - mean[a]) < 4.0 * std::sqrt(cov(a, a) / m));
      for (int b = 0; b <= a; ++b) {
        const double se =
            std::sqrt((cov(a, a) * cov(b, b) + cov(a, b) * cov(a, b)) / m);
        CHECK(std::abs(chat(a, b) - cov(a, b)) < 4.0 * se);
      }
    }
  }
  SUBCASE("noise-free limit recovers the ridge-shrunk coefficients") {
    ModelConfig cfg;
    const int J = 6;
    const SplineBasis basis = eval_basis(make_knots(J, 3), x);
    const PenaltySet pens = penalty_set(J);
    Eigen::VectorXd v(J - 1);
    RngStream vgen(8);
    for (int j = 0; j < J - 1; ++j) v[j] = vgen.normal();
    const Eigen::VectorXd y_exact = basis.centered * v;
    GibbsSampler sampler(x, y_exact, cfg, {});
    sampler.state().J = J;
    sampler.state().lambda = 2.0;
    sampler.state().tau = 0.5;
    sampler.state().sigma2 = 1e-24;
    RngStream draws(9);
    sampler.step_coefficients(draws);
    const Eigen::MatrixXd gram = basis.centered.transpose() * basis.centered;
    const Eigen::MatrixXd omega =
        fused_penalty(pens.penalty_centered, gram, n, 0.5) / 2.0 + gram;
    const Eigen::VectorXd expect = omega.ldlt().solve(gram * v);
    CHECK((sampler.state().theta - expect).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("dispersion slice kernel is stationary for its conditional") {
  RngStream rng(41);
  const int n = 60;
  const Eigen::VectorXd x = random_design(rng, n);
  const Eigen::VectorXd y = f2_data(rng, x, 0.5);
  ModelConfig cfg;
  GibbsSampler sampler(x, y, cfg, {});
  const int J = 8;
  sampler.state().J = J;
  sampler.state().tau = 0.45;
  sampler.state().sigma2 = 0.25;
  sampler.state().lambda = 1.0;
  RngStream aux(55);
  Eigen::VectorXd theta(J - 1);
  for (int j = 0; j < J - 1; ++j) theta[j] = aux.normal(0.0, 0.6);
  sampler.state().theta = theta;

  const SplineBasis basis = eval_basis(make_knots(J, 3), x);
  const PenaltySet pens = penalty_set(J);
  const Eigen::MatrixXd Q = fused_penalty(
      pens.penalty_centered, basis.centered.transpose() * basis.centered, n,
      0.45);
  const double quad = theta.dot(Q * theta);
  const double ig_shape = 0.5 * (J - 3);
  const double ig_rate = quad / (2.0 * 0.25);
  auto log_target = [&](double v) {
    return -cfg.c_lambda * v - (ig_shape + 1.0) * std::log(v) - ig_rate / v;
  };

  // quadrature-normalized CDF of the Exp x IG-kernel product
  const double hi = 80.0;
  const int cells = 400000;
  std::vector<double> cdf(static_cast<size_t>(cells) + 1, 0.0);
  double acc = 0.0;
  double prev = 0.0;
  for (int i = 1; i <= cells; ++i) {
    const double b = hi * i / cells;
    const double fb = std::exp(log_target(b));
    acc += 0.5 * (prev + fb) * hi / cells;
    prev = fb;
    cdf[static_cast<size_t>(i)] = acc;
  }

  RngStream draws(66);
  const int m = 200000;
  std::vector<double> sample(static_cast<size_t>(m));
  for (int burn = 0; burn < 200; ++burn) sampler.step_dispersion_slice(draws);
  for (int s = 0; s < m; ++s) {
    sampler.step_dispersion_slice(draws);
    sample[static_cast<size_t>(s)] = sampler.state().lambda;
  }
  const double ks = oracle::ks_statistic(sample, [&](double v) {
    if (v <= 0.0) return 0.0;
    if (v >= hi) return 1.0;
    const double pos = v / hi * cells;
    const auto idx = static_cast<size_t>(pos);
    return cdf[idx] / acc;
  });
  CHECK(ks < 0.01);
  // a degenerate quadratic form must fail loudly
  sampler.state().theta = Eigen::VectorXd::Zero(J - 1);
  CHECK_THROWS_AS(sampler.step_dispersion_slice(draws), std::runtime_error);
}

TEST_CASE("mixing grid kernel") {
  RngStream rng(61);
  const int n = 80;
  const Eigen::VectorXd x = random_design(rng, n);
  const Eigen::VectorXd y = f2_data(rng, x, 0.3);

  SUBCASE("eigenvalue form differs from the dense Gaussian by a constant") {
    ModelConfig cfg;
    for (int trial = 0; trial < 8; ++trial) {
      const int J = 5 + trial % 6;
      GibbsSampler sampler(x, y, cfg, {});
      sampler.state().J = J;
      sampler.state().lambda = std::exp(rng.normal(0.0, 0.7));
      sampler.state().sigma2 = std::exp(rng.normal(-1.0, 0.5));
      Eigen::VectorXd theta(J - 1);
      for (int j = 0; j < J - 1; ++j) theta[j] = rng.normal(0.0, 0.8);
      sampler.state().theta = theta;

      const Eigen::VectorXd logw = sampler.mixing_grid_log_density();
      const Eigen::VectorXd grid = sampler.mixing_grid_points();
      const SplineBasis basis = eval_basis(make_knots(J, 3), x);
      const PenaltySet pens = penalty_set(J);
      const Eigen::MatrixXd gram = basis.centered.transpose() * basis.centered;
      double lo = 1e300, hi = -1e300;
      for (Eigen::Index g = 0; g < grid.size(); ++g) {
        const Eigen::MatrixXd Q =
            fused_penalty(pens.penalty_centered, gram, n, grid[g]);
        const double dense = oracle::gaussian_logpdf_prec(
            theta, Q, sampler.state().lambda * sampler.state().sigma2);
        const double diff = logw[g] - dense;
        lo = std::min(lo, diff);
        hi = std::max(hi, diff);
      }
      CHECK(hi - lo < 1e-8);
    }
  }
  SUBCASE("pencil eigenvalues are nonnegative with a zero from the rank gap") {
    const int J = 9;
    const SplineBasis basis = eval_basis(make_knots(J, 3), x);
    const PenaltySet pens = penalty_set(J);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        pens.penalty_centered, basis.centered.transpose() * basis.centered);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
    CHECK(std::abs(es.eigenvalues()[0]) < 1e-8);  // rank J-2 in dimension J-1
    CHECK(es.eigenvalues()[1] > 1e-8);
  }
  SUBCASE("zero coefficients leave only determinant and dimension terms") {
    ModelConfig cfg;
    const int J = 7;
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = J;
    sampler.state().lambda = 1.0;
    sampler.state().sigma2 = 1.0;
    sampler.state().theta = Eigen::VectorXd::Zero(J - 1);
    const Eigen::VectorXd logw = sampler.mixing_grid_log_density();
    GibbsSampler probe(x, y, cfg, {});
    probe.state() = sampler.state();
    probe.state().lambda = 17.0;  // quadratic terms vanish, so no effect
    probe.state().sigma2 = 0.01;
    const Eigen::VectorXd logw2 = probe.mixing_grid_log_density();
    CHECK((logw - logw2).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("draws reproduce the exact discrete law") {
    ModelConfig cfg;
    const int J = 8;
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = J;
    sampler.state().lambda = 0.05;
    sampler.state().sigma2 = 0.09;
    RngStream aux(3);
    Eigen::VectorXd theta(J - 1);
    for (int j = 0; j < J - 1; ++j) theta[j] = aux.normal(0.0, 0.7);
    sampler.state().theta = theta;

    const Eigen::VectorXd logw = sampler.mixing_grid_log_density();
    const Eigen::VectorXd grid = sampler.mixing_grid_points();
    Eigen::VectorXd probs = (logw.array() - logw.maxCoeff()).exp();
    probs /= probs.sum();

    std::map<double, int> counts;
    RngStream draws(44);
    const int m = 200000;
    for (int s = 0; s < m; ++s) {
      sampler.step_mixing_grid(draws);
      counts[sampler.state().tau]++;
    }
    double tv = 0.0;
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
      const double got = counts.count(grid[g])
                             ? static_cast<double>(counts[grid[g]]) / m
                             : 0.0;
      tv += 0.5 * std::abs(got - probs[g]);
    }
    CHECK(tv < 0.01);
  }
}

TEST_CASE("full chain") {
  RngStream rng(71);
  SUBCASE("identical seeds give bitwise-identical draws") {
    const int n = 80;
    const Eigen::VectorXd x = random_design(rng, n);
    const Eigen::VectorXd y = f2_data(rng, x, 0.5);
    ModelConfig cfg;
    cfg.iterations = 2500;
    cfg.burnin = 500;
    cfg.seed = 1234;
    const PosteriorDraws a = run_chain(x, y, cfg);
    const PosteriorDraws b = run_chain(x, y, cfg);
    REQUIRE(a.draws.size() == b.draws.size());
    for (size_t s = 0; s < a.draws.size(); ++s) {
      CHECK(a.draws[s].J == b.draws[s].J);
      CHECK(a.draws[s].sigma2 == b.draws[s].sigma2);
      CHECK(a.draws[s].theta1 == b.draws[s].theta1);
      CHECK(a.draws[s].lambda == b.draws[s].lambda);
      CHECK(a.draws[s].tau == b.draws[s].tau);
      CHECK(a.draws[s].theta == b.draws[s].theta);
    }
  }
  SUBCASE("conditional chain matches the closed-form posterior mean") {
    const int n = 120;
    const Eigen::VectorXd x = random_design(rng, n);
    const Eigen::VectorXd y = f2_data(rng, x, 0.4);
    ModelConfig cfg;
    const int J = 9;
    GibbsSampler sampler(x, y, cfg, {});
    sampler.state().J = J;
    sampler.state().lambda = 1.0;
    sampler.state().tau = 0.5;
    sampler.state().sigma2 = 0.16;

    const SplineBasis basis = eval_basis(make_knots(J, 3), x);
    const PenaltySet pens = penalty_set(J);
    const Eigen::MatrixXd gram = basis.centered.transpose() * basis.centered;
    const Eigen::MatrixXd omega =
        fused_penalty(pens.penalty_centered, gram, n, 0.5) + gram;
    const Eigen::VectorXd closed_form =
        Eigen::VectorXd::Constant(n, y.sum() / (n + cfg.inv_kappa_sq())) +
        basis.centered * omega.ldlt().solve(basis.centered.transpose() * y);

    RngStream draws(5);
    const int m = 20000;
    Eigen::VectorXd mean_f = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sq_f = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < m; ++s) {
      sampler.step_variance(draws);
      sampler.step_coefficients(draws);
      const Eigen::VectorXd f =
          Eigen::VectorXd::Constant(n, sampler.state().theta1) +
          basis.centered * sampler.state().theta;
      mean_f += f;
      sq_f += f.cwiseProduct(f);
    }
    mean_f /= m;
    sq_f = (sq_f / m - mean_f.cwiseProduct(mean_f)).cwiseMax(0.0);
    for (int i = 0; i < n; ++i) {
      const double se = std::sqrt(sq_f[i] / m);
      CHECK(std::abs(mean_f[i] - closed_form[i]) < 4.0 * se + 1e-12);
    }
  }
  SUBCASE("dimension move accepts at a healthy rate on smooth data") {
    const int n = 200;
    const Eigen::VectorXd x = random_design(rng, n);
    const Eigen::VectorXd y = f2_data(rng, x, 0.5);
    ModelConfig cfg;
    cfg.iterations = 6000;
    cfg.burnin = 1000;
    cfg.seed = 777;
    GibbsSampler sampler(x, y, cfg, {});
    const PosteriorDraws draws = sampler.run();
    const double rate = draws.dimension_acceptance_rate();
    CHECK(rate > 0.05);
    CHECK(rate < 0.8);
    for (const ChainState& st : draws.draws) {
      CHECK(std::isfinite(st.sigma2));
      CHECK(std::isfinite(st.theta1));
      CHECK(std::isfinite(st.lambda));
      CHECK(st.theta.allFinite());
      CHECK(st.J >= cfg.j_min);
      CHECK(st.sigma2 > 0.0);
      CHECK(st.lambda > 0.0);
      CHECK(st.tau > cfg.delta);
      CHECK(st.tau < 1.0 - cfg.delta);
    }
  }
  SUBCASE("rejects invalid inputs") {
    Eigen::VectorXd x(5), y(5);
    x << 0.1, 0.2, 0.3, 0.4, 0.5;
    y.setZero();
    ModelConfig cfg;
    CHECK_THROWS_AS(GibbsSampler(x, y, cfg, {}), std::invalid_argument);
    Eigen::VectorXd x2 = Eigen::VectorXd::LinSpaced(10, 0.0, 2.0);
    Eigen::VectorXd y2 = Eigen::VectorXd::Zero(10);
    CHECK_THROWS_AS(GibbsSampler(x2, y2, cfg, {}), std::invalid_argument);
  }
}
