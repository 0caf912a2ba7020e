#include "bpbs/dist.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace bpbs {

double inverse_gamma_logpdf(double x, double shape, double rate) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) -
         (shape + 1.0) * std::log(x) - rate / x;
}

double inverse_gamma_cdf(double x, double shape, double rate) {
  if (!(x > 0.0)) return 0.0;
  // X <= x  <=>  1/X >= 1/x with 1/X ~ Gamma(shape, rate)
  return boost::math::gamma_q(shape, rate / x);
}

double inverse_gamma_quantile(double p, double shape, double rate) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return rate / boost::math::gamma_q_inv(shape, p);
}

namespace {

// Gamma(shape, 1) conditioned on the tail {y >= cut}, by rejection from a
// shifted exponential envelope. Valid whenever cut is past the mode, which
// is exactly the regime where the inverse-CDF route has underflowed.
double gamma_tail(RngStream& rng, double shape, double cut) {
  const double mu = shape >= 1.0 ? 1.0 - (shape - 1.0) / cut : 1.0;
  for (;;) {
    const double y = cut + rng.exponential(mu);
    const double log_accept = (shape - 1.0) * std::log(y / cut) - (1.0 - mu) * (y - cut);
    if (std::log(rng.uniform_pos()) <= log_accept) return y;
  }
}

}  // namespace

double truncated_inverse_gamma(RngStream& rng, double shape, double rate,
                               double upper) {
  if (!(shape > 0.0) || !(rate > 0.0) || !(upper > 0.0))
    throw std::invalid_argument("truncated_inverse_gamma: nonpositive parameter");
  const double mass = boost::math::gamma_q(shape, rate / upper);
  if (mass > 1e-280) {
    const double u = rng.uniform_pos() * mass;
    return rate / boost::math::gamma_q_inv(shape, u);
  }
  // CDF underflow: the truncation point sits deep in the lower tail of the
  // inverse gamma, i.e. the deep upper tail of the gamma in 1/x.
  return rate / gamma_tail(rng, shape, rate / upper);
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

}  // namespace bpbs
