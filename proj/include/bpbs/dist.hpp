#pragma once

#include "bpbs/rng.hpp"

namespace bpbs {

/// log density of InverseGamma(shape, rate): x^{-shape-1} exp(-rate/x),
/// normalized.
double inverse_gamma_logpdf(double x, double shape, double rate);

/// P(X <= x) for X ~ InverseGamma(shape, rate).
double inverse_gamma_cdf(double x, double shape, double rate);

/// Inverse of inverse_gamma_cdf in its second argument.
double inverse_gamma_quantile(double p, double shape, double rate);

/// Draw from InverseGamma(shape, rate) conditioned on X <= upper.
/// Inverse-CDF on the regularized incomplete gamma function; falls back to
/// a tail rejection sampler when the CDF mass below the bound underflows.
double truncated_inverse_gamma(RngStream& rng, double shape, double rate,
                               double upper);

/// Standard normal quantile.
double normal_quantile(double p);

}  // namespace bpbs
