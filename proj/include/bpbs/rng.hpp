#pragma once

#include <cstdint>
#include <random>

namespace bpbs {

/// Deterministic random stream. All transforms from the raw 64-bit source
/// are spelled out here so that a seed pins the draw sequence exactly,
/// independent of standard-library distribution internals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform();

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos();

  /// Uniform strictly inside (0, 1).
  double uniform_open();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double exponential(double rate);

  /// Gamma(shape, rate 1) by Marsaglia-Tsang squeeze, boosted below shape 1.
  double gamma(double shape);

  /// Inverse gamma with density proportional to x^{-shape-1} exp(-rate/x).
  double inverse_gamma(double shape, double rate);

  /// Index into an unnormalized log-weight vector, by Gumbel-free
  /// log-sum-exp inversion of the discrete CDF.
  int categorical_from_log_weights(const double* logw, int count);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Order-free 64-bit seed mixer (splitmix64 finalizer chain) used to derive
/// independent stream seeds from a base seed and structured indices.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0x9e3779b97f4a7c15ull,
                       std::uint64_t c = 0, std::uint64_t d = 0);

}  // namespace bpbs
