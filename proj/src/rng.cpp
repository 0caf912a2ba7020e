#include "bpbs/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bpbs {

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::exponential(double rate) {
  return -std::log(uniform_pos()) / rate;
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = uniform_pos();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::inverse_gamma(double shape, double rate) {
  return rate / gamma(shape);
}

int RngStream::categorical_from_log_weights(const double* logw, int count) {
  double logmax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i)
    if (logw[i] > logmax) logmax = logw[i];
  if (!std::isfinite(logmax))
    throw std::runtime_error("categorical draw: all log-weights are -inf");
  double total = 0.0;
  std::vector<double> w(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    w[static_cast<size_t>(i)] = std::exp(logw[i] - logmax);
    total += w[static_cast<size_t>(i)];
  }
  double target = uniform() * total;
  for (int i = 0; i < count; ++i) {
    target -= w[static_cast<size_t>(i)];
    if (target <= 0.0) return i;
  }
  return count - 1;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                       std::uint64_t d) {
  auto finalize = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  std::uint64_t s = finalize(a);
  s = finalize(s ^ finalize(b + 0x1000));
  s = finalize(s ^ finalize(c + 0x2000));
  s = finalize(s ^ finalize(d + 0x3000));
  return s;
}

}  // namespace bpbs
