#ifndef GAR_RNG_HPP
#define GAR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "gar/errors.hpp"

namespace gar {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic stream splitting: every independent consumer of randomness
// (chain, recursive-forecast window, predictive simulation, ...) derives its
// own seed as
//   splitmix64(master ^ splitmix64(fnv1a(tag) ^ splitmix64(index))).
// The tag identifies the purpose, the index the window/replication.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64-bit offset
  for (const char c : tag) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ULL;
  }
  return splitmix64(master ^ splitmix64(h ^ splitmix64(index)));
}

// Random generator with hand-rolled variate transforms. std::mt19937_64
// supplies the bit stream; the transforms avoid the implementation-defined
// std::*_distribution classes so that draw sequences are identical for a
// given seed on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via the Marsaglia polar method (second value discarded).
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Gamma(shape, rate) via Marsaglia-Tsang, with the U^(1/shape) boost for
  // shape < 1.
  double gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
      throw ParameterError("gamma: shape and rate must be positive");
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

  double chi_squared(double df) { return gamma(0.5 * df, 0.5); }

  double beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
  }

  double inverse_gamma(double shape, double scale) {
    return scale / gamma(shape, 1.0);
  }

  // Generalized inverse Gaussian with density proportional to
  //   x^(p-1) exp(-(a x + b / x) / 2),  x > 0.
  // Ratio-of-uniforms with and without mode shift for the bulk of the
  // parameter space, a three-piece hat for small omega = sqrt(a b) with
  // |p| < 1, and Gamma / inverse-Gamma limits when one of a, b underflows.
  double gig(double p, double a, double b);

 private:
  double gig_two_param(double lam, double omega);

  std::mt19937_64 engine_;
};

namespace detail {

// log of the two-parameter GIG kernel z^(lam-1) exp(-(omega/2)(z + 1/z)).
inline double gig_log_kernel(double z, double lam, double omega) {
  return (lam - 1.0) * std::log(z) - 0.5 * omega * (z + 1.0 / z);
}

inline double gig_mode(double lam, double omega) {
  if (lam >= 1.0)
    return (std::sqrt((lam - 1.0) * (lam - 1.0) + omega * omega) + (lam - 1.0)) /
           omega;
  return omega /
         (std::sqrt((1.0 - lam) * (1.0 - lam) + omega * omega) + (1.0 - lam));
}

}  // namespace detail

inline double Rng::gig(double p, double a, double b) {
  if (!std::isfinite(p) || !std::isfinite(a) || !std::isfinite(b) || a < 0.0 ||
      b < 0.0)
    throw ParameterError("gig: invalid parameters");
  constexpr double kTiny = 1e-13;
  if (b <= kTiny * std::max(1.0, a)) {
    // b -> 0: Gamma(p, a/2) limit, valid for p > 0.
    if (p > 1e-8 && a > 0.0) return gamma(p, 0.5 * a);
    if (b <= 0.0) throw ParameterError("gig: b must be positive when p <= 0");
  }
  if (a <= kTiny * std::max(1.0, b)) {
    // a -> 0: inverse-Gamma(-p, b/2) limit, valid for p < 0.
    if (p < -1e-8 && b > 0.0) return inverse_gamma(-p, 0.5 * b);
    if (a <= 0.0) throw ParameterError("gig: a must be positive when p >= 0");
  }
  const double omega = std::sqrt(a * b);
  if (omega < 1e-8) {
    if (p > 1e-4) return gamma(p, 0.5 * a);
    if (p < -1e-4) return inverse_gamma(-p, 0.5 * b);
  }
  if (p >= 0.0) return std::sqrt(b / a) * gig_two_param(p, omega);
  return 1.0 / (std::sqrt(a / b) * gig_two_param(-p, omega));
}

inline double Rng::gig_two_param(double lam, double omega) {
  const double m = detail::gig_mode(lam, omega);
  const double lg_mode = detail::gig_log_kernel(m, lam, omega);
  // Relative log kernel; <= 0 everywhere, = 0 at the mode.
  const auto lg = [&](double z) {
    return detail::gig_log_kernel(z, lam, omega) - lg_mode;
  };

  if (lam > 2.0 || omega > 3.0) {
    // Ratio of uniforms, shifted by the mode. The extrema of (x-m)sqrt(g(x))
    // solve a cubic with three real roots in this parameter region.
    const double ca = -(2.0 * (lam + 1.0) / omega + m);
    const double cb = 2.0 * (lam - 1.0) * m / omega - 1.0;
    const double cc = m;
    const double pp = cb - ca * ca / 3.0;
    const double qq = 2.0 * ca * ca * ca / 27.0 - ca * cb / 3.0 + cc;
    double arg = -qq / (2.0 * std::sqrt(-pp * pp * pp / 27.0));
    arg = std::min(1.0, std::max(-1.0, arg));
    const double fi = std::acos(arg);
    const double fak = 2.0 * std::sqrt(-pp / 3.0);
    const double root_hi = fak * std::cos(fi / 3.0) - ca / 3.0;
    const double root_lo = fak * std::cos(fi / 3.0 + 4.0 * M_PI / 3.0) - ca / 3.0;
    const double uplus = (root_hi - m) * std::exp(0.5 * lg(root_hi));
    const double uminus = (root_lo - m) * std::exp(0.5 * lg(root_lo));
    for (;;) {
      const double u = uminus + uniform() * (uplus - uminus);
      const double v = uniform();
      const double x = u / v + m;
      if (x > 0.0 && 2.0 * std::log(v) <= lg(x)) return x;
    }
  }

  if (lam >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
    // Plain ratio of uniforms on [0, u+] x [0, 1].
    const double xplus =
        (std::sqrt((lam + 1.0) * (lam + 1.0) + omega * omega) + (lam + 1.0)) /
        omega;
    const double uplus = xplus * std::exp(0.5 * lg(xplus));
    for (;;) {
      const double u = uplus * uniform();
      const double v = uniform();
      const double x = u / v;
      if (2.0 * std::log(v) <= lg(x)) return x;
    }
  }

  // 0 <= lam < 1 and omega small: rejection from a three-piece hat
  // (constant around the mode, power law, exponential tail).
  const double x0 = omega / (1.0 - lam);
  const double xcut = 2.0 / omega;  // > x0 throughout this regime
  const double k0 = std::exp(lg_mode);
  const double k1 = std::exp(-omega);
  const double k2 = std::pow(xcut, lam - 1.0);
  const double area0 = k0 * x0;
  const double area1 = (lam > 0.0)
                           ? k1 * (std::pow(xcut, lam) - std::pow(x0, lam)) / lam
                           : k1 * std::log(xcut / x0);
  const double area2 = k2 * xcut * std::exp(-1.0);
  const double total = area0 + area1 + area2;
  for (;;) {
    double v = total * uniform();
    double x, hat;
    if (v <= area0) {
      x = x0 * v / area0;
      hat = k0;
      if (!(x > 0.0)) continue;
    } else if (v <= area0 + area1) {
      v -= area0;
      if (lam > 0.0)
        x = std::pow(std::pow(x0, lam) + v * lam / k1, 1.0 / lam);
      else
        x = x0 * std::exp(v / k1);
      hat = k1 * std::pow(x, lam - 1.0);
    } else {
      v -= area0 + area1;
      x = -xcut * std::log(std::exp(-1.0) - v / (k2 * xcut));
      hat = k2 * std::exp(-0.5 * omega * x);
    }
    const double u = uniform() * hat;
    if (std::log(u) <= detail::gig_log_kernel(x, lam, omega)) return x;
  }
}

}  // namespace gar

#endif  // GAR_RNG_HPP
