#ifndef GAR_STATS_HPP
#define GAR_STATS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "gar/errors.hpp"

namespace gar {

inline double mean(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw LengthError("mean of empty vector");
  return x.mean();
}

// Sample standard deviation (n-1 denominator).
inline double sd(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 2) throw LengthError("sd needs at least 2 observations");
  const double m = x.mean();
  return std::sqrt((x.array() - m).square().sum() / static_cast<double>(n - 1));
}

inline double variance(const Eigen::VectorXd& x) {
  const double s = sd(x);
  return s * s;
}

// Sample skewness m3 / m2^(3/2) (biased version, adequate for large n).
inline double skewness(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 3) throw LengthError("skewness needs at least 3 observations");
  const double m = x.mean();
  const Eigen::ArrayXd d = x.array() - m;
  const double m2 = d.square().mean();
  const double m3 = d.cube().mean();
  return m3 / std::pow(m2, 1.5);
}

// Empirical quantile with linear interpolation of order statistics at
// position (n-1)p + 1 (1-based). `sorted` must be ascending.
inline double quantile_of_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw LengthError("quantile of empty sample");
  if (!(p > 0.0 && p < 1.0))
    throw ParameterError("quantile probability must be in (0,1)");
  const std::size_t n = sorted.size();
  const double pos = static_cast<double>(n - 1) * p;  // 0-based
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(Eigen::VectorXd x, double p) {
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  return quantile_of_sorted(v, p);
}

inline double median(const Eigen::VectorXd& x) { return quantile(x, 0.5); }

inline double normal_pdf(double x, double mu = 0.0, double sigma = 1.0) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

inline double normal_log_pdf(double x, double mu, double sigma2) {
  const double d = x - mu;
  return -0.5 * (std::log(2.0 * M_PI * sigma2) + d * d / sigma2);
}

inline double normal_cdf(double x, double mu = 0.0, double sigma = 1.0) {
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

namespace detail {

// Continued-fraction evaluation for the regularized incomplete beta function
// (modified Lentz).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * detail::betacf(a, b, x) / a;
  return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

// CDF of Student-t with `df` degrees of freedom.
inline double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double p = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - p : p;
}

// Two-sided critical value: |t| threshold at significance level `alpha`.
inline double student_t_critical(double df, double alpha = 0.05) {
  if (df <= 0.0) throw ParameterError("student_t_critical: df must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("student_t_critical: alpha must be in (0,1)");
  const double target = 1.0 - alpha / 2.0;
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, df) < target) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gar

#endif  // GAR_STATS_HPP
