#include "gar/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "gar/banded.hpp"
#include "gar/stats.hpp"

namespace gar {

QuarterlySeries growth_target(const QuarterlySeries& log_level, int h) {
  if (h < 1) throw ParameterError("growth_target: h must be >= 1");
  const Eigen::Index n = log_level.size();
  if (n <= h)
    throw LengthError("growth_target: series '" + log_level.name() + "' has " +
                      std::to_string(n) + " observations, needs more than " +
                      std::to_string(h));
  Eigen::VectorXd out(n - h);
  const double scale = 400.0 / static_cast<double>(h);
  for (Eigen::Index t = 0; t < n - h; ++t)
    out[t] = (log_level[t + h] - log_level[t]) * scale;
  return QuarterlySeries(log_level.name() + "_growth_h" + std::to_string(h),
                         log_level.start(), std::move(out));
}

QuarterlySeries lagged_growth(const QuarterlySeries& log_level) {
  const Eigen::Index n = log_level.size();
  if (n < 2) throw LengthError("lagged_growth: need at least 2 observations");
  Eigen::VectorXd out(n - 1);
  for (Eigen::Index t = 1; t < n; ++t)
    out[t - 1] = (log_level[t] - log_level[t - 1]) * 400.0;
  return QuarterlySeries("lag_growth", log_level.start() + 1, std::move(out));
}

HpResult hp_detrend(const QuarterlySeries& series, double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("hp_detrend: lambda must be positive");
  const Eigen::Index n = series.size();
  if (n < 4) throw LengthError("hp_detrend: need at least 4 observations");
  if (!series.values().allFinite())
    throw InputError("hp_detrend: non-finite input");

  // Normal equations (I + lambda D'D) tau = y with D the second-difference
  // operator; the system is pentadiagonal and SPD.
  BandMatrix a(n, 2);
  for (Eigen::Index j = 0; j < n; ++j) a.add(j, j, 1.0);
  for (Eigen::Index r = 0; r + 2 < n; ++r) {
    // Row r of D has entries (1, -2, 1) at columns r, r+1, r+2.
    a.add(r, r, lambda);
    a.add(r + 1, r + 1, 4.0 * lambda);
    a.add(r + 2, r + 2, lambda);
    a.add(r + 1, r, -2.0 * lambda);
    a.add(r + 2, r + 1, -2.0 * lambda);
    a.add(r + 2, r, lambda);
  }
  BandCholesky chol(a);
  Eigen::VectorXd trend = chol.solve(series.values());
  // One step of iterative refinement; the system is ill conditioned for the
  // slow-moving lambda values.
  trend += chol.solve(series.values() - a.multiply(trend));
  Eigen::VectorXd cycle = series.values() - trend;
  return HpResult{
      QuarterlySeries(series.name() + "_trend", series.start(), std::move(trend)),
      QuarterlySeries(series.name() + "_cycle", series.start(), std::move(cycle))};
}

QuarterlySeries spline_disaggregate(const AnnualSeries& annual, int knot_quarter) {
  if (knot_quarter < 1 || knot_quarter > 4)
    throw ParameterError("spline_disaggregate: knot_quarter must be in 1..4");
  const Eigen::Index m = annual.size();
  if (m < 3)
    throw LengthError("spline_disaggregate: need at least 3 annual observations");

  // Knots sit `4` quarters apart. Work on the quarter-index axis with knot i
  // at position 4*i; the interpolant is one quadratic per year, with value
  // and first derivative continuous across knots. The free initial slope is
  // taken from the parabola through the first three knots, which makes the
  // scheme exact for polynomials of degree <= 2.
  const double hstep = 4.0;
  const Eigen::VectorXd& av = annual.values();
  Eigen::VectorXd slope(m);
  slope[0] = (-3.0 * av[0] + 4.0 * av[1] - av[2]) / (2.0 * hstep);
  for (Eigen::Index i = 1; i < m; ++i)
    slope[i] = 2.0 * (av[i] - av[i - 1]) / hstep - slope[i - 1];

  const Eigen::Index n_quarters = 4 * (m - 1) + 1;
  Eigen::VectorXd out(n_quarters);
  for (Eigen::Index q = 0; q < n_quarters; ++q) {
    const Eigen::Index piece = std::min<Eigen::Index>(q / 4, m - 2);
    const double u = static_cast<double>(q) - 4.0 * static_cast<double>(piece);
    const double d2 = (slope[piece + 1] - slope[piece]) / (2.0 * hstep);
    out[q] = av[piece] + slope[piece] * u + d2 * u * u;
  }
  return QuarterlySeries(annual.name(),
                         YearQuarter(annual.start_year(), knot_quarter),
                         std::move(out));
}

QuarterlySeries avg_log_growth_3y(const QuarterlySeries& levels) {
  const Eigen::Index n = levels.size();
  if (n <= 12) throw LengthError("avg_log_growth_3y: need more than 12 observations");
  if ((levels.values().array() <= 0.0).any())
    throw DomainError("avg_log_growth_3y: series '" + levels.name() +
                      "' has non-positive levels");
  Eigen::VectorXd out(n - 12);
  for (Eigen::Index t = 12; t < n; ++t)
    out[t - 12] = (std::log(levels[t]) - std::log(levels[t - 12])) / 3.0 * 100.0;
  return QuarterlySeries(levels.name() + "_growth3y", levels.start() + 12,
                         std::move(out));
}

QuarterlySeries zscore(const QuarterlySeries& series) {
  const double m = series.values().mean();
  const double s = sd(series.values());
  if (!(s > 0.0)) throw DomainError("zscore: series '" + series.name() +
                                    "' has zero variance");
  Eigen::VectorXd out = (series.values().array() - m) / s;
  return QuarterlySeries(series.name(), series.start(), std::move(out));
}

RegressionDataset assemble_dataset(const QuarterlySeries& log_gdp,
                                   const std::vector<QuarterlySeries>& predictors,
                                   int h, const AssembleSpec& spec) {
  if (h < 1) throw ParameterError("assemble_dataset: h must be >= 1");

  const QuarterlySeries lag = lagged_growth(log_gdp);

  std::vector<const QuarterlySeries*> selected;
  for (const auto& name : spec.predictor_names) {
    const auto it = std::find_if(predictors.begin(), predictors.end(),
                                 [&](const QuarterlySeries& s) { return s.name() == name; });
    if (it == predictors.end())
      throw AlignmentError("assemble_dataset: no predictor series named '" + name + "'");
    selected.push_back(&*it);
  }

  // Maximal common support: x_t needs the lagged growth (gdp through t) and
  // every selected predictor at t. No look-ahead enters the regressors.
  YearQuarter first = lag.start();
  YearQuarter last = lag.end();
  for (const auto* s : selected) {
    first = std::max(first, s->start());
    last = std::min(last, s->end());
  }
  if (last < first)
    throw AlignmentError("assemble_dataset: series have no common quarter range");

  const int n = last - first + 1;
  const int k = 2 + static_cast<int>(selected.size());
  Eigen::MatrixXd x(n, k);
  std::vector<YearQuarter> origins;
  origins.reserve(n);
  for (int i = 0; i < n; ++i) {
    const YearQuarter t = first + i;
    origins.push_back(t);
    x(i, 0) = 1.0;
    x(i, 1) = lag.at(t);
    for (std::size_t j = 0; j < selected.size(); ++j)
      x(i, 2 + static_cast<int>(j)) = selected[j]->at(t);
  }

  // Targets exist where Y_{t+h} is observed.
  int n_target = 0;
  while (n_target < n && log_gdp.covers(origins[n_target] + h)) ++n_target;
  Eigen::VectorXd y(n_target);
  const double scale = 400.0 / static_cast<double>(h);
  for (int i = 0; i < n_target; ++i)
    y[i] = (log_gdp.at(origins[i] + h) - log_gdp.at(origins[i])) * scale;

  std::vector<std::string> names{"intercept", "lag_growth"};
  for (const auto* s : selected) names.push_back(s->name());

  return RegressionDataset(h, std::move(origins), std::move(x), std::move(y),
                           std::move(names));
}

}  // namespace gar
