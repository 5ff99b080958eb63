#ifndef GAR_PREPROCESS_HPP
#define GAR_PREPROCESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gar/dataset.hpp"
#include "gar/time_series.hpp"

namespace gar {

// Annualized percent growth h quarters ahead, indexed by origin:
// value at t is (Y_{t+h} - Y_t) * (4/h) * 100 for a log-level series Y.
QuarterlySeries growth_target(const QuarterlySeries& log_level, int h);

// One-quarter annualized percent growth observed at t:
// (Y_t - Y_{t-1}) * 400; output starts one quarter after the input.
QuarterlySeries lagged_growth(const QuarterlySeries& log_level);

struct HpResult {
  QuarterlySeries trend;
  QuarterlySeries cycle;
};

// Hodrick-Prescott decomposition. The trend minimizes the usual penalized
// least squares objective; the pentadiagonal normal equations
// (I + lambda D'D) tau = y are solved with a band Cholesky.
HpResult hp_detrend(const QuarterlySeries& series, double lambda);

// C1 piecewise-quadratic interpolation of annual values onto quarters. The
// annual value of each year is anchored at quarter `knot_quarter`; the output
// runs from the first to the last knot and reproduces the annual values there
// exactly. Polynomials of degree <= 2 are reproduced exactly.
QuarterlySeries spline_disaggregate(const AnnualSeries& annual, int knot_quarter = 4);

// Annualized average log growth over the trailing 12 quarters, in percent:
// value at t is (ln X_t - ln X_{t-12}) / 3 * 100 for a positive level series.
QuarterlySeries avg_log_growth_3y(const QuarterlySeries& levels);

// Standardize to zero mean, unit sample standard deviation.
QuarterlySeries zscore(const QuarterlySeries& series);

// Which predictor series (by name) enter the design after the intercept and
// the lagged-growth column, in order.
struct AssembleSpec {
  std::vector<std::string> predictor_names;
};

// Aligns the log-GDP series with transformed predictor series into a
// RegressionDataset for horizon h. Column order: intercept, lag_growth, then
// the requested predictors. Rows cover the maximal common support; the
// trailing origins whose target is not yet observed become forecast-only
// rows.
RegressionDataset assemble_dataset(const QuarterlySeries& log_gdp,
                                   const std::vector<QuarterlySeries>& predictors,
                                   int h, const AssembleSpec& spec);

}  // namespace gar

#endif  // GAR_PREPROCESS_HPP
