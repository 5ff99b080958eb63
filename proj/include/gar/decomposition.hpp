#ifndef GAR_DECOMPOSITION_HPP
#define GAR_DECOMPOSITION_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "gar/dataset.hpp"
#include "gar/forecast.hpp"

namespace gar {

struct DecompositionOptions {
  int window = 40;  // quarters; ten years
  double significance_level = 0.05;
  // Classical OLS standard errors by default; Newey-West with `hac_lags`
  // otherwise (the regressand is serially dependent).
  bool hac = false;
  int hac_lags = 4;
};

// One rolling window: OLS of the predicted quantile on the regressors over
// the trailing `window` origins, with per-regressor contributions evaluated
// at the window-end regressor vector.
struct WindowSummary {
  YearQuarter window_end;
  Eigen::VectorXd coefficients;    // zero for dropped columns
  Eigen::VectorXd std_errors;      // NaN for dropped columns
  std::vector<bool> significant;
  Eigen::VectorXd contributions;   // coefficient_j * x_{end,j}
  double fitted = 0.0;             // = sum of contributions
  double model_quantile = 0.0;     // the path's value at the window end
  double r_squared = 0.0;
  bool rank_deficient = false;
  std::vector<std::string> dropped_columns;
};

struct DecompositionResult {
  int horizon = 1;
  double prob = 0.05;
  int window = 40;
  std::vector<std::string> column_names;
  std::vector<WindowSummary> windows;

  const WindowSummary* find(const YearQuarter& window_end) const;
};

DecompositionResult linear_posterior_summary(const QuantilePath& quantiles,
                                             const RegressionDataset& data, double prob,
                                             const DecompositionOptions& options = {});

struct LocalProjectionRow {
  YearQuarter date;
  int horizon = 1;
  std::string regressor;
  double coefficient = 0.0;
  double std_error = 0.0;
  bool significant = false;
};

// Coefficients as a function of horizon at fixed dates. Every requested
// (horizon, date) pair must exist in the inputs; missing pairs raise an
// error listing the gaps.
std::vector<LocalProjectionRow> local_projections(
    const std::map<int, DecompositionResult>& results,
    const std::vector<YearQuarter>& dates);

void save_decomposition_csv(const DecompositionResult& result, const std::string& file);
void save_local_projections_csv(const std::vector<LocalProjectionRow>& rows,
                                double prob, const std::string& file);

}  // namespace gar

#endif  // GAR_DECOMPOSITION_HPP
