#ifndef GAR_EVALUATION_HPP
#define GAR_EVALUATION_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gar/config.hpp"
#include "gar/forecast.hpp"

namespace gar {

// Pinball (quantile) score (y - q)(tau - 1{y < q}); nonnegative, zero iff
// the forecast equals the realization.
inline double quantile_score(double q, double y, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw ParameterError("quantile_score: tau must be in (0,1)");
  return (y - q) * (tau - (y < q ? 1.0 : 0.0));
}

struct ScoreSeries {
  std::string model;
  int horizon = 1;
  double tau = 0.05;
  std::vector<YearQuarter> origins;
  Eigen::VectorXd scores;
};

// Scores one extracted quantile column of a path against the realized
// targets; origins without a realization are dropped.
ScoreSeries score_quantile_path(const QuantilePath& path, double prob,
                                const std::string& model_id);

// Named period with optional exclusions (e.g. wartime windows).
struct PeriodMask {
  std::string name;
  QuarterRange range;
  std::vector<QuarterRange> exclusions;

  bool contains(const YearQuarter& q) const {
    if (!range.contains(q)) return false;
    for (const auto& e : exclusions)
      if (e.contains(q)) return false;
    return true;
  }
};

// Sub-period boundaries; every cut is configuration with the conventional
// defaults below.
struct PeriodSet {
  YearQuarter ww1_start{1914, 3}, ww1_end{1918, 4};
  YearQuarter ww2_start{1939, 3}, ww2_end{1945, 3};
  YearQuarter gm_start{1984, 1};
  int exclusion_years = 2;

  static PeriodSet from_config(const Config& cfg);

  QuarterRange ww1_excluded() const {
    return {ww1_start, ww1_end + 4 * exclusion_years};
  }
  QuarterRange ww2_excluded() const {
    return {ww2_start, ww2_end + 4 * exclusion_years};
  }

  PeriodMask pre_ww2() const;
  PeriodMask post_ww2() const;
  PeriodMask full() const;
  // pre-WW1, interwar, pre-GM, since-GM with the wartime exclusions applied.
  std::vector<PeriodMask> dispersion_periods() const;
};

// mean(model scores over mask) / mean(baseline scores over mask).
double relative_mean_score(const ScoreSeries& model, const ScoreSeries& baseline,
                           const PeriodMask& mask);

struct RecursiveMeanPath {
  std::vector<YearQuarter> origins;
  Eigen::VectorXd ratio;  // cumulative-mean ratio through each origin
};

RecursiveMeanPath recursive_mean_path(const ScoreSeries& model,
                                      const ScoreSeries& baseline);

struct DispersionEntry {
  std::string period;
  double prob = 0.0;
  double sd = 0.0;
  int n = 0;
  bool ok = false;  // false when the period holds fewer than 2 observations
};

// Sample standard deviation of each quantile bound over each period.
std::vector<DispersionEntry> tail_dispersion(const QuantilePath& path,
                                             const std::vector<PeriodMask>& periods);

struct EvaluationCell {
  std::string model;
  std::string period;
  int horizon = 1;
  double tau = 0.05;
  double mean_score = 0.0;
  double relative = 1.0;  // vs the baseline model over the same period
  int n = 0;
};

void save_evaluation_cells_csv(const std::vector<EvaluationCell>& cells,
                               const std::string& file);
void save_dispersion_csv(const std::vector<DispersionEntry>& entries, int horizon,
                         const std::string& file);
void save_score_series_csv(const std::vector<ScoreSeries>& series,
                           const std::string& file);
void save_recursive_mean_path_csv(const RecursiveMeanPath& path, int horizon,
                                  double tau, const std::string& model,
                                  const std::string& file);

// Aligned text table of relative scores: one row per horizon, model columns
// grouped by period.
std::string format_relative_table(const std::vector<EvaluationCell>& cells,
                                  const std::string& baseline_id, double tau);

}  // namespace gar

#endif  // GAR_EVALUATION_HPP
