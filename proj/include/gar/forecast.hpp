#ifndef GAR_FORECAST_HPP
#define GAR_FORECAST_HPP

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "gar/posterior.hpp"
#include "gar/sampler.hpp"

namespace gar {

// Simulated h-step-ahead growth draws at one origin, one value per retained
// posterior draw, together with the conditional mean and variance of the
// Gaussian each value was drawn from.
struct PredictiveDensity {
  YearQuarter origin;
  int horizon = 1;
  Eigen::VectorXd draws;
  Eigen::VectorXd cond_mean;
  Eigen::VectorXd cond_var;
};

// Per-origin extracted quantiles plus the realized target where available
// (NaN otherwise).
struct QuantilePath {
  int horizon = 1;
  std::vector<double> probs;
  std::vector<YearQuarter> origins;
  Eigen::MatrixXd quantiles;  // origins x probs
  Eigen::VectorXd realized;

  bool has_realized(Eigen::Index i) const { return std::isfinite(realized[i]); }
};

// Propagates each retained draw h steps ahead (random-walk states, AR(1)
// log variance) and simulates one observation per draw.
PredictiveDensity simulate_predictive(const PosteriorDraws& draws,
                                      const Eigen::VectorXd& x_origin, int h, Rng& rng,
                                      YearQuarter origin = YearQuarter(1900, 1));

// Empirical quantiles by linear interpolation of order statistics at
// position (n-1)p + 1. Requires at least 100 draws.
std::vector<double> extract_quantiles(const PredictiveDensity& pd,
                                      const std::vector<double>& probs);

struct RecursiveForecastConfig {
  YearQuarter start_origin;
  std::vector<double> probs{0.05, 0.95};
  int min_train = 80;
  std::uint64_t master_seed = 1;
  int threads = 1;
  bool keep_draws = false;
};

struct RecursiveForecastResult {
  QuantilePath path;
  // Predictive draws per origin when keep_draws is set.
  std::vector<Eigen::VectorXd> predictive_draws;
};

// Expanding-window exercise: for each origin from start_origin on, re-estimate
// on the rows whose targets are observed by the origin date and simulate the
// h-step predictive. Deterministic given the master seed; origins run in
// parallel with independent derived seeds.
RecursiveForecastResult recursive_forecast(const RegressionDataset& data,
                                           const TvpSvModelSpec& spec,
                                           const SamplerConfig& sampler_cfg,
                                           const RecursiveForecastConfig& cfg);

void save_quantile_path_csv(const QuantilePath& path, const std::string& file);
QuantilePath load_quantile_path_csv(const std::string& file);

}  // namespace gar

#endif  // GAR_FORECAST_HPP
