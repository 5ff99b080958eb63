#ifndef GAR_QUANTREG_HPP
#define GAR_QUANTREG_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gar/dataset.hpp"
#include "gar/forecast.hpp"

namespace gar {

struct QuantileFit {
  double tau = 0.5;
  Eigen::VectorXd coefficients;
  double objective = 0.0;  // attained pinball-loss sum
  std::vector<std::string> column_names;
};

// Pinball loss rho_tau(u) = u (tau - 1{u < 0}).
inline double pinball_loss(double u, double tau) {
  return u * (tau - (u < 0.0 ? 1.0 : 0.0));
}

struct QuantRegOptions {
  double smoothing_floor = 1e-8;  // terminal smoothing parameter
  int max_iterations = 200;
};

// Linear quantile regression by iteratively reweighted least squares with a
// smoothing parameter driven down to `smoothing_floor`. Throws on
// rank-deficient designs, naming the collinear columns.
QuantileFit fit_quantile_regression(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                    double tau,
                                    const std::vector<std::string>& column_names = {},
                                    const QuantRegOptions& options = {});

QuantileFit fit_quantile_regression(const RegressionDataset& data, double tau,
                                    const QuantRegOptions& options = {});

// Exact solution on tiny instances (n <= 50): the optimum sits at a vertex of
// the LP, i.e. interpolates K observations, so enumerating all K-subsets and
// scoring the interpolants finds it. Independent of the IRLS path; used as a
// verification oracle.
QuantileFit fit_quantile_regression_enumerate(const Eigen::MatrixXd& x,
                                              const Eigen::VectorXd& y, double tau);

double predict_quantile(const QuantileFit& fit, const Eigen::VectorXd& x);

// Expanding-window baseline: for each origin from start_origin on, fit one
// quantile regression per probability on the rows whose targets are observed
// by the origin date and predict at the origin's regressors. Mirrors the
// windows of the TVP recursive forecast.
QuantilePath recursive_qr_forecast(const RegressionDataset& data,
                                   const std::vector<double>& probs,
                                   YearQuarter start_origin, int min_train,
                                   const QuantRegOptions& options = {});

void save_quantile_fits_csv(const std::vector<QuantileFit>& fits,
                            const std::string& file);

}  // namespace gar

#endif  // GAR_QUANTREG_HPP
