#ifndef GAR_SYNTHETIC_HPP
#define GAR_SYNTHETIC_HPP

#include <Eigen/Dense>

#include "gar/config.hpp"
#include "gar/dataset.hpp"
#include "gar/model.hpp"

namespace gar {

enum class BetaPathType { kConstant, kRandomWalk, kSingleBreak };
enum class VolType { kConstant, kSv, kVarianceBreak };
enum class RegressorLaw { kIidGaussian, kAr1 };

// Data-generating process matching the model equations; every verification
// suite draws its fixtures from here.
struct DgpSpec {
  Eigen::Index num_obs = 200;
  int num_regressors = 3;  // including the intercept column
  int horizon = 1;

  BetaPathType beta_path = BetaPathType::kConstant;
  Eigen::VectorXd beta_start;       // defaults to (1, 0.5, -0.5, ...) pattern
  double state_scale = 0.1;         // random-walk innovation sd
  Eigen::Index break_time = 0;      // 0 = midpoint
  Eigen::VectorXd beta_after_break;

  VolType vol = VolType::kConstant;
  double sigma = 1.0;
  double sv_mu = 0.0, sv_rho = 0.95, sv_theta = 0.2;
  double sigma_after_break = 0.5;

  RegressorLaw regressor_law = RegressorLaw::kIidGaussian;
  double ar1_coef = 0.8;

  std::uint64_t seed = 1;
  YearQuarter start{1900, 1};

  void validate() const;
  static DgpSpec from_config(const Config& cfg);
};

struct DgpOutput {
  RegressionDataset data;
  // Ground truth packed into the model's parameter container: centered truth
  // lives in beta0/sqrt_v/states_tilde, the variance path in log_vol.
  ModelParameters truth;
};

DgpOutput simulate_dgp(const DgpSpec& spec);

}  // namespace gar

#endif  // GAR_SYNTHETIC_HPP
