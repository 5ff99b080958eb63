#ifndef GAR_SAMPLER_HPP
#define GAR_SAMPLER_HPP

#include <Eigen/Dense>
#include <functional>

#include "gar/posterior.hpp"

namespace gar {

// Gibbs sampler for the TVP-SV regression. One sweep cycles through
//   1. joint draw of the normalized state paths,
//   2. joint Gaussian draw of (beta0, sqrt_v),
//   3. interweaving redraw of beta0 and the state variances in the centered
//      parameterization,
//   4. shrinkage hierarchy (local scales, global hyperparameters),
//   5. stochastic-volatility block (mixture indicators, log-variance path,
//      AR parameters, boosting redraw of mu/theta).
// Random-walk MH steps adapt toward the target acceptance rate during
// burn-in only and stay frozen afterwards.
class TvpSvSampler {
 public:
  TvpSvSampler(const TvpSvModelSpec& spec, const Eigen::MatrixXd& x,
               const Eigen::VectorXd& y, const SamplerConfig& cfg);

  // Full conditional draws; exposed individually for verification.
  Eigen::MatrixXd draw_states();
  void draw_beta0_and_scales();
  void asis_interweave();
  void draw_shrinkage_hierarchy();
  void draw_stochastic_volatility();

  void sweep();
  // Replaces y with a fresh draw from the observation equation given the
  // current parameters (successive-conditional simulator support).
  void redraw_data();

  PosteriorDraws run(const std::vector<std::string>& column_names = {});

  const ModelParameters& params() const { return params_; }
  ModelParameters& mutable_params() { return params_; }
  void set_params(const ModelParameters& p);
  const Eigen::VectorXd& data_y() const { return y_; }

  void set_adaptation(bool on) { adapting_ = on; }
  std::map<std::string, double> acceptance_rates() const;
  int jitter_fallbacks() const { return jitter_fallbacks_; }
  Rng& rng() { return rng_; }

 private:
  struct MhState {
    double step = 1.0;
    long proposals = 0;
    long accepts = 0;
    long adapt_count = 0;
  };

  void update_shrinkage_block(bool v_block);
  double mh_update(double current_transformed, MhState& mh,
                   const std::function<double(double)>& log_target);
  Eigen::VectorXd residuals() const;
  void check_finite() const;

  TvpSvModelSpec spec_;
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  SamplerConfig cfg_;
  Rng rng_;
  ModelParameters params_;
  bool adapting_ = false;
  int jitter_fallbacks_ = 0;

  MhState mh_a_v_, mh_c_v_, mh_a_beta_, mh_c_beta_, mh_rho_;
};

// Convenience entry point: estimates on the target rows of `data`.
PosteriorDraws run_chain(const TvpSvModelSpec& spec, const RegressionDataset& data,
                         const SamplerConfig& cfg);

// Initial parameter values used when a chain starts from the data rather
// than from a prior draw.
ModelParameters default_initial_params(const TvpSvModelSpec& spec,
                                       const Eigen::VectorXd& y, Eigen::Index num_obs);

}  // namespace gar

#endif  // GAR_SAMPLER_HPP
