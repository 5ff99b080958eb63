#ifndef GAR_POSTERIOR_HPP
#define GAR_POSTERIOR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gar/model.hpp"

namespace gar {

struct SamplerConfig {
  int n_draws = 30000;
  int burn_in = 30000;
  int thin = 10;
  std::uint64_t seed = 1;
  double mh_target_acceptance = 0.35;
  bool enable_asis = true;
  // Drops every likelihood contribution so the sweep targets the joint prior.
  bool prior_only = false;

  void validate() const {
    if (n_draws <= 0) throw ParameterError("SamplerConfig: n_draws must be > 0");
    if (burn_in < 0) throw ParameterError("SamplerConfig: burn_in must be >= 0");
    if (thin < 1) throw ParameterError("SamplerConfig: thin must be >= 1");
    if (!(mh_target_acceptance > 0.0 && mh_target_acceptance < 1.0))
      throw ParameterError("SamplerConfig: mh_target_acceptance must be in (0,1)");
  }

  int retained() const { return n_draws / thin; }

  static SamplerConfig from_config(const Config& cfg) {
    SamplerConfig sc;
    sc.n_draws = cfg.get_int("sampler", "n_draws", sc.n_draws);
    sc.burn_in = cfg.get_int("sampler", "burn_in", sc.burn_in);
    sc.thin = cfg.get_int("sampler", "thin", sc.thin);
    sc.seed = cfg.get_uint64("sampler", "seed", sc.seed);
    sc.mh_target_acceptance =
        cfg.get_double("sampler", "mh_target_acceptance", sc.mh_target_acceptance);
    sc.enable_asis = cfg.get_bool("sampler", "enable_asis", sc.enable_asis);
    sc.validate();
    return sc;
  }
};

// Retained MCMC draws of every parameter block, stacked draw-major.
// states_tilde rows are flattened (T+1) x K paths in t-major order.
class PosteriorDraws {
 public:
  PosteriorDraws() = default;
  PosteriorDraws(const TvpSvModelSpec& spec, Eigen::Index num_obs,
                 const SamplerConfig& cfg, std::vector<std::string> column_names);

  void record(const ModelParameters& p);

  Eigen::Index size() const { return filled_; }
  Eigen::Index num_obs() const { return t_; }
  Eigen::Index num_regressors() const { return k_; }
  int horizon() const { return horizon_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const SamplerConfig& config() const { return config_; }

  ModelParameters draw(Eigen::Index i) const;

  const Eigen::MatrixXd& beta0() const { return beta0_; }
  const Eigen::MatrixXd& sqrt_v() const { return sqrt_v_; }
  const Eigen::MatrixXd& states_tilde() const { return states_tilde_; }
  const Eigen::MatrixXd& log_vol() const { return log_vol_; }
  const Eigen::MatrixXd& sv_params() const { return sv_params_; }
  const Eigen::MatrixXd& tau2_v() const { return tau2_v_; }
  const Eigen::MatrixXd& lambda_v() const { return lambda_v_; }
  const Eigen::MatrixXd& tau2_beta() const { return tau2_beta_; }
  const Eigen::MatrixXd& lambda_beta() const { return lambda_beta_; }
  const Eigen::MatrixXd& hyper() const { return hyper_; }

  std::map<std::string, double> acceptance_rates;

  // Persists as one CSV per parameter block plus a JSON manifest.
  void save(const std::string& dir) const;
  static PosteriorDraws load(const std::string& dir);

 private:
  int horizon_ = 1;
  Eigen::Index t_ = 0, k_ = 0, filled_ = 0;
  SamplerConfig config_;
  std::vector<std::string> column_names_;
  Eigen::MatrixXd beta0_, sqrt_v_, states_tilde_, log_vol_, sv_params_;
  Eigen::MatrixXd tau2_v_, lambda_v_, tau2_beta_, lambda_beta_, hyper_;
};

}  // namespace gar

#endif  // GAR_POSTERIOR_HPP
