#include "gar/model.hpp"

#include <algorithm>
#include <cmath>

#include "gar/stats.hpp"

namespace gar {

TvpSvModelSpec TvpSvModelSpec::from_config(const Config& cfg, int horizon,
                                           int num_regressors) {
  TvpSvModelSpec spec;
  spec.horizon = horizon;
  spec.num_regressors = num_regressors;

  spec.sv.mu_prior_mean = cfg.get_double("sv_prior", "mu_mean", 0.0);
  spec.sv.mu_prior_var = cfg.get_double("sv_prior", "mu_var", 100.0);
  spec.sv.rho_beta_a = cfg.get_double("sv_prior", "rho_beta_a", 5.0);
  spec.sv.rho_beta_b = cfg.get_double("sv_prior", "rho_beta_b", 1.5);
  spec.sv.theta2_gamma_shape = cfg.get_double("sv_prior", "theta2_shape", 0.5);
  spec.sv.theta2_gamma_rate = cfg.get_double("sv_prior", "theta2_rate", 0.5);

  auto& sh = spec.shrinkage;
  sh.learn_a = cfg.get_bool("shrinkage", "learn_a", true);
  sh.learn_c = cfg.get_bool("shrinkage", "learn_c", true);
  sh.learn_kappa = cfg.get_bool("shrinkage", "learn_kappa", true);
  sh.update_scales = cfg.get_bool("shrinkage", "update_scales", true);
  sh.a_v = cfg.get_double("shrinkage", "a_v", sh.a_v);
  sh.c_v = cfg.get_double("shrinkage", "c_v", sh.c_v);
  sh.kappa_v = cfg.get_double("shrinkage", "kappa_v", sh.kappa_v);
  sh.a_beta = cfg.get_double("shrinkage", "a_beta", sh.a_beta);
  sh.c_beta = cfg.get_double("shrinkage", "c_beta", sh.c_beta);
  sh.kappa_beta = cfg.get_double("shrinkage", "kappa_beta", sh.kappa_beta);
  sh.hyper_alpha = cfg.get_double("shrinkage", "hyper_alpha", sh.hyper_alpha);
  sh.hyper_beta = cfg.get_double("shrinkage", "hyper_beta", sh.hyper_beta);
  sh.mh_step_a = cfg.get_double("shrinkage", "mh_step_a", sh.mh_step_a);
  sh.mh_step_c = cfg.get_double("shrinkage", "mh_step_c", sh.mh_step_c);
  sh.tau2_init = cfg.get_double("shrinkage", "tau2_init", sh.tau2_init);
  sh.lambda_init = cfg.get_double("shrinkage", "lambda_init", sh.lambda_init);

  spec.validate();
  return spec;
}

void ModelParameters::validate() const {
  const Eigen::Index k = num_regressors();
  const Eigen::Index t = num_obs();
  if (beta0.size() != k || sqrt_v.size() != k || tau2_v.size() != k ||
      lambda_v.size() != k || tau2_beta.size() != k || lambda_beta.size() != k)
    throw ShapeError("ModelParameters: inconsistent K across blocks");
  if (log_vol.size() != t + 1)
    throw ShapeError("ModelParameters: log_vol length must be T+1");
  if (!(std::abs(rho_sigma) < 1.0))
    throw ParameterError("ModelParameters: |rho_sigma| must be < 1");
  if (!(theta2 > 0.0)) throw ParameterError("ModelParameters: theta2 must be > 0");
  if ((tau2_v.array() <= 0.0).any() || (lambda_v.array() <= 0.0).any() ||
      (tau2_beta.array() <= 0.0).any() || (lambda_beta.array() <= 0.0).any())
    throw ParameterError("ModelParameters: tau2 and lambda entries must be > 0");
  if (states_tilde.row(0).cwiseAbs().maxCoeff() != 0.0)
    throw ParameterError("ModelParameters: states_tilde row 0 must be the zero anchor");
  if (!states_tilde.allFinite() || !log_vol.allFinite() || !beta0.allFinite() ||
      !sqrt_v.allFinite())
    throw NumericError("ModelParameters: non-finite entries");
}

Eigen::MatrixXd centered_states(const ModelParameters& params) {
  return (params.states_tilde.array().rowwise() *
          params.sqrt_v.transpose().array())
             .matrix()
             .rowwise() +
         params.beta0.transpose();
}

Eigen::MatrixXd normalized_states(const Eigen::MatrixXd& centered,
                                  const Eigen::VectorXd& beta0,
                                  const Eigen::VectorXd& sqrt_v) {
  if ((sqrt_v.array() == 0.0).any())
    throw DomainError("normalized_states: sqrt_v entries must be nonzero");
  return ((centered.rowwise() - beta0.transpose()).array().rowwise() /
          sqrt_v.transpose().array())
      .matrix();
}

double log_likelihood(const ModelParameters& params, const RegressionDataset& data) {
  const Eigen::Index t_obs = params.num_obs();
  const Eigen::Index k = params.num_regressors();
  if (data.cols() != k)
    throw ShapeError("log_likelihood: dataset has K=" + std::to_string(data.cols()) +
                     ", parameters have K=" + std::to_string(k));
  if (data.target_rows() < t_obs)
    throw ShapeError("log_likelihood: dataset has fewer target rows than states");
  const Eigen::MatrixXd beta = centered_states(params);
  double ll = 0.0;
  for (Eigen::Index t = 0; t < t_obs; ++t) {
    const double mean = beta.row(t + 1).dot(data.x().row(t));
    const double sigma2 = std::exp(params.log_vol[t + 1]);
    ll += normal_log_pdf(data.targets()[t], mean, sigma2);
  }
  return ll;
}

namespace {

// One shrinkage block of the prior hierarchy: draws (a, c, kappa, aux,
// lambda_j, tau2_j, coef_j) top-down.
void draw_prior_block(const TripleGammaConfig& cfg, bool is_v_block, Eigen::Index k,
                      Rng& rng, double& a, double& c, double& kappa, double& aux,
                      Eigen::VectorXd& lambda, Eigen::VectorXd& tau2,
                      Eigen::VectorXd& coef) {
  a = is_v_block ? cfg.a_v : cfg.a_beta;
  c = is_v_block ? cfg.c_v : cfg.c_beta;
  kappa = is_v_block ? cfg.kappa_v : cfg.kappa_beta;
  if (cfg.learn_a) a = 0.5 * rng.beta(cfg.hyper_alpha, cfg.hyper_beta);
  if (cfg.learn_c) c = 0.5 * rng.beta(cfg.hyper_alpha, cfg.hyper_beta);
  aux = 1.0;
  if (cfg.learn_kappa) {
    aux = std::max(rng.gamma(c, c), kUnderflowGuard);
    kappa = std::max(rng.gamma(a, 0.5 * a * aux), kUnderflowGuard);
  }
  lambda.resize(k);
  tau2.resize(k);
  coef.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    lambda[j] = std::max(rng.gamma(c, c / kappa), kUnderflowGuard);
    tau2[j] = std::max(rng.gamma(a, 0.5 * a * lambda[j]), kUnderflowGuard);
    coef[j] = rng.normal(0.0, std::sqrt(tau2[j]));
  }
}

}  // namespace

ModelParameters draw_prior_parameters(const TvpSvModelSpec& spec, Eigen::Index num_obs,
                                      Rng& rng) {
  spec.validate();
  const Eigen::Index k = spec.num_regressors;
  ModelParameters p;

  draw_prior_block(spec.shrinkage, true, k, rng, p.a_v, p.c_v, p.kappa_v,
                   p.kappa_aux_v, p.lambda_v, p.tau2_v, p.sqrt_v);
  draw_prior_block(spec.shrinkage, false, k, rng, p.a_beta, p.c_beta, p.kappa_beta,
                   p.kappa_aux_beta, p.lambda_beta, p.tau2_beta, p.beta0);

  p.states_tilde = Eigen::MatrixXd::Zero(num_obs + 1, k);
  for (Eigen::Index t = 1; t <= num_obs; ++t)
    for (Eigen::Index j = 0; j < k; ++j)
      p.states_tilde(t, j) = p.states_tilde(t - 1, j) + rng.normal();

  const auto& sv = spec.sv;
  p.mu_sigma = rng.normal(sv.mu_prior_mean, std::sqrt(sv.mu_prior_var));
  p.rho_sigma = std::clamp(2.0 * rng.beta(sv.rho_beta_a, sv.rho_beta_b) - 1.0,
                           -(1.0 - 1e-10), 1.0 - 1e-10);
  p.theta2 = std::max(rng.gamma(sv.theta2_gamma_shape, sv.theta2_gamma_rate),
                      kVarianceFloor);
  p.log_vol.resize(num_obs + 1);
  p.log_vol[0] = rng.normal(
      p.mu_sigma, std::sqrt(p.theta2 / (1.0 - p.rho_sigma * p.rho_sigma)));
  for (Eigen::Index t = 1; t <= num_obs; ++t)
    p.log_vol[t] = p.mu_sigma + p.rho_sigma * (p.log_vol[t - 1] - p.mu_sigma) +
                   rng.normal(0.0, std::sqrt(p.theta2));
  p.validate();
  return p;
}

Eigen::VectorXd simulate_observations(const ModelParameters& params,
                                      const Eigen::MatrixXd& x, Rng& rng) {
  const Eigen::Index t_obs = params.num_obs();
  if (x.rows() != t_obs || x.cols() != params.num_regressors())
    throw ShapeError("simulate_observations: design shape mismatch");
  const Eigen::MatrixXd beta = centered_states(params);
  Eigen::VectorXd y(t_obs);
  for (Eigen::Index t = 0; t < t_obs; ++t) {
    const double mean = beta.row(t + 1).dot(x.row(t));
    y[t] = rng.normal(mean, std::exp(0.5 * params.log_vol[t + 1]));
  }
  return y;
}

}  // namespace gar
