#ifndef GAR_MODEL_HPP
#define GAR_MODEL_HPP

#include <Eigen/Dense>

#include "gar/config.hpp"
#include "gar/dataset.hpp"
#include "gar/errors.hpp"
#include "gar/rng.hpp"

namespace gar {

// Floor applied to drawn state variances and the volatility innovation
// variance; keeps the state renormalization away from division blowups.
inline constexpr double kVarianceFloor = 1e-12;

// Shrinkage scales (tau2, lambda, kappa) are heavy tailed in both directions
// by construction and must not be floored at a statistically visible level;
// this guard only prevents exact underflow to zero.
inline constexpr double kUnderflowGuard = 1e-290;

// Priors of the stochastic-volatility block: long-run mean mu, persistence
// rho with a Beta prior on (rho+1)/2, innovation variance theta2 with a
// Gamma(shape, rate) prior. The initial log variance is tied to the
// stationary law N(mu, theta2 / (1 - rho^2)).
struct SvPriorConfig {
  double mu_prior_mean = 0.0;
  double mu_prior_var = 100.0;
  double rho_beta_a = 5.0;
  double rho_beta_b = 1.5;
  double theta2_gamma_shape = 0.5;
  double theta2_gamma_rate = 0.5;

  void validate() const {
    if (!(mu_prior_var > 0.0) || !(rho_beta_a > 0.0) || !(rho_beta_b > 0.0) ||
        !(theta2_gamma_shape > 0.0) || !(theta2_gamma_rate > 0.0))
      throw ParameterError("SvPriorConfig: prior parameters must be positive");
  }
};

// Gamma-Gamma shrinkage hierarchy applied independently to the signed state
// scales (v-block) and to the time-invariant coefficients (beta-block):
//   coef_j | tau2_j     ~ N(0, tau2_j)
//   tau2_j | a, lam_j   ~ Gamma(a, rate = a * lam_j / 2)
//   lam_j  | c, kappa   ~ Gamma(c, rate = c / kappa)
// When learned, 2a and 2c carry Beta(hyper_alpha, hyper_beta) priors on
// (0, 1) and kappa/2 carries an F(2a, 2c) prior, represented through the
// auxiliary variable z ~ Gamma(c, c) with kappa | z ~ Gamma(a, a z / 2).
struct TripleGammaConfig {
  bool learn_a = true;
  bool learn_c = true;
  bool learn_kappa = true;
  // Master switch for the local scales: when false, tau2 and lambda stay
  // frozen at their initial values (used by conjugate-check configurations).
  bool update_scales = true;

  // Fixed values when the corresponding learn flag is off, initial values for
  // the MH chains otherwise.
  double a_v = 0.1, c_v = 0.1, kappa_v = 20.0;
  double a_beta = 0.1, c_beta = 0.1, kappa_beta = 20.0;

  double hyper_alpha = 5.0, hyper_beta = 10.0;  // Beta prior on 2a and 2c
  double mh_step_a = 1.0, mh_step_c = 1.0;      // initial random-walk sd, logit scale

  double tau2_init = 1.0;
  double lambda_init = 1.0;

  void validate() const {
    if (!(a_v > 0.0) || !(c_v > 0.0) || !(a_beta > 0.0) || !(c_beta > 0.0))
      throw ParameterError("TripleGammaConfig: a, c must be positive");
    if (!(kappa_v > 0.0) || !(kappa_beta > 0.0))
      throw ParameterError("TripleGammaConfig: kappa must be positive");
    if (!(mh_step_a > 0.0) || !(mh_step_c > 0.0))
      throw ParameterError("TripleGammaConfig: MH step sizes must be positive");
    if ((learn_a && a_v >= 0.5) || (learn_c && c_v >= 0.5) ||
        (learn_a && a_beta >= 0.5) || (learn_c && c_beta >= 0.5))
      throw ParameterError(
          "TripleGammaConfig: learned a, c start inside (0, 0.5)");
    if (!(hyper_alpha > 0.0) || !(hyper_beta > 0.0))
      throw ParameterError("TripleGammaConfig: hyperprior parameters must be positive");
  }
};

struct TvpSvModelSpec {
  int horizon = 1;
  int num_regressors = 1;  // K
  SvPriorConfig sv;
  TripleGammaConfig shrinkage;

  void validate() const {
    if (horizon < 1) throw ParameterError("TvpSvModelSpec: horizon must be >= 1");
    if (num_regressors < 1)
      throw ParameterError("TvpSvModelSpec: need at least one regressor");
    sv.validate();
    shrinkage.validate();
  }

  static TvpSvModelSpec from_config(const Config& cfg, int horizon, int num_regressors);
};

// One complete draw of all latent states and parameters.
//
// states_tilde has T+1 rows: row 0 is the anchor (identically zero) and row
// t >= 1 belongs to observation t. log_vol has T+1 entries with the same
// convention; entry 0 is the presample value drawn from the stationary law.
struct ModelParameters {
  Eigen::VectorXd beta0;         // K
  Eigen::VectorXd sqrt_v;        // K, signed square roots of the state variances
  Eigen::MatrixXd states_tilde;  // (T+1) x K
  Eigen::VectorXd log_vol;       // T+1

  double mu_sigma = 0.0;
  double rho_sigma = 0.9;
  double theta2 = 0.1;

  Eigen::VectorXd tau2_v, lambda_v;        // K
  Eigen::VectorXd tau2_beta, lambda_beta;  // K
  double a_v = 0.5, c_v = 0.5, kappa_v = 20.0;
  double a_beta = 0.5, c_beta = 0.5, kappa_beta = 20.0;
  // Auxiliary variables of the F-prior representation for kappa.
  double kappa_aux_v = 1.0, kappa_aux_beta = 1.0;

  Eigen::Index num_obs() const { return states_tilde.rows() - 1; }
  Eigen::Index num_regressors() const { return states_tilde.cols(); }

  void validate() const;
};

// Inverse of the state normalization: beta_t = beta0 + sqrt_v .* tilde_t,
// returned as a (T+1) x K matrix whose row 0 equals beta0.
Eigen::MatrixXd centered_states(const ModelParameters& params);

// Renormalizes a centered path: tilde_t = (beta_t - beta0) / sqrt_v (entrywise,
// requires nonzero sqrt_v).
Eigen::MatrixXd normalized_states(const Eigen::MatrixXd& centered,
                                  const Eigen::VectorXd& beta0,
                                  const Eigen::VectorXd& sqrt_v);

// Gaussian log likelihood of the observation equation: observation t has mean
// beta_t' x_t and variance exp(log_vol_t). Uses the first params.num_obs()
// target rows of the dataset.
double log_likelihood(const ModelParameters& params, const RegressionDataset& data);

// Draws one complete parameter set from the prior hierarchy. The variance
// floor is applied exactly as in the posterior sampler so that
// prior-vs-posterior simulator comparisons are exact.
ModelParameters draw_prior_parameters(const TvpSvModelSpec& spec, Eigen::Index num_obs,
                                      Rng& rng);

// Simulates targets from the observation equation given parameters and a
// design matrix (rows 1..T of the states pair with design rows 0..T-1).
Eigen::VectorXd simulate_observations(const ModelParameters& params,
                                      const Eigen::MatrixXd& x, Rng& rng);

}  // namespace gar

#endif  // GAR_MODEL_HPP
