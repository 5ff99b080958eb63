#include "gar/synthetic.hpp"

#include <cmath>

#include "gar/rng.hpp"

namespace gar {

void DgpSpec::validate() const {
  if (num_obs < 2) throw ParameterError("DgpSpec: need at least 2 observations");
  if (num_regressors < 1) throw ParameterError("DgpSpec: need at least 1 regressor");
  if (horizon < 1) throw ParameterError("DgpSpec: horizon must be >= 1");
  if (state_scale < 0.0) throw ParameterError("DgpSpec: state_scale must be >= 0");
  if (!(sigma > 0.0)) throw ParameterError("DgpSpec: sigma must be > 0");
  if (!(std::abs(sv_rho) < 1.0)) throw ParameterError("DgpSpec: |sv_rho| must be < 1");
  if (!(sv_theta > 0.0)) throw ParameterError("DgpSpec: sv_theta must be > 0");
  if (!(sigma_after_break > 0.0))
    throw ParameterError("DgpSpec: sigma_after_break must be > 0");
  if (!(std::abs(ar1_coef) < 1.0)) throw ParameterError("DgpSpec: |ar1_coef| must be < 1");
}

DgpSpec DgpSpec::from_config(const Config& cfg) {
  DgpSpec s;
  s.num_obs = cfg.get_int("dgp", "num_obs", static_cast<int>(s.num_obs));
  s.num_regressors = cfg.get_int("dgp", "num_regressors", s.num_regressors);
  s.horizon = cfg.get_int("dgp", "horizon", s.horizon);

  const std::string path = cfg.get_string("dgp", "beta_path", "constant");
  if (path == "constant")
    s.beta_path = BetaPathType::kConstant;
  else if (path == "random_walk")
    s.beta_path = BetaPathType::kRandomWalk;
  else if (path == "single_break")
    s.beta_path = BetaPathType::kSingleBreak;
  else
    throw ConfigError("dgp.beta_path: unknown value '" + path + "'");

  const auto to_vector = [](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                             static_cast<Eigen::Index>(v.size()));
  };
  const std::vector<double> b0 = cfg.get_double_list("dgp", "beta_start", {});
  if (!b0.empty()) s.beta_start = to_vector(b0);
  s.state_scale = cfg.get_double("dgp", "state_scale", s.state_scale);
  s.break_time = cfg.get_int("dgp", "break_time", 0);
  const std::vector<double> bb = cfg.get_double_list("dgp", "beta_after_break", {});
  if (!bb.empty()) s.beta_after_break = to_vector(bb);

  const std::string vol = cfg.get_string("dgp", "vol", "constant");
  if (vol == "constant")
    s.vol = VolType::kConstant;
  else if (vol == "sv")
    s.vol = VolType::kSv;
  else if (vol == "variance_break")
    s.vol = VolType::kVarianceBreak;
  else
    throw ConfigError("dgp.vol: unknown value '" + vol + "'");
  s.sigma = cfg.get_double("dgp", "sigma", s.sigma);
  s.sv_mu = cfg.get_double("dgp", "sv_mu", s.sv_mu);
  s.sv_rho = cfg.get_double("dgp", "sv_rho", s.sv_rho);
  s.sv_theta = cfg.get_double("dgp", "sv_theta", s.sv_theta);
  s.sigma_after_break = cfg.get_double("dgp", "sigma_after_break", s.sigma_after_break);

  const std::string law = cfg.get_string("dgp", "regressor_law", "iid");
  if (law == "iid")
    s.regressor_law = RegressorLaw::kIidGaussian;
  else if (law == "ar1")
    s.regressor_law = RegressorLaw::kAr1;
  else
    throw ConfigError("dgp.regressor_law: unknown value '" + law + "'");
  s.ar1_coef = cfg.get_double("dgp", "ar1_coef", s.ar1_coef);

  s.seed = cfg.get_uint64("dgp", "seed", s.seed);
  s.start = cfg.get_quarter("dgp", "start", s.start);
  s.validate();
  return s;
}

DgpOutput simulate_dgp(const DgpSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Eigen::Index t_obs = spec.num_obs;
  const Eigen::Index k = spec.num_regressors;

  Eigen::VectorXd beta_start = spec.beta_start;
  if (beta_start.size() == 0) {
    beta_start.resize(k);
    for (Eigen::Index j = 0; j < k; ++j)
      beta_start[j] = (j == 0) ? 1.0 : ((j % 2) ? 0.5 : -0.5);
  }
  if (beta_start.size() != k) throw ShapeError("DgpSpec: beta_start has wrong length");

  // Regressors: intercept plus stochastic columns.
  Eigen::MatrixXd x(t_obs, k);
  for (Eigen::Index t = 0; t < t_obs; ++t) {
    x(t, 0) = 1.0;
    for (Eigen::Index j = 1; j < k; ++j) {
      if (spec.regressor_law == RegressorLaw::kIidGaussian || t == 0)
        x(t, j) = rng.normal();
      else
        x(t, j) = spec.ar1_coef * x(t - 1, j) +
                  std::sqrt(1.0 - spec.ar1_coef * spec.ar1_coef) * rng.normal();
    }
  }

  const Eigen::Index break_at = spec.break_time > 0 ? spec.break_time : t_obs / 2;

  // Coefficient paths, centered; row t pairs with design row t-1.
  Eigen::MatrixXd beta(t_obs + 1, k);
  beta.row(0) = beta_start.transpose();
  for (Eigen::Index t = 1; t <= t_obs; ++t) {
    switch (spec.beta_path) {
      case BetaPathType::kConstant:
        beta.row(t) = beta.row(t - 1);
        break;
      case BetaPathType::kRandomWalk:
        for (Eigen::Index j = 0; j < k; ++j)
          beta(t, j) = beta(t - 1, j) + spec.state_scale * rng.normal();
        break;
      case BetaPathType::kSingleBreak: {
        Eigen::VectorXd after = spec.beta_after_break;
        if (after.size() == 0) after = 2.0 * beta_start;
        if (after.size() != k)
          throw ShapeError("DgpSpec: beta_after_break has wrong length");
        beta.row(t) = (t > break_at ? after : beta_start).transpose();
        break;
      }
    }
  }

  // Log-variance path.
  Eigen::VectorXd log_vol(t_obs + 1);
  switch (spec.vol) {
    case VolType::kConstant:
      log_vol.setConstant(2.0 * std::log(spec.sigma));
      break;
    case VolType::kSv: {
      log_vol[0] = rng.normal(
          spec.sv_mu,
          spec.sv_theta / std::sqrt(1.0 - spec.sv_rho * spec.sv_rho));
      for (Eigen::Index t = 1; t <= t_obs; ++t)
        log_vol[t] = spec.sv_mu + spec.sv_rho * (log_vol[t - 1] - spec.sv_mu) +
                     spec.sv_theta * rng.normal();
      break;
    }
    case VolType::kVarianceBreak:
      for (Eigen::Index t = 0; t <= t_obs; ++t)
        log_vol[t] = 2.0 * std::log(t > break_at ? spec.sigma_after_break : spec.sigma);
      break;
  }

  Eigen::VectorXd y(t_obs);
  for (Eigen::Index t = 1; t <= t_obs; ++t)
    y[t - 1] = beta.row(t).dot(x.row(t - 1)) +
               std::exp(0.5 * log_vol[t]) * rng.normal();

  std::vector<YearQuarter> origins;
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < t_obs; ++i) origins.push_back(spec.start + static_cast<int>(i));
  names.emplace_back("intercept");
  for (Eigen::Index j = 1; j < k; ++j) names.push_back("x" + std::to_string(j));

  DgpOutput out{RegressionDataset(spec.horizon, std::move(origins), x, y,
                                  std::move(names)),
                ModelParameters{}};

  // Ground truth in the parameter container.
  ModelParameters& tr = out.truth;
  tr.beta0 = beta.row(0).transpose();
  const double scale =
      spec.beta_path == BetaPathType::kRandomWalk ? spec.state_scale : 0.0;
  tr.sqrt_v = Eigen::VectorXd::Constant(k, scale);
  tr.states_tilde = Eigen::MatrixXd::Zero(t_obs + 1, k);
  if (scale > 0.0)
    tr.states_tilde = (beta.rowwise() - beta.row(0)) / scale;
  tr.states_tilde.row(0).setZero();
  tr.log_vol = log_vol;
  tr.mu_sigma = spec.vol == VolType::kSv ? spec.sv_mu : 2.0 * std::log(spec.sigma);
  tr.rho_sigma = spec.vol == VolType::kSv ? spec.sv_rho : 0.0;
  tr.theta2 = spec.vol == VolType::kSv ? spec.sv_theta * spec.sv_theta : kVarianceFloor;
  tr.tau2_v = tr.lambda_v = tr.tau2_beta = tr.lambda_beta =
      Eigen::VectorXd::Ones(k);
  return out;
}

}  // namespace gar
