#include <doctest.h>

#include <cmath>

#include "gar/model.hpp"
#include "gar/stats.hpp"
#include "gar/synthetic.hpp"

using namespace gar;

namespace {

ModelParameters small_params(Eigen::Index t_obs, Eigen::Index k, std::uint64_t seed) {
  TvpSvModelSpec spec;
  spec.num_regressors = static_cast<int>(k);
  Rng rng(seed);
  return draw_prior_parameters(spec, t_obs, rng);
}

}  // namespace

TEST_CASE("centered states: zero scales give constant coefficients") {
  ModelParameters p = small_params(6, 2, 1);
  p.sqrt_v.setZero();
  const Eigen::MatrixXd beta = centered_states(p);
  for (Eigen::Index t = 0; t <= 6; ++t)
    CHECK((beta.row(t).transpose() - p.beta0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("centered states: identity map when beta0 = 0, sqrt_v = 1") {
  ModelParameters p = small_params(5, 3, 2);
  p.beta0.setZero();
  p.sqrt_v.setOnes();
  const Eigen::MatrixXd beta = centered_states(p);
  CHECK((beta - p.states_tilde).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalization round trip") {
  ModelParameters p = small_params(20, 3, 3);
  for (Eigen::Index j = 0; j < 3; ++j)
    if (std::abs(p.sqrt_v[j]) < 1e-8) p.sqrt_v[j] = 0.3;
  const Eigen::MatrixXd beta = centered_states(p);
  const Eigen::MatrixXd tilde = normalized_states(beta, p.beta0, p.sqrt_v);
  CHECK((tilde - p.states_tilde).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("log likelihood: single observation and additivity") {
  TvpSvModelSpec spec;
  spec.num_regressors = 2;

  ModelParameters p;
  p.beta0 = Eigen::VectorXd::Zero(2);
  p.beta0 << 1.0, 2.0;
  p.sqrt_v = Eigen::VectorXd::Zero(2);
  p.states_tilde = Eigen::MatrixXd::Zero(2, 2);
  p.log_vol = Eigen::VectorXd::Zero(2);  // sigma^2 = 1
  p.tau2_v = p.lambda_v = p.tau2_beta = p.lambda_beta = Eigen::VectorXd::Ones(2);

  Eigen::MatrixXd x(1, 2);
  x << 1.0, 0.5;
  Eigen::VectorXd y(1);
  y << 2.0;  // equals beta' x
  RegressionDataset d1(1, {YearQuarter(1900, 1)}, x, y, {"intercept", "z"});
  CHECK(log_likelihood(p, d1) ==
        doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));

  // two iid observations sum
  ModelParameters p2 = p;
  p2.states_tilde = Eigen::MatrixXd::Zero(3, 2);
  p2.log_vol = Eigen::VectorXd::Zero(3);
  Eigen::MatrixXd x2(2, 2);
  x2 << 1.0, 0.5, 1.0, 0.5;
  Eigen::VectorXd y2(2);
  y2 << 2.0, 2.0;
  RegressionDataset d2(1, {YearQuarter(1900, 1), YearQuarter(1900, 2)}, x2, y2,
                       {"intercept", "z"});
  CHECK(log_likelihood(p2, d2) == doctest::Approx(2.0 * log_likelihood(p, d1)));
}

TEST_CASE("log likelihood matches a direct per-point oracle") {
  DgpSpec dgp;
  dgp.num_obs = 30;
  dgp.num_regressors = 3;
  dgp.beta_path = BetaPathType::kRandomWalk;
  dgp.vol = VolType::kSv;
  dgp.seed = 9;
  const DgpOutput out = simulate_dgp(dgp);

  ModelParameters p = small_params(30, 3, 4);
  const Eigen::MatrixXd beta = centered_states(p);
  double oracle = 0.0;
  for (Eigen::Index t = 0; t < 30; ++t) {
    const double mean = beta.row(t + 1).dot(out.data.x().row(t));
    const double s2 = std::exp(p.log_vol[t + 1]);
    const double z = out.data.targets()[t] - mean;
    oracle += -0.5 * std::log(2.0 * M_PI * s2) - 0.5 * z * z / s2;
  }
  CHECK(log_likelihood(p, out.data) == doctest::Approx(oracle).epsilon(1e-12));

  ModelParameters wrong = small_params(30, 2, 5);
  CHECK_THROWS_AS(log_likelihood(wrong, out.data), ShapeError);
}

TEST_CASE("prior simulation: E[tau2 | lambda] = 2 / lambda") {
  Rng rng(31);
  const int n = 100000;
  const double a = 0.2, lambda = 3.0;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.gamma(a, 0.5 * a * lambda);
  const double se = sd(x) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(x.mean() - 2.0 / lambda) < 3 * se);
}

TEST_CASE("prior simulation: stationary initial log variance") {
  TvpSvModelSpec spec;
  spec.num_regressors = 1;
  spec.shrinkage.learn_a = spec.shrinkage.learn_c = spec.shrinkage.learn_kappa = false;
  spec.shrinkage.a_v = spec.shrinkage.c_v = 0.5;
  spec.shrinkage.a_beta = spec.shrinkage.c_beta = 0.5;
  Rng rng(77);
  const int n = 30000;
  Eigen::VectorXd lv0(n), target_var(n);
  for (int i = 0; i < n; ++i) {
    const ModelParameters p = draw_prior_parameters(spec, 2, rng);
    lv0[i] = (p.log_vol[0] - p.mu_sigma) /
             std::sqrt(p.theta2 / (1.0 - p.rho_sigma * p.rho_sigma));
  }
  // standardized initial values must be standard normal
  const double se_mean = sd(lv0) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(lv0.mean()) < 3 * se_mean);
  CHECK(variance(lv0) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("prior draws satisfy container invariants") {
  TvpSvModelSpec spec;
  spec.num_regressors = 4;
  Rng rng(123);
  for (int i = 0; i < 50; ++i) {
    const ModelParameters p = draw_prior_parameters(spec, 15, rng);
    CHECK_NOTHROW(p.validate());
    CHECK(p.states_tilde.rows() == 16);
    CHECK(std::abs(p.rho_sigma) < 1.0);
  }
}

TEST_CASE("model spec validation") {
  TvpSvModelSpec spec;
  spec.num_regressors = 0;
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  spec.num_regressors = 2;
  spec.sv.theta2_gamma_rate = 0.0;
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  spec.sv.theta2_gamma_rate = 0.5;
  spec.shrinkage.learn_a = true;
  spec.shrinkage.a_v = 0.7;
  CHECK_THROWS_AS(spec.validate(), ParameterError);
}

TEST_CASE("model spec from config applies overrides") {
  Config cfg = Config::from_string(R"(
[sv_prior]
rho_beta_a = 20
[shrinkage]
learn_a = false
a_v = 0.5
)");
  const TvpSvModelSpec spec = TvpSvModelSpec::from_config(cfg, 1, 3);
  CHECK(spec.sv.rho_beta_a == 20.0);
  CHECK(spec.shrinkage.learn_a == false);
  CHECK(spec.shrinkage.a_v == 0.5);
  CHECK(spec.shrinkage.learn_c == true);
}
