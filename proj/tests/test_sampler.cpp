#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "gar/sampler.hpp"
#include "gar/stats.hpp"
#include "gar/synthetic.hpp"

using namespace gar;

namespace {

TvpSvModelSpec basic_spec(int k) {
  TvpSvModelSpec spec;
  spec.num_regressors = k;
  return spec;
}

SamplerConfig quick_cfg(std::uint64_t seed, int n_draws = 1000, int burn_in = 500,
                        int thin = 1) {
  SamplerConfig cfg;
  cfg.n_draws = n_draws;
  cfg.burn_in = burn_in;
  cfg.thin = thin;
  cfg.seed = seed;
  return cfg;
}

double batch_se(const Eigen::VectorXd& x, Eigen::Index batches = 40) {
  const Eigen::Index len = x.size() / batches;
  Eigen::VectorXd means(batches);
  for (Eigen::Index i = 0; i < batches; ++i) means[i] = x.segment(i * len, len).mean();
  return sd(means) / std::sqrt(static_cast<double>(batches));
}

}  // namespace

TEST_CASE("draw_states: zero design gives prior random-walk marginals") {
  const int t_obs = 5;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(t_obs, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(t_obs);
  TvpSvSampler sampler(basic_spec(1), x, y, quick_cfg(3));

  const int n = 20000;
  Eigen::MatrixXd draws(n, t_obs);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd s = sampler.draw_states();
    for (int t = 1; t <= t_obs; ++t) draws(i, t - 1) = s(t, 0);
  }
  for (int t = 1; t <= t_obs; ++t) {
    const Eigen::VectorXd col = draws.col(t - 1);
    const double var_t = variance(col);
    // Var = t, MC se of the sample variance of a Gaussian: t * sqrt(2/(n-1))
    const double se = t * std::sqrt(2.0 / (n - 1.0));
    CHECK(std::abs(col.mean()) < 4 * std::sqrt(static_cast<double>(t) / n));
    CHECK(std::abs(var_t - t) < 4 * se);
  }
}

TEST_CASE("draw_states: infinite noise variance reproduces the prior") {
  const int t_obs = 4;
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(t_obs, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(t_obs);
  TvpSvSampler sampler(basic_spec(1), x, y, quick_cfg(4));
  ModelParameters p = sampler.params();
  p.log_vol.setConstant(60.0);  // sigma^2 = e^60
  sampler.set_params(p);

  const int n = 20000;
  Eigen::VectorXd last(n);
  for (int i = 0; i < n; ++i) last[i] = sampler.draw_states()(t_obs, 0);
  CHECK(std::abs(last.mean()) < 4 * std::sqrt(static_cast<double>(t_obs) / n));
  CHECK(std::abs(variance(last) - t_obs) < 4 * t_obs * std::sqrt(2.0 / (n - 1.0)));
}

TEST_CASE("draw_states matches the dense Gaussian-conditioning oracle") {
  // T = 3, K = 1 with arbitrary design, scales and variances.
  const int t_obs = 3;
  Eigen::MatrixXd x(t_obs, 1);
  x << 1.0, -0.7, 0.4;
  Eigen::VectorXd y(t_obs);
  y << 0.8, -0.3, 1.2;

  TvpSvSampler sampler(basic_spec(1), x, y, quick_cfg(5));
  ModelParameters p = sampler.params();
  p.beta0[0] = 0.25;
  p.sqrt_v[0] = 0.8;
  p.log_vol << 0.0, std::log(0.5), std::log(1.5), std::log(0.9);
  sampler.set_params(p);

  // Dense oracle: prior covariance of the anchored random walk is
  // min(s, t); condition on y = Z tilde + eps with diagonal noise.
  Eigen::MatrixXd prior_cov(t_obs, t_obs);
  for (int s = 1; s <= t_obs; ++s)
    for (int t = 1; t <= t_obs; ++t) prior_cov(s - 1, t - 1) = std::min(s, t);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(t_obs, t_obs);
  Eigen::VectorXd resid0(t_obs);
  Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(t_obs, t_obs);
  for (int t = 0; t < t_obs; ++t) {
    z(t, t) = x(t, 0) * p.sqrt_v[0];
    noise(t, t) = std::exp(p.log_vol[t + 1]);
    resid0[t] = y[t] - x(t, 0) * p.beta0[0];
  }
  const Eigen::MatrixXd gain =
      prior_cov * z.transpose() * (z * prior_cov * z.transpose() + noise).inverse();
  const Eigen::VectorXd mean_oracle = gain * resid0;
  const Eigen::MatrixXd cov_oracle = prior_cov - gain * z * prior_cov;

  const int n = 100000;
  Eigen::MatrixXd draws(n, t_obs);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd s = sampler.draw_states();
    for (int t = 1; t <= t_obs; ++t) draws(i, t - 1) = s(t, 0);
  }
  for (int t = 0; t < t_obs; ++t) {
    const double se = std::sqrt(cov_oracle(t, t) / n);
    CHECK(std::abs(draws.col(t).mean() - mean_oracle[t]) < 3 * se);
  }
  for (int s = 0; s < t_obs; ++s)
    for (int t = 0; t < t_obs; ++t) {
      const Eigen::VectorXd cs = draws.col(s).array() - draws.col(s).mean();
      const Eigen::VectorXd ct = draws.col(t).array() - draws.col(t).mean();
      const double sample_cov = cs.dot(ct) / (n - 1.0);
      const double se = std::sqrt((cov_oracle(s, s) * cov_oracle(t, t) +
                                   cov_oracle(s, t) * cov_oracle(s, t)) /
                                  n);
      CHECK(std::abs(sample_cov - cov_oracle(s, t)) < 3 * se);
    }
}

TEST_CASE("draw_beta0_and_scales: point-mass prior collapses the draw") {
  const int t_obs = 6;
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(t_obs, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(t_obs);
  TvpSvSampler sampler(basic_spec(2), x, y, quick_cfg(6));
  ModelParameters p = sampler.params();
  p.tau2_beta.setConstant(1e-12);
  p.tau2_v.setConstant(1e-12);
  sampler.set_params(p);
  for (int i = 0; i < 50; ++i) {
    sampler.draw_beta0_and_scales();
    CHECK(sampler.params().beta0.cwiseAbs().maxCoeff() < 1e-4);
    CHECK(sampler.params().sqrt_v.cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("draw_beta0_and_scales matches the conjugate regression oracle") {
  // K = 1, T = 5: the pair (beta0, sqrt_v) is a 2-coefficient Bayesian
  // regression on columns (x_t, x_t * tilde_t) with fixed noise.
  const int t_obs = 5;
  Eigen::MatrixXd x(t_obs, 1);
  x << 1.0, 0.5, -0.4, 1.2, 0.3;
  Eigen::VectorXd y(t_obs);
  y << 0.6, 0.2, -0.1, 1.4, 0.5;

  TvpSvSampler sampler(basic_spec(1), x, y, quick_cfg(7));
  ModelParameters p = sampler.params();
  for (int t = 1; t <= t_obs; ++t) p.states_tilde(t, 0) = 0.3 * t - 0.8;
  p.log_vol.setConstant(std::log(0.7));
  p.tau2_beta.setConstant(2.0);
  p.tau2_v.setConstant(0.5);
  sampler.set_params(p);

  Eigen::MatrixXd w(t_obs, 2);
  for (int t = 0; t < t_obs; ++t) {
    w(t, 0) = x(t, 0);
    w(t, 1) = x(t, 0) * p.states_tilde(t + 1, 0);
  }
  Eigen::Matrix2d prior = Eigen::Vector2d(1.0 / 2.0, 1.0 / 0.5).asDiagonal();
  const Eigen::Matrix2d a_oracle = w.transpose() * w / 0.7 + prior;
  const Eigen::Vector2d mean_oracle = a_oracle.inverse() * (w.transpose() * y / 0.7);
  const Eigen::Matrix2d cov_oracle = a_oracle.inverse();

  const int n = 100000;
  Eigen::MatrixXd draws(n, 2);
  for (int i = 0; i < n; ++i) {
    sampler.set_params(p);  // hold the conditioning state fixed
    sampler.draw_beta0_and_scales();
    draws(i, 0) = sampler.params().beta0[0];
    draws(i, 1) = sampler.params().sqrt_v[0];
  }
  for (int j = 0; j < 2; ++j) {
    const double se = std::sqrt(cov_oracle(j, j) / n);
    CHECK(std::abs(draws.col(j).mean() - mean_oracle[j]) < 3 * se);
    CHECK(variance(draws.col(j)) ==
          doctest::Approx(cov_oracle(j, j)).epsilon(0.05));
  }
}

TEST_CASE("asis interweave: degenerate increments use the prior-tied draw") {
  const int t_obs = 8;
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(t_obs, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(t_obs);
  TvpSvSampler sampler(basic_spec(1), x, y, quick_cfg(8));
  ModelParameters p = sampler.params();
  p.sqrt_v[0] = 0.0;  // centered path is exactly constant
  p.states_tilde.setZero();
  p.tau2_v.setConstant(0.04);
  sampler.set_params(p);
  Eigen::VectorXd vs(4000);
  for (int i = 0; i < 4000; ++i) {
    sampler.set_params(p);
    sampler.asis_interweave();
    const double s = sampler.params().sqrt_v[0];
    vs[i] = s * s;
    CHECK(s != 0.0);
    CHECK(sampler.params().states_tilde.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sampler.params().states_tilde.allFinite());
  }
  // prior tied to tau2: v^2 = tau2 * chi^2_1, mean 0.04
  CHECK(vs.mean() == doctest::Approx(0.04).epsilon(0.15));
}

TEST_CASE("asis interweave leaves the normalization consistent") {
  DgpSpec dgp;
  dgp.num_obs = 40;
  dgp.num_regressors = 2;
  dgp.beta_path = BetaPathType::kRandomWalk;
  dgp.seed = 17;
  const DgpOutput out = simulate_dgp(dgp);
  TvpSvSampler sampler(basic_spec(2), out.data.x_head(40), out.data.y_head(40),
                       quick_cfg(9));
  for (int i = 0; i < 20; ++i) {
    sampler.draw_states();
    sampler.draw_beta0_and_scales();
    const Eigen::MatrixXd before = centered_states(sampler.params());
    sampler.asis_interweave();
    const Eigen::MatrixXd after = centered_states(sampler.params());
    // the interweave moves (beta0, sqrt_v) but the centered states t >= 1 stay
    CHECK((after.bottomRows(40) - before.bottomRows(40)).cwiseAbs().maxCoeff() <
          1e-9);
  }
}

TEST_CASE("lambda full conditional matches the Gamma-conjugacy closed form") {
  const int t_obs = 4;
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(t_obs, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(t_obs);
  TvpSvModelSpec spec = basic_spec(1);
  spec.shrinkage.learn_a = spec.shrinkage.learn_c = spec.shrinkage.learn_kappa = false;
  spec.shrinkage.a_v = 0.5;
  spec.shrinkage.c_v = 0.5;
  spec.shrinkage.kappa_v = 20.0;
  spec.shrinkage.a_beta = 0.5;
  spec.shrinkage.c_beta = 0.5;
  TvpSvSampler sampler(spec, x, y, quick_cfg(10));
  ModelParameters p = sampler.params();
  p.tau2_v.setConstant(3.0);
  sampler.set_params(p);

  const int n = 50000;
  Eigen::VectorXd lam(n);
  for (int i = 0; i < n; ++i) {
    sampler.set_params(p);  // pin tau2 so the lambda draw is iid
    sampler.draw_shrinkage_hierarchy();
    lam[i] = sampler.params().lambda_v[0];
  }
  // lambda | tau2 ~ Gamma(a + c, a tau2 / 2 + c / kappa)
  const double shape = 0.5 + 0.5;
  const double rate = 0.5 * 0.5 * 3.0 + 0.5 / 20.0;
  const double se = sd(lam) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(lam.mean() - shape / rate) < 3 * se);
}

TEST_CASE("fixed hyperparameters stay fixed when learning is off") {
  DgpSpec dgp;
  dgp.num_obs = 30;
  dgp.num_regressors = 2;
  dgp.seed = 5;
  const DgpOutput out = simulate_dgp(dgp);
  TvpSvModelSpec spec = basic_spec(2);
  spec.shrinkage.learn_a = spec.shrinkage.learn_c = spec.shrinkage.learn_kappa = false;
  spec.shrinkage.a_v = spec.shrinkage.c_v = 0.5;
  spec.shrinkage.a_beta = spec.shrinkage.c_beta = 0.5;
  spec.shrinkage.kappa_v = spec.shrinkage.kappa_beta = 20.0;
  SamplerConfig cfg = quick_cfg(11, 50, 10);
  const PosteriorDraws draws = run_chain(spec, out.data, cfg);
  for (Eigen::Index i = 0; i < draws.size(); ++i) {
    CHECK(draws.hyper()(i, 0) == 0.5);   // a_v
    CHECK(draws.hyper()(i, 1) == 0.5);   // c_v
    CHECK(draws.hyper()(i, 2) == 20.0);  // kappa_v
    CHECK(draws.hyper()(i, 4) == 0.5);   // a_beta
  }
}

TEST_CASE("run_chain is deterministic and retains floor(n/thin) draws") {
  DgpSpec dgp;
  dgp.num_obs = 40;
  dgp.num_regressors = 2;
  dgp.seed = 21;
  const DgpOutput out = simulate_dgp(dgp);
  TvpSvModelSpec spec = basic_spec(2);
  SamplerConfig cfg = quick_cfg(42, 105, 50, 10);
  const PosteriorDraws a = run_chain(spec, out.data, cfg);
  const PosteriorDraws b = run_chain(spec, out.data, cfg);
  CHECK(a.size() == 10);
  CHECK((a.beta0() - b.beta0()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.log_vol() - b.log_vol()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.hyper() - b.hyper()).cwiseAbs().maxCoeff() == 0.0);

  SamplerConfig cfg2 = cfg;
  cfg2.seed = 43;
  const PosteriorDraws c = run_chain(spec, out.data, cfg2);
  CHECK((a.beta0() - c.beta0()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("posterior draws save and load round trip") {
  DgpSpec dgp;
  dgp.num_obs = 25;
  dgp.num_regressors = 2;
  dgp.seed = 33;
  const DgpOutput out = simulate_dgp(dgp);
  const PosteriorDraws draws = run_chain(basic_spec(2), out.data, quick_cfg(12, 40, 20, 2));

  const std::string dir =
      (std::filesystem::temp_directory_path() / "gar_posterior_test").string();
  draws.save(dir);
  const PosteriorDraws loaded = PosteriorDraws::load(dir);
  CHECK(loaded.size() == draws.size());
  CHECK(loaded.num_obs() == draws.num_obs());
  CHECK(loaded.column_names() == draws.column_names());
  CHECK((loaded.beta0() - draws.beta0()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((loaded.states_tilde() - draws.states_tilde()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((loaded.sv_params() - draws.sv_params()).cwiseAbs().maxCoeff() == 0.0);
  const ModelParameters p = loaded.draw(0);
  CHECK_NOTHROW(p.validate());
  std::filesystem::remove_all(dir);
}

TEST_CASE("prior-only chain reproduces prior marginals") {
  TvpSvModelSpec spec = basic_spec(2);
  const int t_obs = 12;
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(t_obs, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(t_obs);

  SamplerConfig cfg = quick_cfg(77, 20000, 500, 1);
  cfg.prior_only = true;
  TvpSvSampler sampler(spec, x, y, cfg);
  const PosteriorDraws chain = sampler.run();

  Rng rng(derive_seed(77, "prior_oracle"));
  const int n = 20000;
  Eigen::VectorXd rho_prior(n), theta_prior(n), a_prior(n), atan_b_prior(n);
  for (int i = 0; i < n; ++i) {
    const ModelParameters p = draw_prior_parameters(spec, t_obs, rng);
    rho_prior[i] = p.rho_sigma;
    theta_prior[i] = p.theta2;
    a_prior[i] = p.a_v;
    atan_b_prior[i] = std::atan(p.beta0[0]);
  }

  const auto compare = [&](const Eigen::VectorXd& chain_vals,
                           const Eigen::VectorXd& prior_vals) {
    const double se = std::sqrt(std::pow(batch_se(chain_vals), 2) +
                                variance(prior_vals) / n);
    const double chain_mean = chain_vals.mean();
    const double prior_mean = prior_vals.mean();
    CAPTURE(chain_mean);
    CAPTURE(prior_mean);
    CAPTURE(se);
    CHECK(std::abs(chain_mean - prior_mean) < 5 * se);
  };
  compare(chain.sv_params().col(1), rho_prior);
  compare(chain.sv_params().col(2), theta_prior);
  compare(chain.hyper().col(0), a_prior);
  compare(chain.beta0().col(0).array().atan().matrix(), atan_b_prior);
}

TEST_CASE("MH acceptance rates stay in the tuned band") {
  DgpSpec dgp;
  dgp.num_obs = 120;
  dgp.num_regressors = 3;
  dgp.beta_path = BetaPathType::kRandomWalk;
  dgp.state_scale = 0.1;
  dgp.vol = VolType::kSv;
  dgp.seed = 3;
  const DgpOutput out = simulate_dgp(dgp);
  TvpSvModelSpec spec = basic_spec(3);
  SamplerConfig cfg = quick_cfg(55, 2000, 2000, 1);
  TvpSvSampler sampler(spec, out.data.x_head(120), out.data.y_head(120), cfg);
  const PosteriorDraws draws = sampler.run();
  const auto rates = draws.acceptance_rates;
  for (const auto& name : {"a_v", "c_v", "a_beta", "c_beta", "rho_sigma"}) {
    REQUIRE(rates.count(name) == 1);
    CAPTURE(name);
    CHECK(rates.at(name) >= 0.15);
    CHECK(rates.at(name) <= 0.6);
  }
}

TEST_CASE("synthetic recovery: constant-coefficient homoskedastic DGP") {
  DgpSpec dgp;
  dgp.num_obs = 100;
  dgp.num_regressors = 2;
  dgp.beta_path = BetaPathType::kConstant;
  Eigen::VectorXd b(2);
  b << 1.0, 0.5;
  dgp.beta_start = b;
  dgp.sigma = 1.0;
  dgp.seed = 101;
  const DgpOutput out = simulate_dgp(dgp);

  SamplerConfig cfg = quick_cfg(900, 2000, 2000, 2);
  const PosteriorDraws draws = run_chain(basic_spec(2), out.data, cfg);
  for (int j = 0; j < 2; ++j) {
    const Eigen::VectorXd bj = draws.beta0().col(j);
    const double post_sd = sd(bj);
    CHECK(std::abs(bj.mean() - out.truth.beta0[j]) < 3 * post_sd);
  }
}

TEST_CASE("shrinkage discriminates drifting from constant coefficients") {
  // one-pair smoke version of the multi-replication acceptance criterion
  auto median_abs_sqrtv = [](BetaPathType path, std::uint64_t seed) {
    DgpSpec dgp;
    dgp.num_obs = 150;
    dgp.num_regressors = 2;
    dgp.beta_path = path;
    dgp.state_scale = 0.1;
    dgp.seed = seed;
    const DgpOutput out = simulate_dgp(dgp);
    SamplerConfig cfg = quick_cfg(seed + 1, 1500, 1500, 1);
    const PosteriorDraws draws = run_chain(basic_spec(2), out.data, cfg);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst, median(draws.sqrt_v().col(j).cwiseAbs()));
    return worst;
  };
  const double drifting = median_abs_sqrtv(BetaPathType::kRandomWalk, 7);
  const double constant = median_abs_sqrtv(BetaPathType::kConstant, 7);
  CHECK(drifting > constant);
}

TEST_CASE("conjugate check: frozen shrinkage, pinned variance") {
  // constant-coefficient DGP, no state variation (tau2_v ~ 0), tau2_beta
  // large and an SV prior pinned at the true variance: the model reduces to
  // a conjugate Gaussian regression.
  DgpSpec dgp;
  dgp.num_obs = 200;
  dgp.num_regressors = 2;
  dgp.beta_path = BetaPathType::kConstant;
  Eigen::VectorXd b(2);
  b << 0.8, -0.6;
  dgp.beta_start = b;
  dgp.sigma = 1.3;
  dgp.seed = 61;
  const DgpOutput out = simulate_dgp(dgp);
  const double sigma2 = 1.3 * 1.3;

  TvpSvModelSpec spec = basic_spec(2);
  spec.shrinkage.update_scales = false;
  spec.shrinkage.learn_a = spec.shrinkage.learn_c = spec.shrinkage.learn_kappa = false;
  spec.shrinkage.a_v = spec.shrinkage.c_v = 0.5;
  spec.shrinkage.a_beta = spec.shrinkage.c_beta = 0.5;
  spec.sv.mu_prior_mean = std::log(sigma2);
  spec.sv.mu_prior_var = 1e-8;
  spec.sv.theta2_gamma_shape = 0.5;
  spec.sv.theta2_gamma_rate = 5e7;  // E[theta2] = 1e-8: flat volatility path

  const double tau2_beta = 1e4, tau2_v = 1e-12;

  SamplerConfig cfg = quick_cfg(500, 4000, 1000, 1);
  TvpSvSampler sampler(spec, out.data.x_head(200), out.data.y_head(200), cfg);
  ModelParameters p = sampler.params();
  p.tau2_beta.setConstant(tau2_beta);
  p.tau2_v.setConstant(tau2_v);
  p.sqrt_v.setConstant(1e-6);
  sampler.set_params(p);
  const PosteriorDraws draws = sampler.run();

  const Eigen::MatrixXd x = out.data.x_head(200);
  const Eigen::VectorXd y = out.data.y_head(200);
  Eigen::Matrix2d a_oracle = x.transpose() * x / sigma2;
  a_oracle.diagonal().array() += 1.0 / tau2_beta;
  const Eigen::Vector2d mean_oracle = a_oracle.inverse() * (x.transpose() * y / sigma2);

  for (int j = 0; j < 2; ++j) {
    const Eigen::VectorXd bj = draws.beta0().col(j);
    const double se = batch_se(bj);
    CHECK(std::abs(bj.mean() - mean_oracle[j]) < 3 * se + 1e-4);
  }
}

TEST_CASE("divergent input aborts with a diagnostic") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(5, 1) * 1e200;
  Eigen::VectorXd y = Eigen::VectorXd::Ones(5) * 1e200;
  TvpSvSampler sampler(basic_spec(1), x, y, quick_cfg(1));
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 50; ++i) sampler.sweep();
      }(),
      NumericError);
}
