#include "gar/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "gar/banded.hpp"
#include "gar/stats.hpp"

namespace gar {

namespace {

// Omori, Chib, Shephard & Nakajima mixture approximation of the log chi^2_1
// distribution (10 components).
constexpr int kMixSize = 10;
constexpr double kMixProb[kMixSize] = {0.00609, 0.04775, 0.13057, 0.20674, 0.22715,
                                       0.18842, 0.12047, 0.05591, 0.01575, 0.00115};
constexpr double kMixMean[kMixSize] = {1.92677,  1.34744,  0.73504, 0.02266, -0.85173,
                                       -1.97278, -3.46788, -5.55246, -8.68384, -14.65};
constexpr double kMixVar[kMixSize] = {0.11265, 0.17788, 0.26768, 0.40611, 0.62699,
                                      0.98583, 1.57469, 2.54498, 4.16591, 7.33342};

constexpr double kResidOffset = 1e-8;

// |rho| stays strictly inside the unit interval so the stationary variance
// of the log-volatility path remains finite.
constexpr double kRhoBound = 1.0 - 1e-10;

double log_gamma_pdf(double x, double shape, double rate) {
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) -
         rate * x;
}

double log_beta_pdf(double x, double a, double b) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) +
         std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

ModelParameters default_initial_params(const TvpSvModelSpec& spec,
                                       const Eigen::VectorXd& y, Eigen::Index num_obs) {
  const Eigen::Index k = spec.num_regressors;
  ModelParameters p;
  p.beta0 = Eigen::VectorXd::Zero(k);
  p.sqrt_v = Eigen::VectorXd::Constant(k, 0.1);
  p.states_tilde = Eigen::MatrixXd::Zero(num_obs + 1, k);
  p.tau2_v = Eigen::VectorXd::Constant(k, spec.shrinkage.tau2_init);
  p.lambda_v = Eigen::VectorXd::Constant(k, spec.shrinkage.lambda_init);
  p.tau2_beta = Eigen::VectorXd::Constant(k, spec.shrinkage.tau2_init);
  p.lambda_beta = Eigen::VectorXd::Constant(k, spec.shrinkage.lambda_init);
  p.a_v = spec.shrinkage.a_v;
  p.c_v = spec.shrinkage.c_v;
  p.kappa_v = spec.shrinkage.kappa_v;
  p.a_beta = spec.shrinkage.a_beta;
  p.c_beta = spec.shrinkage.c_beta;
  p.kappa_beta = spec.shrinkage.kappa_beta;
  p.kappa_aux_v = p.kappa_aux_beta = 1.0;

  double var_y = 1.0;
  if (y.size() >= 2) {
    const double m = y.mean();
    var_y = std::max((y.array() - m).square().mean(), 1e-4);
  }
  p.mu_sigma = std::log(var_y);
  p.rho_sigma = 0.9;
  p.theta2 = 0.1;
  p.log_vol = Eigen::VectorXd::Constant(num_obs + 1, p.mu_sigma);
  return p;
}

TvpSvSampler::TvpSvSampler(const TvpSvModelSpec& spec, const Eigen::MatrixXd& x,
                           const Eigen::VectorXd& y, const SamplerConfig& cfg)
    : spec_(spec), x_(x), y_(y), cfg_(cfg), rng_(cfg.seed) {
  spec_.validate();
  cfg_.validate();
  if (x_.rows() != y_.size())
    throw ShapeError("sampler: design rows and target length differ");
  if (x_.cols() != spec_.num_regressors)
    throw ShapeError("sampler: design has K=" + std::to_string(x_.cols()) +
                     " but spec says K=" + std::to_string(spec_.num_regressors));
  if (x_.rows() < 1) throw LengthError("sampler: empty dataset");
  params_ = default_initial_params(spec_, y_, x_.rows());
  mh_a_v_.step = mh_a_beta_.step = spec_.shrinkage.mh_step_a;
  mh_c_v_.step = mh_c_beta_.step = spec_.shrinkage.mh_step_c;
  mh_rho_.step = 0.5;
}

void TvpSvSampler::set_params(const ModelParameters& p) {
  if (p.num_obs() != x_.rows() || p.num_regressors() != x_.cols())
    throw ShapeError("set_params: dimension mismatch");
  params_ = p;
}

Eigen::VectorXd TvpSvSampler::residuals() const {
  const Eigen::Index t_obs = x_.rows();
  Eigen::VectorXd r(t_obs);
  for (Eigen::Index t = 0; t < t_obs; ++t) {
    const double mean =
        x_.row(t).dot(params_.beta0 +
                      params_.sqrt_v.cwiseProduct(params_.states_tilde.row(t + 1).transpose()));
    r[t] = y_[t] - mean;
  }
  return r;
}

Eigen::MatrixXd TvpSvSampler::draw_states() {
  const Eigen::Index t_obs = x_.rows();
  const Eigen::Index k = x_.cols();
  const Eigen::Index n = t_obs * k;

  BandMatrix prec(n, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  // Random-walk prior with the anchor at zero: block t gets (1 + 1{t<T}) I on
  // the diagonal and -I next to block t+1.
  for (Eigen::Index t = 1; t <= t_obs; ++t) {
    const Eigen::Index base = (t - 1) * k;
    const double d = (t < t_obs) ? 2.0 : 1.0;
    for (Eigen::Index j = 0; j < k; ++j) prec.add(base + j, base + j, d);
    if (t < t_obs)
      for (Eigen::Index j = 0; j < k; ++j) prec.add(base + k + j, base + j, -1.0);
  }

  if (!cfg_.prior_only) {
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      const Eigen::Index base = (t - 1) * k;
      const Eigen::VectorXd z =
          x_.row(t - 1).transpose().cwiseProduct(params_.sqrt_v);
      const double inv_s2 = std::exp(-params_.log_vol[t]);
      const double resid0 = y_[t - 1] - x_.row(t - 1).dot(params_.beta0);
      for (Eigen::Index j1 = 0; j1 < k; ++j1) {
        for (Eigen::Index j2 = 0; j2 <= j1; ++j2)
          prec.add(base + j1, base + j2, z[j1] * z[j2] * inv_s2);
        rhs[base + j1] += z[j1] * resid0 * inv_s2;
      }
    }
  }

  // Banded Cholesky with a jittered retry if the factorization fails
  // numerically.
  double jitter = 0.0;
  for (int attempt = 0;; ++attempt) {
    try {
      if (jitter > 0.0)
        for (Eigen::Index i = 0; i < n; ++i) prec.add(i, i, jitter);
      BandCholesky chol(prec);
      const Eigen::VectorXd mean = chol.solve(rhs);
      Eigen::VectorXd u(n);
      for (Eigen::Index i = 0; i < n; ++i) u[i] = rng_.normal();
      const Eigen::VectorXd draw = mean + chol.solve_upper(u);
      for (Eigen::Index t = 1; t <= t_obs; ++t)
        params_.states_tilde.row(t) = draw.segment((t - 1) * k, k).transpose();
      params_.states_tilde.row(0).setZero();
      return params_.states_tilde;
    } catch (const NumericError&) {
      if (attempt >= 3) throw;
      ++jitter_fallbacks_;
      jitter = (jitter == 0.0) ? 1e-10 : jitter * 100.0;
    }
  }
}

void TvpSvSampler::draw_beta0_and_scales() {
  const Eigen::Index t_obs = x_.rows();
  const Eigen::Index k = x_.cols();
  const Eigen::Index m = 2 * k;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (Eigen::Index j = 0; j < k; ++j) {
    a(j, j) = 1.0 / params_.tau2_beta[j];
    a(k + j, k + j) = 1.0 / params_.tau2_v[j];
  }

  if (!cfg_.prior_only) {
    Eigen::VectorXd w(m);
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      w.head(k) = x_.row(t - 1).transpose();
      w.tail(k) =
          x_.row(t - 1).transpose().cwiseProduct(params_.states_tilde.row(t).transpose());
      const double inv_s2 = std::exp(-params_.log_vol[t]);
      a.selfadjointView<Eigen::Lower>().rankUpdate(w, inv_s2);
      rhs += w * (y_[t - 1] * inv_s2);
    }
    a = a.selfadjointView<Eigen::Lower>();
  }

  Eigen::LLT<Eigen::MatrixXd> llt(a);
  for (double jitter = 1e-10; llt.info() != Eigen::Success; jitter *= 100.0) {
    ++jitter_fallbacks_;
    a.diagonal().array() += jitter;
    llt.compute(a);
    if (jitter > 1.0) throw NumericError("draw_beta0_and_scales: singular system");
  }
  const Eigen::VectorXd mean = llt.solve(rhs);
  Eigen::VectorXd u(m);
  for (Eigen::Index i = 0; i < m; ++i) u[i] = rng_.normal();
  const Eigen::VectorXd draw =
      mean + llt.matrixU().solve(u);
  params_.beta0 = draw.head(k);
  params_.sqrt_v = draw.tail(k);
}

void TvpSvSampler::asis_interweave() {
  if (!cfg_.enable_asis) return;
  const Eigen::Index t_obs = x_.rows();
  const Eigen::Index k = x_.cols();
  const Eigen::MatrixXd centered = centered_states(params_);

  for (Eigen::Index j = 0; j < k; ++j) {
    double incr2 = 0.0;
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      const double d = centered(t, j) - centered(t - 1, j);
      incr2 += d * d;
    }
    incr2 = std::min(incr2, 1e300);
    double v2;
    if (incr2 < 1e-300) {
      // Degenerate increments: the conditional collapses onto the prior tied
      // to the current tau2.
      const double s = rng_.normal(0.0, std::sqrt(params_.tau2_v[j]));
      v2 = s * s;
    } else {
      v2 = rng_.gig(0.5 * (1.0 - static_cast<double>(t_obs)),
                    1.0 / params_.tau2_v[j], incr2);
    }
    v2 = std::max(v2, kVarianceFloor);
    const double s = (rng_.uniform() < 0.5 ? -1.0 : 1.0) * std::sqrt(v2);

    const double prec = 1.0 / v2 + 1.0 / params_.tau2_beta[j];
    const double mean = (centered(1, j) / v2) / prec;
    const double b0 = rng_.normal(mean, std::sqrt(1.0 / prec));

    params_.beta0[j] = b0;
    params_.sqrt_v[j] = s;
    for (Eigen::Index t = 1; t <= t_obs; ++t)
      params_.states_tilde(t, j) = (centered(t, j) - b0) / s;
  }
  params_.states_tilde.row(0).setZero();
}

double TvpSvSampler::mh_update(double current, MhState& mh,
                               const std::function<double(double)>& log_target) {
  const double proposed = current + mh.step * rng_.normal();
  const double diff = log_target(proposed) - log_target(current);
  const double alpha = std::isfinite(diff) ? std::min(1.0, std::exp(diff)) : 0.0;
  ++mh.proposals;
  const bool accept = rng_.uniform() < alpha;
  if (accept) ++mh.accepts;
  if (adapting_) {
    ++mh.adapt_count;
    const double gamma = std::pow(static_cast<double>(mh.adapt_count) + 10.0, -0.6);
    mh.step *= std::exp(gamma * (alpha - cfg_.mh_target_acceptance));
    mh.step = std::min(50.0, std::max(1e-3, mh.step));
  }
  return accept ? proposed : current;
}

void TvpSvSampler::update_shrinkage_block(bool v_block) {
  const auto& sh = spec_.shrinkage;
  const Eigen::Index k = x_.cols();
  Eigen::VectorXd& coef = v_block ? params_.sqrt_v : params_.beta0;
  Eigen::VectorXd& tau2 = v_block ? params_.tau2_v : params_.tau2_beta;
  Eigen::VectorXd& lambda = v_block ? params_.lambda_v : params_.lambda_beta;
  double& a = v_block ? params_.a_v : params_.a_beta;
  double& c = v_block ? params_.c_v : params_.c_beta;
  double& kappa = v_block ? params_.kappa_v : params_.kappa_beta;
  double& aux = v_block ? params_.kappa_aux_v : params_.kappa_aux_beta;
  MhState& mh_a = v_block ? mh_a_v_ : mh_a_beta_;
  MhState& mh_c = v_block ? mh_c_v_ : mh_c_beta_;

  if (sh.update_scales) {
    for (Eigen::Index j = 0; j < k; ++j) {
      lambda[j] = std::max(rng_.gamma(a + c, 0.5 * a * tau2[j] + c / kappa),
                           kUnderflowGuard);
      const double b = std::clamp(coef[j] * coef[j], 1e-300, 1e300);
      tau2[j] = std::max(rng_.gig(a - 0.5, a * lambda[j], b), kUnderflowGuard);
    }
  }

  if (sh.learn_a) {
    const auto target = [&](double psi) {
      const double av = 0.5 * sigmoid(psi);
      double lt = 0.0;
      for (Eigen::Index j = 0; j < k; ++j)
        lt += log_gamma_pdf(tau2[j], av, 0.5 * av * lambda[j]);
      if (sh.learn_kappa) lt += log_gamma_pdf(kappa, av, 0.5 * av * aux);
      lt += log_beta_pdf(2.0 * av, sh.hyper_alpha, sh.hyper_beta);
      lt += std::log(2.0 * av) + std::log1p(-2.0 * av);  // d(2a)/d(psi)
      return lt;
    };
    a = 0.5 * sigmoid(mh_update(logit(2.0 * a), mh_a, target));
  }

  if (sh.learn_c) {
    const auto target = [&](double psi) {
      const double cv = 0.5 * sigmoid(psi);
      double lt = 0.0;
      for (Eigen::Index j = 0; j < k; ++j)
        lt += log_gamma_pdf(lambda[j], cv, cv / kappa);
      if (sh.learn_kappa) lt += log_gamma_pdf(aux, cv, cv);
      lt += log_beta_pdf(2.0 * cv, sh.hyper_alpha, sh.hyper_beta);
      lt += std::log(2.0 * cv) + std::log1p(-2.0 * cv);
      return lt;
    };
    c = 0.5 * sigmoid(mh_update(logit(2.0 * c), mh_c, target));
  }

  if (sh.learn_kappa) {
    const double sum_lambda = lambda.sum();
    kappa = std::max(rng_.gig(a - c * static_cast<double>(k), a * aux,
                              2.0 * c * sum_lambda),
                     kUnderflowGuard);
    aux = std::max(rng_.gamma(a + c, c + 0.5 * a * kappa), kUnderflowGuard);
  }
}

void TvpSvSampler::draw_shrinkage_hierarchy() {
  update_shrinkage_block(true);
  update_shrinkage_block(false);
}

void TvpSvSampler::draw_stochastic_volatility() {
  const Eigen::Index t_obs = x_.rows();
  const auto& sv = spec_.sv;
  Eigen::VectorXd& lv = params_.log_vol;

  std::vector<int> d(t_obs + 1, 0);
  Eigen::VectorXd ystar(t_obs + 1);

  if (cfg_.prior_only) {
    // No observations: the path conditional is the AR(1) prior itself.
    lv[0] = rng_.normal(params_.mu_sigma,
                        std::sqrt(params_.theta2 /
                                  (1.0 - params_.rho_sigma * params_.rho_sigma)));
    for (Eigen::Index t = 1; t <= t_obs; ++t)
      lv[t] = params_.mu_sigma + params_.rho_sigma * (lv[t - 1] - params_.mu_sigma) +
              rng_.normal(0.0, std::sqrt(params_.theta2));
  } else {
    const Eigen::VectorXd resid = residuals();
    for (Eigen::Index t = 1; t <= t_obs; ++t)
      ystar[t] = std::log(resid[t - 1] * resid[t - 1] + kResidOffset);

    // Mixture indicators given the current path.
    double w[kMixSize];
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      double max_lw = -std::numeric_limits<double>::infinity();
      double lw[kMixSize];
      for (int i = 0; i < kMixSize; ++i) {
        const double e = ystar[t] - lv[t] - kMixMean[i];
        lw[i] = std::log(kMixProb[i]) - 0.5 * std::log(kMixVar[i]) -
                0.5 * e * e / kMixVar[i];
        max_lw = std::max(max_lw, lw[i]);
      }
      double total = 0.0;
      for (int i = 0; i < kMixSize; ++i) {
        w[i] = std::exp(lw[i] - max_lw);
        total += w[i];
      }
      double u = rng_.uniform() * total;
      int pick = kMixSize - 1;
      for (int i = 0; i < kMixSize; ++i) {
        u -= w[i];
        if (u <= 0.0) {
          pick = i;
          break;
        }
      }
      d[t] = pick;
    }

    // Joint path draw through the tridiagonal precision.
    const double psi = 1.0 / params_.theta2;
    const double rho = params_.rho_sigma;
    const Eigen::Index n = t_obs + 1;
    BandMatrix prec(n, 1);
    Eigen::VectorXd rhs(n);
    prec.add(0, 0, psi);
    rhs[0] = params_.mu_sigma * psi * (1.0 - rho);
    for (Eigen::Index t = 1; t < t_obs; ++t) {
      prec.add(t, t, (1.0 + rho * rho) * psi);
      rhs[t] = params_.mu_sigma * psi * (1.0 - rho) * (1.0 - rho);
    }
    prec.add(t_obs, t_obs, psi);
    rhs[t_obs] = params_.mu_sigma * psi * (1.0 - rho);
    for (Eigen::Index t = 0; t < t_obs; ++t) prec.add(t + 1, t, -rho * psi);
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      const double wv = 1.0 / kMixVar[d[t]];
      prec.add(t, t, wv);
      rhs[t] += (ystar[t] - kMixMean[d[t]]) * wv;
    }
    double jitter = 0.0;
    for (int attempt = 0;; ++attempt) {
      try {
        if (jitter > 0.0)
          for (Eigen::Index i = 0; i < n; ++i) prec.add(i, i, jitter);
        BandCholesky chol(prec);
        const Eigen::VectorXd mean = chol.solve(rhs);
        Eigen::VectorXd u(n);
        for (Eigen::Index i = 0; i < n; ++i) u[i] = rng_.normal();
        lv = mean + chol.solve_upper(u);
        break;
      } catch (const NumericError&) {
        if (attempt >= 3) throw;
        ++jitter_fallbacks_;
        jitter = (jitter == 0.0) ? 1e-10 : jitter * 100.0;
      }
    }
  }

  // AR parameters in the centered parameterization.
  {
    const double psi = 1.0 / params_.theta2;
    const double rho = params_.rho_sigma;
    double prec = 1.0 / sv.mu_prior_var + psi * (1.0 - rho * rho);
    double num = sv.mu_prior_mean / sv.mu_prior_var + psi * (1.0 - rho * rho) * lv[0];
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      prec += psi * (1.0 - rho) * (1.0 - rho);
      num += psi * (1.0 - rho) * (lv[t] - rho * lv[t - 1]);
    }
    params_.mu_sigma = rng_.normal(num / prec, std::sqrt(1.0 / prec));
  }

  {
    const double mu = params_.mu_sigma;
    const double th2 = params_.theta2;
    const auto target = [&](double z) {
      const double rho = std::tanh(z);
      const double one_m = 1.0 - rho * rho;
      double lt = 0.5 * std::log(one_m) -
                  0.5 * one_m * (lv[0] - mu) * (lv[0] - mu) / th2;
      for (Eigen::Index t = 1; t <= t_obs; ++t) {
        const double e = lv[t] - mu - rho * (lv[t - 1] - mu);
        lt -= 0.5 * e * e / th2;
      }
      lt += (sv.rho_beta_a - 1.0) * std::log(0.5 * (1.0 + rho)) +
            (sv.rho_beta_b - 1.0) * std::log(0.5 * (1.0 - rho));
      lt += std::log(one_m);  // Jacobian of rho = tanh(z)
      return lt;
    };
    const double z_new = mh_update(std::atanh(params_.rho_sigma), mh_rho_, target);
    params_.rho_sigma = std::clamp(std::tanh(z_new), -kRhoBound, kRhoBound);
  }

  {
    const double mu = params_.mu_sigma;
    const double rho = params_.rho_sigma;
    double s = (1.0 - rho * rho) * (lv[0] - mu) * (lv[0] - mu);
    for (Eigen::Index t = 1; t <= t_obs; ++t) {
      const double e = lv[t] - mu - rho * (lv[t - 1] - mu);
      s += e * e;
    }
    s = std::max(s, 1e-300);
    const double p_gig =
        sv.theta2_gamma_shape - 0.5 * static_cast<double>(t_obs + 1);
    params_.theta2 =
        std::max(rng_.gig(p_gig, 2.0 * sv.theta2_gamma_rate, s), kVarianceFloor);
  }

  // Boosting move: redraw the level and scale in the non-centered
  // parameterization of the path. The joint (mu, theta) Gaussian draw needs
  // the chi^2-type prior on theta2 with shape 1/2 (the default); for other
  // shapes only mu is redrawn.
  {
    const double theta_s = std::sqrt(params_.theta2);
    const Eigen::VectorXd ltilde = (lv.array() - params_.mu_sigma) / theta_s;
    if (std::abs(sv.theta2_gamma_shape - 0.5) < 1e-9) {
      Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
      Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
      a(0, 0) = 1.0 / sv.mu_prior_var;
      a(1, 1) = 2.0 * sv.theta2_gamma_rate;
      rhs[0] = sv.mu_prior_mean / sv.mu_prior_var;
      if (!cfg_.prior_only) {
        for (Eigen::Index t = 1; t <= t_obs; ++t) {
          const double wv = 1.0 / kMixVar[d[t]];
          const double resp = ystar[t] - kMixMean[d[t]];
          a(0, 0) += wv;
          a(0, 1) += wv * ltilde[t];
          a(1, 1) += wv * ltilde[t] * ltilde[t];
          rhs[0] += wv * resp;
          rhs[1] += wv * ltilde[t] * resp;
        }
        a(1, 0) = a(0, 1);
      }
      const Eigen::LLT<Eigen::Matrix2d> llt(a);
      const Eigen::Vector2d mean = llt.solve(rhs);
      Eigen::Vector2d u(rng_.normal(), rng_.normal());
      const Eigen::Vector2d draw = mean + llt.matrixU().solve(u);
      const double mu_new = draw[0];
      double theta_new = draw[1];
      if (theta_new * theta_new < kVarianceFloor)
        theta_new = (theta_new < 0.0 ? -1.0 : 1.0) * std::sqrt(kVarianceFloor);
      params_.mu_sigma = mu_new;
      params_.theta2 = theta_new * theta_new;
      lv = (mu_new + theta_new * ltilde.array()).matrix();
    } else {
      double prec = 1.0 / sv.mu_prior_var;
      double num = sv.mu_prior_mean / sv.mu_prior_var;
      if (!cfg_.prior_only) {
        for (Eigen::Index t = 1; t <= t_obs; ++t) {
          const double wv = 1.0 / kMixVar[d[t]];
          prec += wv;
          num += wv * (ystar[t] - kMixMean[d[t]] - theta_s * ltilde[t]);
        }
      }
      const double mu_new = rng_.normal(num / prec, std::sqrt(1.0 / prec));
      params_.mu_sigma = mu_new;
      lv = (mu_new + theta_s * ltilde.array()).matrix();
    }
  }
}

void TvpSvSampler::check_finite() const {
  if (!params_.states_tilde.allFinite() || !params_.log_vol.allFinite() ||
      !params_.beta0.allFinite() || !params_.sqrt_v.allFinite() ||
      !std::isfinite(params_.theta2) || !std::isfinite(params_.mu_sigma))
    throw NumericError(
        "sampler diverged: non-finite draw (check data scaling and priors)");
}

void TvpSvSampler::sweep() {
  draw_states();
  draw_beta0_and_scales();
  asis_interweave();
  draw_shrinkage_hierarchy();
  draw_stochastic_volatility();
  check_finite();
}

void TvpSvSampler::redraw_data() { y_ = simulate_observations(params_, x_, rng_); }

std::map<std::string, double> TvpSvSampler::acceptance_rates() const {
  std::map<std::string, double> out;
  const auto put = [&](const std::string& name, const MhState& mh) {
    if (mh.proposals > 0)
      out[name] = static_cast<double>(mh.accepts) / static_cast<double>(mh.proposals);
  };
  put("a_v", mh_a_v_);
  put("c_v", mh_c_v_);
  put("a_beta", mh_a_beta_);
  put("c_beta", mh_c_beta_);
  put("rho_sigma", mh_rho_);
  return out;
}

PosteriorDraws TvpSvSampler::run(const std::vector<std::string>& column_names) {
  std::vector<std::string> names = column_names;
  if (names.empty())
    for (Eigen::Index j = 0; j < x_.cols(); ++j)
      names.push_back("x" + std::to_string(j));

  adapting_ = true;
  for (int i = 0; i < cfg_.burn_in; ++i) sweep();
  adapting_ = false;
  for (MhState* mh : {&mh_a_v_, &mh_c_v_, &mh_a_beta_, &mh_c_beta_, &mh_rho_}) {
    mh->proposals = 0;
    mh->accepts = 0;
  }

  PosteriorDraws draws(spec_, x_.rows(), cfg_, names);
  for (int i = 0; i < cfg_.n_draws; ++i) {
    sweep();
    if ((i + 1) % cfg_.thin == 0) draws.record(params_);
  }
  draws.acceptance_rates = acceptance_rates();
  return draws;
}

PosteriorDraws run_chain(const TvpSvModelSpec& spec, const RegressionDataset& data,
                         const SamplerConfig& cfg) {
  if (data.target_rows() < 2)
    throw LengthError("run_chain: dataset has fewer than 2 target rows");
  TvpSvSampler sampler(spec, data.x_head(data.target_rows()),
                       data.y_head(data.target_rows()), cfg);
  return sampler.run(data.column_names());
}

}  // namespace gar
