#include "gar/posterior.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gar/csv.hpp"
#include "gar/version.hpp"

namespace gar {

namespace {

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file '" + path + "'");
  for (std::size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_double(m(i, j));
    out << "\n";
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path, Eigen::Index expect_cols) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("file '" + path + "' is empty");
  std::vector<double> values;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    Eigen::Index cols = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      values.push_back(std::stod(line.substr(pos, next - pos)));
      ++cols;
      pos = next + 1;
    }
    if (cols != expect_cols)
      throw SchemaError("file '" + path + "': expected " +
                        std::to_string(expect_cols) + " columns, got " +
                        std::to_string(cols));
    ++rows;
  }
  Eigen::MatrixXd m(rows, expect_cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < expect_cols; ++j) m(i, j) = values[i * expect_cols + j];
  return m;
}

std::vector<std::string> indexed_names(const std::string& prefix, Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

PosteriorDraws::PosteriorDraws(const TvpSvModelSpec& spec, Eigen::Index num_obs,
                               const SamplerConfig& cfg,
                               std::vector<std::string> column_names)
    : horizon_(spec.horizon),
      t_(num_obs),
      k_(spec.num_regressors),
      config_(cfg),
      column_names_(std::move(column_names)) {
  const Eigen::Index n = cfg.retained();
  beta0_.resize(n, k_);
  sqrt_v_.resize(n, k_);
  states_tilde_.resize(n, (t_ + 1) * k_);
  log_vol_.resize(n, t_ + 1);
  sv_params_.resize(n, 3);
  tau2_v_.resize(n, k_);
  lambda_v_.resize(n, k_);
  tau2_beta_.resize(n, k_);
  lambda_beta_.resize(n, k_);
  hyper_.resize(n, 8);
}

void PosteriorDraws::record(const ModelParameters& p) {
  if (filled_ >= beta0_.rows())
    throw NumericError("PosteriorDraws: more draws recorded than configured");
  const Eigen::Index i = filled_++;
  beta0_.row(i) = p.beta0.transpose();
  sqrt_v_.row(i) = p.sqrt_v.transpose();
  for (Eigen::Index t = 0; t <= t_; ++t)
    states_tilde_.row(i).segment(t * k_, k_) = p.states_tilde.row(t);
  log_vol_.row(i) = p.log_vol.transpose();
  sv_params_(i, 0) = p.mu_sigma;
  sv_params_(i, 1) = p.rho_sigma;
  sv_params_(i, 2) = p.theta2;
  tau2_v_.row(i) = p.tau2_v.transpose();
  lambda_v_.row(i) = p.lambda_v.transpose();
  tau2_beta_.row(i) = p.tau2_beta.transpose();
  lambda_beta_.row(i) = p.lambda_beta.transpose();
  hyper_(i, 0) = p.a_v;
  hyper_(i, 1) = p.c_v;
  hyper_(i, 2) = p.kappa_v;
  hyper_(i, 3) = p.kappa_aux_v;
  hyper_(i, 4) = p.a_beta;
  hyper_(i, 5) = p.c_beta;
  hyper_(i, 6) = p.kappa_beta;
  hyper_(i, 7) = p.kappa_aux_beta;
}

ModelParameters PosteriorDraws::draw(Eigen::Index i) const {
  if (i < 0 || i >= filled_) throw ParameterError("PosteriorDraws::draw: index out of range");
  ModelParameters p;
  p.beta0 = beta0_.row(i).transpose();
  p.sqrt_v = sqrt_v_.row(i).transpose();
  p.states_tilde.resize(t_ + 1, k_);
  for (Eigen::Index t = 0; t <= t_; ++t)
    p.states_tilde.row(t) = states_tilde_.row(i).segment(t * k_, k_);
  p.log_vol = log_vol_.row(i).transpose();
  p.mu_sigma = sv_params_(i, 0);
  p.rho_sigma = sv_params_(i, 1);
  p.theta2 = sv_params_(i, 2);
  p.tau2_v = tau2_v_.row(i).transpose();
  p.lambda_v = lambda_v_.row(i).transpose();
  p.tau2_beta = tau2_beta_.row(i).transpose();
  p.lambda_beta = lambda_beta_.row(i).transpose();
  p.a_v = hyper_(i, 0);
  p.c_v = hyper_(i, 1);
  p.kappa_v = hyper_(i, 2);
  p.kappa_aux_v = hyper_(i, 3);
  p.a_beta = hyper_(i, 4);
  p.c_beta = hyper_(i, 5);
  p.kappa_beta = hyper_(i, 6);
  p.kappa_aux_beta = hyper_(i, 7);
  return p;
}

void PosteriorDraws::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto path = [&](const std::string& f) { return (fs::path(dir) / f).string(); };

  write_matrix_csv(path("beta0.csv"), beta0_.topRows(filled_), column_names_);
  write_matrix_csv(path("sqrt_v.csv"), sqrt_v_.topRows(filled_), column_names_);
  std::vector<std::string> state_names;
  for (Eigen::Index t = 0; t <= t_; ++t)
    for (Eigen::Index j = 0; j < k_; ++j)
      state_names.push_back("t" + std::to_string(t) + "_" + column_names_[j]);
  write_matrix_csv(path("states_tilde.csv"), states_tilde_.topRows(filled_), state_names);
  write_matrix_csv(path("log_vol.csv"), log_vol_.topRows(filled_),
                   indexed_names("t", t_ + 1));
  write_matrix_csv(path("sv_params.csv"), sv_params_.topRows(filled_),
                   {"mu_sigma", "rho_sigma", "theta2"});
  write_matrix_csv(path("tau2_v.csv"), tau2_v_.topRows(filled_), column_names_);
  write_matrix_csv(path("lambda_v.csv"), lambda_v_.topRows(filled_), column_names_);
  write_matrix_csv(path("tau2_beta.csv"), tau2_beta_.topRows(filled_), column_names_);
  write_matrix_csv(path("lambda_beta.csv"), lambda_beta_.topRows(filled_), column_names_);
  write_matrix_csv(path("hyper.csv"), hyper_.topRows(filled_),
                   {"a_v", "c_v", "kappa_v", "kappa_aux_v", "a_beta", "c_beta",
                    "kappa_beta", "kappa_aux_beta"});

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["draw_count"] = filled_;
  manifest["num_obs"] = t_;
  manifest["num_regressors"] = k_;
  manifest["horizon"] = horizon_;
  manifest["column_names"] = column_names_;
  manifest["acceptance_rates"] = acceptance_rates;
  manifest["sampler"] = {{"n_draws", config_.n_draws},
                         {"burn_in", config_.burn_in},
                         {"thin", config_.thin},
                         {"seed", config_.seed},
                         {"mh_target_acceptance", config_.mh_target_acceptance},
                         {"enable_asis", config_.enable_asis},
                         {"prior_only", config_.prior_only}};
  std::ofstream out(path("manifest.json"));
  if (!out) throw InputError("cannot write manifest in '" + dir + "'");
  out << manifest.dump(2) << "\n";
}

PosteriorDraws PosteriorDraws::load(const std::string& dir) {
  namespace fs = std::filesystem;
  const auto path = [&](const std::string& f) { return (fs::path(dir) / f).string(); };
  if (!fs::exists(path("manifest.json")))
    throw DependencyError("no posterior manifest in '" + dir + "'", "fit");

  std::ifstream in(path("manifest.json"));
  nlohmann::json manifest;
  in >> manifest;

  PosteriorDraws d;
  d.filled_ = manifest.at("draw_count").get<Eigen::Index>();
  d.t_ = manifest.at("num_obs").get<Eigen::Index>();
  d.k_ = manifest.at("num_regressors").get<Eigen::Index>();
  d.horizon_ = manifest.at("horizon").get<int>();
  d.column_names_ = manifest.at("column_names").get<std::vector<std::string>>();
  if (manifest.contains("acceptance_rates"))
    d.acceptance_rates =
        manifest.at("acceptance_rates").get<std::map<std::string, double>>();
  const auto& sc = manifest.at("sampler");
  d.config_.n_draws = sc.at("n_draws").get<int>();
  d.config_.burn_in = sc.at("burn_in").get<int>();
  d.config_.thin = sc.at("thin").get<int>();
  d.config_.seed = sc.at("seed").get<std::uint64_t>();
  d.config_.mh_target_acceptance = sc.at("mh_target_acceptance").get<double>();
  d.config_.enable_asis = sc.at("enable_asis").get<bool>();
  d.config_.prior_only = sc.at("prior_only").get<bool>();

  d.beta0_ = read_matrix_csv(path("beta0.csv"), d.k_);
  d.sqrt_v_ = read_matrix_csv(path("sqrt_v.csv"), d.k_);
  d.states_tilde_ = read_matrix_csv(path("states_tilde.csv"), (d.t_ + 1) * d.k_);
  d.log_vol_ = read_matrix_csv(path("log_vol.csv"), d.t_ + 1);
  d.sv_params_ = read_matrix_csv(path("sv_params.csv"), 3);
  d.tau2_v_ = read_matrix_csv(path("tau2_v.csv"), d.k_);
  d.lambda_v_ = read_matrix_csv(path("lambda_v.csv"), d.k_);
  d.tau2_beta_ = read_matrix_csv(path("tau2_beta.csv"), d.k_);
  d.lambda_beta_ = read_matrix_csv(path("lambda_beta.csv"), d.k_);
  d.hyper_ = read_matrix_csv(path("hyper.csv"), 8);
  if (d.beta0_.rows() != d.filled_)
    throw SchemaError("posterior in '" + dir + "': draw count mismatch");
  return d;
}

}  // namespace gar
