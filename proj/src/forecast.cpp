#include "gar/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gar/csv.hpp"
#include "gar/parallel.hpp"
#include "gar/stats.hpp"

namespace gar {

PredictiveDensity simulate_predictive(const PosteriorDraws& draws,
                                      const Eigen::VectorXd& x_origin, int h, Rng& rng,
                                      YearQuarter origin) {
  if (h < 1) throw ParameterError("simulate_predictive: h must be >= 1");
  if (draws.size() == 0) throw LengthError("simulate_predictive: no posterior draws");
  if (x_origin.size() != draws.num_regressors())
    throw ShapeError("simulate_predictive: x has wrong length");
  if (!x_origin.allFinite())
    throw InputError("simulate_predictive: non-finite regressor vector");

  const Eigen::Index n = draws.size();
  const Eigen::Index k = draws.num_regressors();
  const Eigen::Index t_obs = draws.num_obs();
  PredictiveDensity pd;
  pd.origin = origin;
  pd.horizon = h;
  pd.draws.resize(n);
  pd.cond_mean.resize(n);
  pd.cond_var.resize(n);

  const double sqrt_h = std::sqrt(static_cast<double>(h));
  for (Eigen::Index i = 0; i < n; ++i) {
    // Final in-sample state, centered: beta_T = beta0 + sqrt_v .* tilde_T.
    double mean = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double beta_t = draws.beta0()(i, j) +
                            draws.sqrt_v()(i, j) *
                                draws.states_tilde()(i, t_obs * k + j);
      const double beta_ahead =
          beta_t + sqrt_h * draws.sqrt_v()(i, j) * rng.normal();
      mean += beta_ahead * x_origin[j];
    }
    const double mu = draws.sv_params()(i, 0);
    const double rho = draws.sv_params()(i, 1);
    const double theta = std::sqrt(draws.sv_params()(i, 2));
    double lv = draws.log_vol()(i, t_obs);
    for (int s = 0; s < h; ++s) lv = mu + rho * (lv - mu) + theta * rng.normal();
    const double sigma2 = std::exp(lv);
    pd.cond_mean[i] = mean;
    pd.cond_var[i] = sigma2;
    pd.draws[i] = mean + std::sqrt(sigma2) * rng.normal();
  }
  return pd;
}

std::vector<double> extract_quantiles(const PredictiveDensity& pd,
                                      const std::vector<double>& probs) {
  if (pd.draws.size() < 100)
    throw LengthError("extract_quantiles: need at least 100 draws");
  for (const double p : probs)
    if (!(p > 0.0 && p < 1.0))
      throw ParameterError("extract_quantiles: probabilities must be in (0,1)");
  std::vector<double> sorted(pd.draws.data(), pd.draws.data() + pd.draws.size());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(probs.size());
  for (const double p : probs) out.push_back(quantile_of_sorted(sorted, p));
  return out;
}

RecursiveForecastResult recursive_forecast(const RegressionDataset& data,
                                           const TvpSvModelSpec& spec,
                                           const SamplerConfig& sampler_cfg,
                                           const RecursiveForecastConfig& cfg) {
  const int h = data.horizon();
  if (spec.horizon != h)
    throw ParameterError("recursive_forecast: spec horizon differs from dataset");
  std::vector<double> probs = cfg.probs;
  std::sort(probs.begin(), probs.end());
  for (const double p : probs)
    if (!(p > 0.0 && p < 1.0))
      throw ParameterError("recursive_forecast: probabilities must be in (0,1)");

  const Eigen::Index first = data.index_of(cfg.start_origin);
  const Eigen::Index train0 = first - h + 1;  // rows with observed targets
  if (train0 < cfg.min_train)
    throw ConfigError("recursive_forecast: start origin " + cfg.start_origin.str() +
                      " leaves " + std::to_string(std::max<Eigen::Index>(train0, 0)) +
                      " training rows, need at least " + std::to_string(cfg.min_train));
  const Eigen::Index n_origins = data.rows() - first;

  RecursiveForecastResult result;
  QuantilePath& path = result.path;
  path.horizon = h;
  path.probs = probs;
  path.origins.assign(data.origins().begin() + first, data.origins().end());
  path.quantiles.resize(n_origins, static_cast<Eigen::Index>(probs.size()));
  path.realized.setConstant(n_origins, std::numeric_limits<double>::quiet_NaN());
  if (cfg.keep_draws) result.predictive_draws.resize(n_origins);

  parallel_for(static_cast<int>(n_origins), cfg.threads, [&](int i) {
    const Eigen::Index origin_row = first + i;
    const Eigen::Index n_train = origin_row - h + 1;

    SamplerConfig scfg = sampler_cfg;
    scfg.seed = derive_seed(cfg.master_seed, "chain", static_cast<std::uint64_t>(origin_row));
    TvpSvSampler sampler(spec, data.x_head(n_train), data.y_head(n_train), scfg);
    const PosteriorDraws draws = sampler.run(data.column_names());

    Rng pred_rng(derive_seed(cfg.master_seed, "predictive",
                             static_cast<std::uint64_t>(origin_row)));
    const PredictiveDensity pd = simulate_predictive(
        draws, data.x().row(origin_row).transpose(), h, pred_rng,
        data.origins()[origin_row]);
    const std::vector<double> qs = extract_quantiles(pd, probs);
    for (std::size_t p = 0; p < probs.size(); ++p)
      path.quantiles(i, static_cast<Eigen::Index>(p)) = qs[p];
    if (origin_row < data.target_rows()) path.realized[i] = data.targets()[origin_row];
    if (cfg.keep_draws) result.predictive_draws[i] = pd.draws;
  });

  return result;
}

void save_quantile_path_csv(const QuantilePath& path, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "origin,horizon,prob,quantile,realized\n";
  for (std::size_t i = 0; i < path.origins.size(); ++i) {
    for (std::size_t p = 0; p < path.probs.size(); ++p) {
      out << path.origins[i].str() << "," << path.horizon << ","
          << format_double(path.probs[p]) << ","
          << format_double(path.quantiles(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(p)))
          << ",";
      if (path.has_realized(static_cast<Eigen::Index>(i)))
        out << format_double(path.realized[static_cast<Eigen::Index>(i)]);
      out << "\n";
    }
  }
}

QuantilePath load_quantile_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw DependencyError("cannot open quantile path '" + file + "'", "forecast");
  std::string line;
  if (!std::getline(in, line) || line.rfind("origin,horizon,prob", 0) != 0)
    throw SchemaError("file '" + file + "': expected quantile path header");

  struct Row {
    YearQuarter origin;
    int horizon;
    double prob, quantile, realized;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      cells.push_back(line.substr(pos, next - pos));
      pos = next + 1;
    }
    if (cells.size() != 5)
      throw SchemaError("file '" + file + "': malformed row '" + line + "'");
    Row r{YearQuarter::parse(cells[0]), std::stoi(cells[1]), std::stod(cells[2]),
          std::stod(cells[3]),
          cells[4].empty() ? std::numeric_limits<double>::quiet_NaN()
                           : std::stod(cells[4])};
    rows.push_back(r);
  }
  if (rows.empty()) throw SchemaError("file '" + file + "' has no rows");

  QuantilePath path;
  path.horizon = rows[0].horizon;
  for (const auto& r : rows) {
    if (std::find(path.probs.begin(), path.probs.end(), r.prob) == path.probs.end())
      path.probs.push_back(r.prob);
    if (path.origins.empty() || !(r.origin == path.origins.back()))
      path.origins.push_back(r.origin);
  }
  std::sort(path.probs.begin(), path.probs.end());
  path.quantiles.setConstant(static_cast<Eigen::Index>(path.origins.size()),
                             static_cast<Eigen::Index>(path.probs.size()),
                             std::numeric_limits<double>::quiet_NaN());
  path.realized.setConstant(static_cast<Eigen::Index>(path.origins.size()),
                            std::numeric_limits<double>::quiet_NaN());
  for (const auto& r : rows) {
    const auto oi = std::find(path.origins.begin(), path.origins.end(), r.origin) -
                    path.origins.begin();
    const auto pi = std::find(path.probs.begin(), path.probs.end(), r.prob) -
                    path.probs.begin();
    path.quantiles(oi, pi) = r.quantile;
    path.realized(oi) = r.realized;
  }
  if (!path.quantiles.allFinite())
    throw SchemaError("file '" + file + "': incomplete quantile grid");
  return path;
}

}  // namespace gar
