#include "gar/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gar/csv.hpp"
#include "gar/stats.hpp"

namespace gar {

namespace {

// Greedy independent-column selection in the given order, so ties resolve in
// favor of earlier columns (the intercept survives a constant-regressor tie).
std::vector<Eigen::Index> select_columns(const Eigen::MatrixXd& x, double rel_tol) {
  std::vector<Eigen::Index> keep;
  Eigen::MatrixXd basis(x.rows(), x.cols());
  Eigen::Index nb = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    Eigen::VectorXd r = x.col(j);
    const double norm0 = r.norm();
    for (Eigen::Index b = 0; b < nb; ++b) r -= basis.col(b).dot(r) * basis.col(b);
    // re-orthogonalize once for numerical safety
    for (Eigen::Index b = 0; b < nb; ++b) r -= basis.col(b).dot(r) * basis.col(b);
    if (r.norm() > rel_tol * std::max(norm0, 1.0)) {
      basis.col(nb++) = r / r.norm();
      keep.push_back(j);
    }
  }
  return keep;
}

}  // namespace

const WindowSummary* DecompositionResult::find(const YearQuarter& window_end) const {
  for (const auto& w : windows)
    if (w.window_end == window_end) return &w;
  return nullptr;
}

DecompositionResult linear_posterior_summary(const QuantilePath& quantiles,
                                             const RegressionDataset& data, double prob,
                                             const DecompositionOptions& options) {
  const auto pit = std::find(quantiles.probs.begin(), quantiles.probs.end(), prob);
  if (pit == quantiles.probs.end())
    throw ParameterError("linear_posterior_summary: prob not present in path");
  const Eigen::Index pcol = pit - quantiles.probs.begin();

  const Eigen::Index k = data.cols();
  const int window = options.window;
  if (window < k + 2)
    throw ParameterError("linear_posterior_summary: window must be >= K + 2");
  const Eigen::Index n_path = static_cast<Eigen::Index>(quantiles.origins.size());
  if (n_path < window)
    throw LengthError("linear_posterior_summary: fewer path origins than the window");

  DecompositionResult result;
  result.horizon = quantiles.horizon;
  result.prob = prob;
  result.window = window;
  result.column_names = data.column_names();

  // Regressor rows aligned with the path origins.
  Eigen::MatrixXd xq(n_path, k);
  for (Eigen::Index i = 0; i < n_path; ++i)
    xq.row(i) = data.x().row(data.index_of(quantiles.origins[i]));

  for (Eigen::Index end = window - 1; end < n_path; ++end) {
    const Eigen::Index lo = end - window + 1;
    const Eigen::MatrixXd xw = xq.middleRows(lo, window);
    const Eigen::VectorXd qw = quantiles.quantiles.col(pcol).segment(lo, window);

    WindowSummary w;
    w.window_end = quantiles.origins[static_cast<std::size_t>(end)];
    w.model_quantile = quantiles.quantiles(end, pcol);
    w.coefficients = Eigen::VectorXd::Zero(k);
    w.std_errors =
        Eigen::VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
    w.significant.assign(k, false);
    w.contributions = Eigen::VectorXd::Zero(k);

    const std::vector<Eigen::Index> keep = select_columns(xw, 1e-8);
    const Eigen::Index ke = static_cast<Eigen::Index>(keep.size());
    w.rank_deficient = ke < k;
    if (w.rank_deficient)
      for (Eigen::Index j = 0; j < k; ++j)
        if (std::find(keep.begin(), keep.end(), j) == keep.end())
          w.dropped_columns.push_back(data.column_names()[j]);
    if (ke == 0 || window - ke < 1) {
      // nothing estimable; flag and skip
      result.windows.push_back(std::move(w));
      continue;
    }

    Eigen::MatrixXd xs(window, ke);
    for (Eigen::Index j = 0; j < ke; ++j) xs.col(j) = xw.col(keep[j]);

    const Eigen::MatrixXd xtx = xs.transpose() * xs;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
    const Eigen::VectorXd coef = ldlt.solve(xs.transpose() * qw);
    const Eigen::VectorXd resid = qw - xs * coef;
    const double rss = resid.squaredNorm();
    const double df = static_cast<double>(window - ke);

    Eigen::MatrixXd cov;
    if (!options.hac) {
      const double sigma2 = rss / df;
      cov = sigma2 * ldlt.solve(Eigen::MatrixXd::Identity(ke, ke));
    } else {
      // Newey-West with Bartlett weights.
      const Eigen::MatrixXd xtx_inv = ldlt.solve(Eigen::MatrixXd::Identity(ke, ke));
      Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(ke, ke);
      for (Eigen::Index t = 0; t < window; ++t)
        meat += resid[t] * resid[t] * xs.row(t).transpose() * xs.row(t);
      for (int lag = 1; lag <= options.hac_lags; ++lag) {
        const double wgt = 1.0 - static_cast<double>(lag) / (options.hac_lags + 1.0);
        for (Eigen::Index t = lag; t < window; ++t) {
          const Eigen::MatrixXd g =
              resid[t] * resid[t - lag] * xs.row(t).transpose() * xs.row(t - lag);
          meat += wgt * (g + g.transpose());
        }
      }
      cov = xtx_inv * meat * xtx_inv * (static_cast<double>(window) / df);
    }

    const double tcrit = student_t_critical(df, options.significance_level);
    const Eigen::VectorXd x_end = xw.row(window - 1).transpose();
    double fitted = 0.0;
    for (Eigen::Index j = 0; j < ke; ++j) {
      const Eigen::Index col = keep[j];
      w.coefficients[col] = coef[j];
      const double se = std::sqrt(std::max(cov(j, j), 0.0));
      w.std_errors[col] = se;
      w.significant[col] = se > 0.0 && std::abs(coef[j] / se) > tcrit;
      w.contributions[col] = coef[j] * x_end[col];
      fitted += w.contributions[col];
    }
    w.fitted = fitted;

    const double q_mean = qw.mean();
    const double tss = (qw.array() - q_mean).square().sum();
    w.r_squared = tss > 1e-300 ? 1.0 - rss / tss : (rss < 1e-12 ? 1.0 : 0.0);

    result.windows.push_back(std::move(w));
  }
  return result;
}

std::vector<LocalProjectionRow> local_projections(
    const std::map<int, DecompositionResult>& results,
    const std::vector<YearQuarter>& dates) {
  if (results.empty()) throw ParameterError("local_projections: no decompositions");
  std::string gaps;
  std::vector<LocalProjectionRow> rows;
  for (const auto& date : dates) {
    for (const auto& [h, res] : results) {
      const WindowSummary* w = res.find(date);
      if (!w) {
        gaps += (gaps.empty() ? "" : ", ") + date.str() + "@h" + std::to_string(h);
        continue;
      }
      for (Eigen::Index j = 0; j < w->coefficients.size(); ++j) {
        LocalProjectionRow r;
        r.date = date;
        r.horizon = h;
        r.regressor = res.column_names[j];
        r.coefficient = w->coefficients[j];
        r.std_error = w->std_errors[j];
        r.significant = w->significant[j];
        rows.push_back(r);
      }
    }
  }
  if (!gaps.empty())
    throw ParameterError("local_projections: missing decompositions for: " + gaps);
  return rows;
}

void save_decomposition_csv(const DecompositionResult& result, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "window_end,horizon,prob,regressor,coefficient,se,significant,"
         "contribution,fitted,model_quantile\n";
  for (const auto& w : result.windows) {
    for (Eigen::Index j = 0; j < w.coefficients.size(); ++j) {
      out << w.window_end.str() << "," << result.horizon << ","
          << format_double(result.prob) << "," << result.column_names[j] << ","
          << format_double(w.coefficients[j]) << ","
          << (std::isfinite(w.std_errors[j]) ? format_double(w.std_errors[j])
                                             : std::string())
          << "," << (w.significant[j] ? 1 : 0) << ","
          << format_double(w.contributions[j]) << "," << format_double(w.fitted)
          << "," << format_double(w.model_quantile) << "\n";
    }
  }
}

void save_local_projections_csv(const std::vector<LocalProjectionRow>& rows,
                                double prob, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "date,horizon,prob,regressor,coefficient,se,significant\n";
  for (const auto& r : rows)
    out << r.date.str() << "," << r.horizon << "," << format_double(prob) << ","
        << r.regressor << "," << format_double(r.coefficient) << ","
        << (std::isfinite(r.std_error) ? format_double(r.std_error) : std::string())
        << "," << (r.significant ? 1 : 0) << "\n";
}

}  // namespace gar
