#include "gar/quantreg.hpp"

#include <cmath>
#include <fstream>

#include "gar/csv.hpp"

namespace gar {

namespace {

double objective_sum(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& b, double tau) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    s += pinball_loss(y[i] - x.row(i).dot(b), tau);
  return s;
}

// Names the columns a pivoted QR leaves outside the independent set.
void check_full_rank(const Eigen::MatrixXd& x,
                     const std::vector<std::string>& column_names) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  if (rank == x.cols()) return;
  std::string collinear;
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index i = rank; i < x.cols(); ++i) {
    const Eigen::Index col = perm[i];
    if (!collinear.empty()) collinear += ", ";
    collinear += column_names.empty() ? ("column " + std::to_string(col))
                                      : column_names[col];
  }
  throw DomainError("quantile regression: design is rank deficient; collinear: " +
                    collinear);
}

}  // namespace

QuantileFit fit_quantile_regression(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                    double tau,
                                    const std::vector<std::string>& column_names,
                                    const QuantRegOptions& options) {
  if (!(tau > 0.0 && tau < 1.0))
    throw ParameterError("fit_quantile_regression: tau must be in (0,1)");
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (n != y.size()) throw ShapeError("fit_quantile_regression: row mismatch");
  if (n < k + 1)
    throw LengthError("fit_quantile_regression: need at least K+1 observations");
  check_full_rank(x, column_names);

  // Start from least squares, then reweight with the smoothed check-function
  // weights while the smoothing parameter shrinks to its floor.
  Eigen::VectorXd b = (x.transpose() * x).ldlt().solve(x.transpose() * y);
  int iterations = 0;
  double delta = 1.0;
  while (true) {
    bool converged = false;
    while (!converged && iterations < options.max_iterations) {
      ++iterations;
      Eigen::MatrixXd xtwx = Eigen::MatrixXd::Zero(k, k);
      Eigen::VectorXd xtwy = Eigen::VectorXd::Zero(k);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double u = y[i] - x.row(i).dot(b);
        const double omega = (u > 0.0) ? tau : (u < 0.0 ? 1.0 - tau : 0.5);
        const double w = omega / std::sqrt(u * u + delta * delta);
        xtwx.selfadjointView<Eigen::Lower>().rankUpdate(x.row(i).transpose(), w);
        xtwy += w * y[i] * x.row(i).transpose();
      }
      xtwx = xtwx.selfadjointView<Eigen::Lower>();
      xtwx.diagonal().array() += 1e-12;
      const Eigen::VectorXd b_new = xtwx.ldlt().solve(xtwy);
      converged = (b_new - b).cwiseAbs().maxCoeff() < 1e-2 * delta;
      b = b_new;
    }
    if (delta <= options.smoothing_floor || iterations >= options.max_iterations)
      break;
    delta = std::max(delta * 0.1, options.smoothing_floor);
  }

  QuantileFit fit;
  fit.tau = tau;
  fit.coefficients = b;
  fit.objective = objective_sum(x, y, b, tau);
  fit.column_names = column_names;
  return fit;
}

QuantileFit fit_quantile_regression(const RegressionDataset& data, double tau,
                                    const QuantRegOptions& options) {
  return fit_quantile_regression(data.x_head(data.target_rows()),
                                 data.y_head(data.target_rows()), tau,
                                 data.column_names(), options);
}

QuantileFit fit_quantile_regression_enumerate(const Eigen::MatrixXd& x,
                                              const Eigen::VectorXd& y, double tau) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (n > 50)
    throw ParameterError("fit_quantile_regression_enumerate: limited to n <= 50");
  if (n < k) throw LengthError("fit_quantile_regression_enumerate: n < K");

  std::vector<Eigen::Index> idx(k);
  for (Eigen::Index j = 0; j < k; ++j) idx[j] = j;

  QuantileFit best;
  best.tau = tau;
  best.objective = std::numeric_limits<double>::infinity();

  // Walk all K-subsets in lexicographic order.
  while (true) {
    Eigen::MatrixXd xs(k, k);
    Eigen::VectorXd ys(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      xs.row(j) = x.row(idx[j]);
      ys[j] = y[idx[j]];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(xs);
    if (lu.isInvertible()) {
      const Eigen::VectorXd b = lu.solve(ys);
      const double obj = objective_sum(x, y, b, tau);
      if (obj < best.objective) {
        best.objective = obj;
        best.coefficients = b;
      }
    }
    // next combination
    Eigen::Index pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (Eigen::Index j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!best.coefficients.size())
    throw DomainError("fit_quantile_regression_enumerate: no invertible K-subset");
  return best;
}

double predict_quantile(const QuantileFit& fit, const Eigen::VectorXd& x) {
  if (x.size() != fit.coefficients.size())
    throw ShapeError("predict_quantile: dimension mismatch");
  return fit.coefficients.dot(x);
}

QuantilePath recursive_qr_forecast(const RegressionDataset& data,
                                   const std::vector<double>& probs,
                                   YearQuarter start_origin, int min_train,
                                   const QuantRegOptions& options) {
  const int h = data.horizon();
  std::vector<double> sorted_probs = probs;
  std::sort(sorted_probs.begin(), sorted_probs.end());

  const Eigen::Index first = data.index_of(start_origin);
  if (first - h + 1 < min_train)
    throw ConfigError("recursive_qr_forecast: start origin leaves fewer than " +
                      std::to_string(min_train) + " training rows");
  const Eigen::Index n_origins = data.rows() - first;

  QuantilePath path;
  path.horizon = h;
  path.probs = sorted_probs;
  path.origins.assign(data.origins().begin() + first, data.origins().end());
  path.quantiles.resize(n_origins, static_cast<Eigen::Index>(sorted_probs.size()));
  path.realized.setConstant(n_origins, std::numeric_limits<double>::quiet_NaN());

  for (Eigen::Index i = 0; i < n_origins; ++i) {
    const Eigen::Index origin_row = first + i;
    const Eigen::Index n_train = origin_row - h + 1;
    for (std::size_t p = 0; p < sorted_probs.size(); ++p) {
      const QuantileFit fit =
          fit_quantile_regression(data.x_head(n_train), data.y_head(n_train),
                                  sorted_probs[p], data.column_names(), options);
      path.quantiles(i, static_cast<Eigen::Index>(p)) =
          predict_quantile(fit, data.x().row(origin_row).transpose());
    }
    if (origin_row < data.target_rows()) path.realized[i] = data.targets()[origin_row];
  }
  return path;
}

void save_quantile_fits_csv(const std::vector<QuantileFit>& fits,
                            const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "tau,coefficient,value\n";
  for (const auto& fit : fits) {
    for (Eigen::Index j = 0; j < fit.coefficients.size(); ++j) {
      const std::string name = fit.column_names.empty()
                                   ? "b" + std::to_string(j)
                                   : fit.column_names[j];
      out << format_double(fit.tau) << "," << name << ","
          << format_double(fit.coefficients[j]) << "\n";
    }
  }
}

}  // namespace gar
