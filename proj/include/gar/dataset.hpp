#ifndef GAR_DATASET_HPP
#define GAR_DATASET_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gar/errors.hpp"
#include "gar/year_quarter.hpp"

namespace gar {

// Aligned design matrix and direct-horizon targets for one forecast horizon.
// Row i pairs the regressor vector observed at origins[i] with the target
// y_{t+h} realized `horizon` quarters later. The trailing rows whose target
// is not yet observed carry regressors only (forecast-only rows); they are
// exactly the rows with index >= target_rows().
class RegressionDataset {
 public:
  RegressionDataset() = default;
  RegressionDataset(int horizon, std::vector<YearQuarter> origins,
                    Eigen::MatrixXd x, Eigen::VectorXd targets,
                    std::vector<std::string> column_names)
      : horizon_(horizon),
        origins_(std::move(origins)),
        x_(std::move(x)),
        y_(std::move(targets)),
        column_names_(std::move(column_names)) {
    validate();
  }

  int horizon() const { return horizon_; }
  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index cols() const { return x_.cols(); }
  Eigen::Index target_rows() const { return y_.size(); }
  Eigen::Index forecast_only_rows() const { return rows() - target_rows(); }
  bool is_forecast_only(Eigen::Index i) const { return i >= y_.size(); }

  const std::vector<YearQuarter>& origins() const { return origins_; }
  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::VectorXd& targets() const { return y_; }
  const std::vector<std::string>& column_names() const { return column_names_; }

  // Estimation slice using the first `n` target rows.
  Eigen::Block<const Eigen::MatrixXd> x_head(Eigen::Index n) const {
    return x_.topRows(n);
  }
  Eigen::VectorBlock<const Eigen::VectorXd> y_head(Eigen::Index n) const {
    return y_.head(n);
  }

  Eigen::Index index_of(const YearQuarter& origin) const {
    if (origins_.empty() || origin < origins_.front() || origin > origins_.back())
      throw DomainError("origin " + origin.str() + " outside dataset support");
    return origin - origins_.front();
  }

 private:
  void validate() const {
    if (horizon_ < 1) throw ParameterError("horizon must be >= 1");
    if (static_cast<Eigen::Index>(origins_.size()) != x_.rows())
      throw ShapeError("origin count does not match design rows");
    if (y_.size() > x_.rows())
      throw ShapeError("more targets than design rows");
    if (x_.cols() < 2)
      throw ShapeError("need at least intercept plus one predictor (K >= 2)");
    if (static_cast<Eigen::Index>(column_names_.size()) != x_.cols())
      throw ShapeError("column name count does not match design columns");
    if (!x_.allFinite() || !y_.allFinite())
      throw InputError("dataset contains non-finite entries");
    for (std::size_t i = 1; i < origins_.size(); ++i)
      if (origins_[i] - origins_[i - 1] != 1)
        throw AlignmentError("origins are not consecutive quarters");
  }

  int horizon_ = 1;
  std::vector<YearQuarter> origins_;
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  std::vector<std::string> column_names_;
};

}  // namespace gar

#endif  // GAR_DATASET_HPP
