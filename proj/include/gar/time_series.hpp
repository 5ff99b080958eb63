#ifndef GAR_TIME_SERIES_HPP
#define GAR_TIME_SERIES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "gar/errors.hpp"
#include "gar/year_quarter.hpp"

namespace gar {

// Date-indexed quarterly observations of one variable; quarters are
// consecutive with no gaps and all values finite.
class QuarterlySeries {
 public:
  QuarterlySeries() = default;
  QuarterlySeries(std::string name, YearQuarter start, Eigen::VectorXd values)
      : name_(std::move(name)), start_(start), values_(std::move(values)) {
    if (values_.size() < 1) throw LengthError("series '" + name_ + "' is empty");
    if (!values_.allFinite())
      throw InputError("series '" + name_ + "' contains non-finite values");
  }

  const std::string& name() const { return name_; }
  YearQuarter start() const { return start_; }
  YearQuarter end() const { return start_ + static_cast<int>(values_.size()) - 1; }
  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }

  double operator[](Eigen::Index i) const { return values_[i]; }
  double at(const YearQuarter& q) const {
    const int offset = q - start_;
    if (offset < 0 || offset >= values_.size())
      throw DomainError("series '" + name_ + "' has no value at " + q.str());
    return values_[offset];
  }
  bool covers(const YearQuarter& q) const {
    const int offset = q - start_;
    return offset >= 0 && offset < values_.size();
  }

  QuarterlySeries renamed(std::string new_name) const {
    return QuarterlySeries(std::move(new_name), start_, values_);
  }

 private:
  std::string name_;
  YearQuarter start_{1900, 1};
  Eigen::VectorXd values_;
};

// Annual observations; consecutive years, finite values.
class AnnualSeries {
 public:
  AnnualSeries() = default;
  AnnualSeries(std::string name, int start_year, Eigen::VectorXd values)
      : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
    if (values_.size() < 1) throw LengthError("series '" + name_ + "' is empty");
    if (!values_.allFinite())
      throw InputError("series '" + name_ + "' contains non-finite values");
  }

  const std::string& name() const { return name_; }
  int start_year() const { return start_year_; }
  int end_year() const { return start_year_ + static_cast<int>(values_.size()) - 1; }
  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](Eigen::Index i) const { return values_[i]; }

 private:
  std::string name_;
  int start_year_ = 1900;
  Eigen::VectorXd values_;
};

}  // namespace gar

#endif  // GAR_TIME_SERIES_HPP
