#ifndef GAR_YEAR_QUARTER_HPP
#define GAR_YEAR_QUARTER_HPP

#include <compare>
#include <cstdio>
#include <string>

#include "gar/errors.hpp"

namespace gar {

// Calendar quarter, stored as a flat index so that arithmetic in quarters is
// plain integer arithmetic. Serializes as "YYYY-Qn".
class YearQuarter {
 public:
  YearQuarter() = default;
  YearQuarter(int year, int quarter) : index_(year * 4 + (quarter - 1)) {
    if (quarter < 1 || quarter > 4)
      throw DomainError("quarter must be in 1..4, got " + std::to_string(quarter));
  }

  static YearQuarter from_index(int index) {
    YearQuarter yq;
    yq.index_ = index;
    return yq;
  }

  // Parses "YYYY-Qn" (also accepts "YYYYQn").
  static YearQuarter parse(const std::string& token) {
    int year = 0, q = 0;
    if (std::sscanf(token.c_str(), "%d-Q%d", &year, &q) == 2 ||
        std::sscanf(token.c_str(), "%dQ%d", &year, &q) == 2) {
      return YearQuarter(year, q);
    }
    throw InputError("cannot parse year-quarter token '" + token + "' (expected YYYY-Qn)");
  }

  int year() const { return index_ >= 0 ? index_ / 4 : -((-index_ + 3) / 4); }
  int quarter() const { return index_ - year() * 4 + 1; }
  int index() const { return index_; }

  YearQuarter operator+(int quarters) const { return from_index(index_ + quarters); }
  YearQuarter operator-(int quarters) const { return from_index(index_ - quarters); }
  int operator-(const YearQuarter& other) const { return index_ - other.index_; }
  YearQuarter& operator+=(int quarters) {
    index_ += quarters;
    return *this;
  }

  auto operator<=>(const YearQuarter&) const = default;

  std::string str() const {
    return std::to_string(year()) + "-Q" + std::to_string(quarter());
  }

 private:
  int index_ = 0;
};

// Closed date range [first, last]; used for sub-period definitions and masks.
struct QuarterRange {
  YearQuarter first;
  YearQuarter last;

  bool contains(const YearQuarter& q) const { return first <= q && q <= last; }
};

}  // namespace gar

#endif  // GAR_YEAR_QUARTER_HPP
