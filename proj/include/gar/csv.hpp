#ifndef GAR_CSV_HPP
#define GAR_CSV_HPP

#include <string>
#include <vector>

#include "gar/dataset.hpp"
#include "gar/time_series.hpp"

namespace gar {

// Input CSV conventions: header row; first column `date` (YYYY-Qn for
// quarterly files, YYYY for annual files); remaining columns named numeric
// series. Decimal point, no thousands separators, UTF-8. A column may start
// later or end earlier than the file's date range (empty leading/trailing
// cells); internal gaps are rejected.

std::vector<QuarterlySeries> load_quarterly_csv(const std::string& path);
std::vector<AnnualSeries> load_annual_csv(const std::string& path);

QuarterlySeries find_series(const std::vector<QuarterlySeries>& all,
                            const std::string& name, const std::string& path);
AnnualSeries find_series(const std::vector<AnnualSeries>& all,
                         const std::string& name, const std::string& path);

void save_quarterly_csv(const std::string& path,
                        const std::vector<QuarterlySeries>& series);

// A dataset serializes as two files: `path` holds the estimation rows
// (date, target, regressors), `future_path` the trailing forecast-only rows
// (date, regressors). The second file may be absent on load.
void save_dataset(const RegressionDataset& ds, const std::string& path,
                  const std::string& future_path);
RegressionDataset load_dataset(const std::string& path,
                               const std::string& future_path, int horizon);

// Shortest round-trippable decimal representation used by all writers.
std::string format_double(double v);

}  // namespace gar

#endif  // GAR_CSV_HPP
