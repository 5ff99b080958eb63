#include "gar/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gar {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
      cell.pop_back();
    std::size_t b = 0;
    while (b < cell.size() && cell[b] == ' ') ++b;
    out.push_back(cell.substr(b));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& cell, const std::string& path,
                    std::size_t row, const std::string& column) {
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw SchemaError("file '" + path + "', column '" + column + "', row " +
                      std::to_string(row) + ": cannot parse numeric value '" +
                      cell + "'");
  return v;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  RawTable t;
  std::string line;
  if (!std::getline(in, line))
    throw SchemaError("file '" + path + "' is empty");
  t.header = split_line(line);
  if (t.header.empty() || t.header[0] != "date")
    throw SchemaError("file '" + path + "': first header column must be 'date'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != t.header.size())
      throw SchemaError("file '" + path + "', row " +
                        std::to_string(t.rows.size() + 2) + ": expected " +
                        std::to_string(t.header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  if (t.rows.empty()) throw SchemaError("file '" + path + "' has no data rows");
  return t;
}

// Extracts column j as (first_row_index, values), allowing leading and
// trailing blanks but no internal gaps.
std::pair<std::size_t, Eigen::VectorXd> extract_column(const RawTable& t,
                                                       std::size_t j,
                                                       const std::string& path) {
  const std::string& col = t.header[j];
  std::size_t first = 0;
  while (first < t.rows.size() && t.rows[first][j].empty()) ++first;
  std::size_t last = t.rows.size();
  while (last > first && t.rows[last - 1][j].empty()) --last;
  if (first == last)
    throw SchemaError("file '" + path + "': column '" + col + "' is entirely empty");
  Eigen::VectorXd v(static_cast<Eigen::Index>(last - first));
  for (std::size_t r = first; r < last; ++r) {
    if (t.rows[r][j].empty())
      throw SchemaError("file '" + path + "', column '" + col + "', row " +
                        std::to_string(r + 2) + ": internal gap");
    v[static_cast<Eigen::Index>(r - first)] = parse_double(t.rows[r][j], path, r + 2, col);
  }
  return {first, std::move(v)};
}

}  // namespace

std::vector<QuarterlySeries> load_quarterly_csv(const std::string& path) {
  const RawTable t = read_table(path);
  std::vector<YearQuarter> dates;
  dates.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    dates.push_back(YearQuarter::parse(t.rows[r][0]));
    if (r > 0 && dates[r] - dates[r - 1] != 1)
      throw SchemaError("file '" + path + "', row " + std::to_string(r + 2) +
                        ": dates are not consecutive quarters");
  }
  std::vector<QuarterlySeries> out;
  for (std::size_t j = 1; j < t.header.size(); ++j) {
    auto [first, values] = extract_column(t, j, path);
    out.emplace_back(t.header[j], dates[first], std::move(values));
  }
  return out;
}

std::vector<AnnualSeries> load_annual_csv(const std::string& path) {
  const RawTable t = read_table(path);
  std::vector<int> years;
  years.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    int y = 0;
    const auto& cell = t.rows[r][0];
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), y);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw SchemaError("file '" + path + "', row " + std::to_string(r + 2) +
                        ": cannot parse year '" + cell + "'");
    years.push_back(y);
    if (r > 0 && years[r] - years[r - 1] != 1)
      throw SchemaError("file '" + path + "', row " + std::to_string(r + 2) +
                        ": years are not consecutive");
  }
  std::vector<AnnualSeries> out;
  for (std::size_t j = 1; j < t.header.size(); ++j) {
    auto [first, values] = extract_column(t, j, path);
    out.emplace_back(t.header[j], years[first], std::move(values));
  }
  return out;
}

QuarterlySeries find_series(const std::vector<QuarterlySeries>& all,
                            const std::string& name, const std::string& path) {
  for (const auto& s : all)
    if (s.name() == name) return s;
  throw SchemaError("file '" + path + "' has no column named '" + name + "'");
}

AnnualSeries find_series(const std::vector<AnnualSeries>& all,
                         const std::string& name, const std::string& path) {
  for (const auto& s : all)
    if (s.name() == name) return s;
  throw SchemaError("file '" + path + "' has no column named '" + name + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_quarterly_csv(const std::string& path,
                        const std::vector<QuarterlySeries>& series) {
  if (series.empty()) throw ParameterError("save_quarterly_csv: no series");
  YearQuarter first = series[0].start();
  YearQuarter last = series[0].end();
  for (const auto& s : series) {
    first = std::min(first, s.start());
    last = std::max(last, s.end());
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << "date";
  for (const auto& s : series) out << "," << s.name();
  out << "\n";
  for (YearQuarter q = first; q <= last; q += 1) {
    out << q.str();
    for (const auto& s : series) {
      out << ",";
      if (s.covers(q)) out << format_double(s.at(q));
    }
    out << "\n";
  }
}

void save_dataset(const RegressionDataset& ds, const std::string& path,
                  const std::string& future_path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << "date,target";
  for (const auto& c : ds.column_names()) out << "," << c;
  out << "\n";
  for (Eigen::Index i = 0; i < ds.target_rows(); ++i) {
    out << ds.origins()[i].str() << "," << format_double(ds.targets()[i]);
    for (Eigen::Index j = 0; j < ds.cols(); ++j)
      out << "," << format_double(ds.x()(i, j));
    out << "\n";
  }
  std::ofstream fut(future_path);
  if (!fut) throw InputError("cannot write file '" + future_path + "'");
  fut << "date";
  for (const auto& c : ds.column_names()) fut << "," << c;
  fut << "\n";
  for (Eigen::Index i = ds.target_rows(); i < ds.rows(); ++i) {
    fut << ds.origins()[i].str();
    for (Eigen::Index j = 0; j < ds.cols(); ++j)
      fut << "," << format_double(ds.x()(i, j));
    fut << "\n";
  }
}

RegressionDataset load_dataset(const std::string& path,
                               const std::string& future_path, int horizon) {
  const RawTable t = read_table(path);
  if (t.header.size() < 4 || t.header[1] != "target")
    throw SchemaError("file '" + path +
                      "': expected header date,target,<regressors...>");
  std::vector<std::string> names(t.header.begin() + 2, t.header.end());
  const Eigen::Index k = static_cast<Eigen::Index>(names.size());

  std::vector<YearQuarter> origins;
  std::vector<double> targets;
  std::vector<double> xs;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    origins.push_back(YearQuarter::parse(t.rows[r][0]));
    targets.push_back(parse_double(t.rows[r][1], path, r + 2, "target"));
    for (Eigen::Index j = 0; j < k; ++j)
      xs.push_back(parse_double(t.rows[r][2 + j], path, r + 2, names[j]));
  }

  if (std::filesystem::exists(future_path)) {
    const RawTable f = read_table(future_path);
    if (f.header.size() != t.header.size() - 1)
      throw SchemaError("file '" + future_path +
                        "': regressor columns do not match '" + path + "'");
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
      origins.push_back(YearQuarter::parse(f.rows[r][0]));
      for (Eigen::Index j = 0; j < k; ++j)
        xs.push_back(parse_double(f.rows[r][1 + j], future_path, r + 2, names[j]));
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(origins.size());
  Eigen::MatrixXd x(n, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) x(i, j) = xs[i * k + j];
  Eigen::VectorXd y =
      Eigen::Map<Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  return RegressionDataset(horizon, std::move(origins), std::move(x), std::move(y),
                           std::move(names));
}

}  // namespace gar
