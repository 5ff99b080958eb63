#ifndef GAR_CONFIG_HPP
#define GAR_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gar/errors.hpp"
#include "gar/year_quarter.hpp"

namespace gar {

// Flat `key = value` configuration grouped into `[section]`s. Lines starting
// with '#' or ';' are comments. Every model, prior, sampler and run default
// is overridable by key.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& section, const std::string& key,
                           std::uint64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  YearQuarter get_quarter(const std::string& section, const std::string& key) const;
  YearQuarter get_quarter(const std::string& section, const std::string& key,
                          YearQuarter fallback) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                      const std::vector<double>& fallback) const;
  std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                const std::vector<int>& fallback) const;
  std::vector<std::string> get_string_list(const std::string& section,
                                           const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  // Serialized `[section] key = value` text of the effective map, usable as a
  // config echo in run manifests.
  std::string to_text() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::string raw(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_;
};

}  // namespace gar

#endif  // GAR_CONFIG_HPP
