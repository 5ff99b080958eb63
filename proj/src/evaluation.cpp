#include "gar/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gar/csv.hpp"
#include "gar/stats.hpp"

namespace gar {

ScoreSeries score_quantile_path(const QuantilePath& path, double prob,
                                const std::string& model_id) {
  const auto it = std::find(path.probs.begin(), path.probs.end(), prob);
  if (it == path.probs.end())
    throw ParameterError("score_quantile_path: prob " + std::to_string(prob) +
                         " not in path");
  const Eigen::Index col = it - path.probs.begin();

  ScoreSeries s;
  s.model = model_id;
  s.horizon = path.horizon;
  s.tau = prob;
  std::vector<double> scores;
  for (std::size_t i = 0; i < path.origins.size(); ++i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    if (!path.has_realized(row)) continue;
    s.origins.push_back(path.origins[i]);
    scores.push_back(quantile_score(path.quantiles(row, col), path.realized[row], prob));
  }
  s.scores = Eigen::Map<Eigen::VectorXd>(scores.data(),
                                         static_cast<Eigen::Index>(scores.size()));
  return s;
}

PeriodSet PeriodSet::from_config(const Config& cfg) {
  PeriodSet p;
  p.ww1_start = cfg.get_quarter("periods", "ww1_start", p.ww1_start);
  p.ww1_end = cfg.get_quarter("periods", "ww1_end", p.ww1_end);
  p.ww2_start = cfg.get_quarter("periods", "ww2_start", p.ww2_start);
  p.ww2_end = cfg.get_quarter("periods", "ww2_end", p.ww2_end);
  p.gm_start = cfg.get_quarter("periods", "gm_start", p.gm_start);
  p.exclusion_years = cfg.get_int("periods", "exclusion_years", p.exclusion_years);
  return p;
}

namespace {
const YearQuarter kFarPast(1, 1);
const YearQuarter kFarFuture(9999, 4);
}  // namespace

PeriodMask PeriodSet::pre_ww2() const {
  return {"pre_ww2", {kFarPast, ww2_start - 1}, {}};
}

PeriodMask PeriodSet::post_ww2() const {
  return {"post_ww2", {ww2_end + 1, kFarFuture}, {}};
}

PeriodMask PeriodSet::full() const { return {"full", {kFarPast, kFarFuture}, {}}; }

std::vector<PeriodMask> PeriodSet::dispersion_periods() const {
  const std::vector<QuarterRange> wars{ww1_excluded(), ww2_excluded()};
  return {
      {"pre_ww1", {kFarPast, ww1_start - 1}, wars},
      {"interwar", {ww1_end + 1, ww2_start - 1}, wars},
      {"pre_gm", {ww2_end + 1, gm_start - 1}, wars},
      {"since_gm", {gm_start, kFarFuture}, wars},
  };
}

namespace {

// Masked means with alignment checks shared by the relative-score helpers.
std::pair<double, int> masked_mean(const ScoreSeries& s, const PeriodMask& mask) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < s.origins.size(); ++i) {
    if (!mask.contains(s.origins[i])) continue;
    sum += s.scores[static_cast<Eigen::Index>(i)];
    ++n;
  }
  return {n ? sum / n : 0.0, n};
}

void check_aligned(const ScoreSeries& a, const ScoreSeries& b) {
  if (a.origins != b.origins)
    throw AlignmentError("score series '" + a.model + "' and '" + b.model +
                         "' have different origins");
}

}  // namespace

double relative_mean_score(const ScoreSeries& model, const ScoreSeries& baseline,
                           const PeriodMask& mask) {
  check_aligned(model, baseline);
  const auto [m_mean, m_n] = masked_mean(model, mask);
  const auto [b_mean, b_n] = masked_mean(baseline, mask);
  if (m_n == 0) throw LengthError("relative_mean_score: empty mask '" + mask.name + "'");
  if (!(b_mean > 0.0))
    throw DomainError("relative_mean_score: baseline mean is not positive in '" +
                      mask.name + "'");
  return m_mean / b_mean;
}

RecursiveMeanPath recursive_mean_path(const ScoreSeries& model,
                                      const ScoreSeries& baseline) {
  check_aligned(model, baseline);
  if (model.origins.empty()) throw LengthError("recursive_mean_path: empty series");
  RecursiveMeanPath out;
  out.origins = model.origins;
  out.ratio.resize(model.scores.size());
  double cm = 0.0, cb = 0.0;
  for (Eigen::Index i = 0; i < model.scores.size(); ++i) {
    cm += model.scores[i];
    cb += baseline.scores[i];
    if (!(cb > 0.0))
      throw DomainError("recursive_mean_path: cumulative baseline score is zero at " +
                        model.origins[static_cast<std::size_t>(i)].str());
    out.ratio[i] = cm / cb;
  }
  return out;
}

std::vector<DispersionEntry> tail_dispersion(const QuantilePath& path,
                                             const std::vector<PeriodMask>& periods) {
  std::vector<DispersionEntry> out;
  for (const auto& period : periods) {
    for (std::size_t p = 0; p < path.probs.size(); ++p) {
      DispersionEntry e;
      e.period = period.name;
      e.prob = path.probs[p];
      std::vector<double> vals;
      for (std::size_t i = 0; i < path.origins.size(); ++i)
        if (period.contains(path.origins[i]))
          vals.push_back(path.quantiles(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(p)));
      e.n = static_cast<int>(vals.size());
      if (vals.size() >= 2) {
        Eigen::Map<Eigen::VectorXd> v(vals.data(), static_cast<Eigen::Index>(vals.size()));
        e.sd = sd(v);
        e.ok = true;
      } else {
        e.sd = std::numeric_limits<double>::quiet_NaN();
        e.ok = false;
      }
      out.push_back(e);
    }
  }
  return out;
}

void save_evaluation_cells_csv(const std::vector<EvaluationCell>& cells,
                               const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "model,period,horizon,tau,mean_score,relative,n\n";
  for (const auto& c : cells)
    out << c.model << "," << c.period << "," << c.horizon << ","
        << format_double(c.tau) << "," << format_double(c.mean_score) << ","
        << format_double(c.relative) << "," << c.n << "\n";
}

void save_dispersion_csv(const std::vector<DispersionEntry>& entries, int horizon,
                         const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "period,horizon,prob,sd,n,ok\n";
  for (const auto& e : entries)
    out << e.period << "," << horizon << "," << format_double(e.prob) << ","
        << (e.ok ? format_double(e.sd) : std::string()) << "," << e.n << ","
        << (e.ok ? 1 : 0) << "\n";
}

void save_score_series_csv(const std::vector<ScoreSeries>& series,
                           const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "model,horizon,tau,origin,score\n";
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.origins.size(); ++i)
      out << s.model << "," << s.horizon << "," << format_double(s.tau) << ","
          << s.origins[i].str() << ","
          << format_double(s.scores[static_cast<Eigen::Index>(i)]) << "\n";
}

void save_recursive_mean_path_csv(const RecursiveMeanPath& path, int horizon,
                                  double tau, const std::string& model,
                                  const std::string& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write file '" + file + "'");
  out << "model,horizon,tau,origin,cumulative_relative_score\n";
  for (std::size_t i = 0; i < path.origins.size(); ++i)
    out << model << "," << horizon << "," << format_double(tau) << ","
        << path.origins[i].str() << ","
        << format_double(path.ratio[static_cast<Eigen::Index>(i)]) << "\n";
}

std::string format_relative_table(const std::vector<EvaluationCell>& cells,
                                  const std::string& baseline_id, double tau) {
  std::set<std::string> periods_seen;
  std::set<std::string> models_seen;
  std::set<int> horizons;
  for (const auto& c : cells) {
    if (std::abs(c.tau - tau) > 1e-12) continue;
    periods_seen.insert(c.period);
    horizons.insert(c.horizon);
    if (c.model != baseline_id) models_seen.insert(c.model);
  }
  std::vector<std::string> periods(periods_seen.begin(), periods_seen.end());
  std::vector<std::string> models(models_seen.begin(), models_seen.end());

  std::map<std::string, double> value;
  for (const auto& c : cells)
    if (std::abs(c.tau - tau) < 1e-12)
      value[c.period + "|" + c.model + "|" + std::to_string(c.horizon)] = c.relative;

  std::ostringstream out;
  out << "Quantile scores relative to " << baseline_id << " (tau = " << tau << ")\n";
  char buf[64];
  out << std::string(10, ' ');
  for (const auto& period : periods) {
    std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(models.size()) * 10,
                  period.c_str());
    out << "  " << buf;
  }
  out << "\n" << std::string(10, ' ');
  for (std::size_t pi = 0; pi < periods.size(); ++pi) {
    out << "  ";
    for (const auto& m : models) {
      std::snprintf(buf, sizeof(buf), "%-10s", m.c_str());
      out << buf;
    }
  }
  out << "\n";
  for (const int h : horizons) {
    std::snprintf(buf, sizeof(buf), "h=%-8d", h);
    out << buf;
    for (const auto& period : periods) {
      out << "  ";
      for (const auto& m : models) {
        const auto it = value.find(period + "|" + m + "|" + std::to_string(h));
        if (it == value.end())
          std::snprintf(buf, sizeof(buf), "%-10s", "-");
        else
          std::snprintf(buf, sizeof(buf), "%-10.3f", it->second);
        out << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace gar
