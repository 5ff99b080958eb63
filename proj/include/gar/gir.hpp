#ifndef GAR_GIR_HPP
#define GAR_GIR_HPP

#include <functional>
#include <string>
#include <vector>

#include "gar/sampler.hpp"

namespace gar {

// Joint-distribution test of the sampler (Geweke-style): a
// marginal-conditional simulator draws (parameters, data) from
// prior x likelihood; a successive-conditional simulator alternates one
// posterior sweep with a data redraw. If every full-conditional update is
// correct, both target the same joint law, so the two sets of draws must
// agree in distribution.
struct GettingItRightConfig {
  Eigen::Index num_obs = 24;
  Eigen::Index draws = 20000;
  int warmup = 500;  // successive-conditional warmup, discarded, adaptive
  std::uint64_t seed = 1;
  double z_threshold = 4.0;
  SamplerConfig sampler;
};

struct GirEntry {
  std::string statistic;
  double mc_mean = 0.0, sc_mean = 0.0;
  double z_mean = 0.0;  // first-moment comparison
  double z_var = 0.0;   // second-moment comparison
};

struct GirReport {
  std::vector<GirEntry> entries;
  Eigen::Index draws_per_simulator = 0;
  double z_threshold = 4.0;
  int num_z = 0;
  int num_ok = 0;

  double fraction_ok() const {
    return num_z == 0 ? 1.0 : static_cast<double>(num_ok) / num_z;
  }
  bool passed(double required_fraction = 0.95) const {
    return fraction_ok() >= required_fraction;
  }
};

// `post_sweep_hook`, when set, mutates the successive-conditional chain after
// every sweep; test fixtures use it to inject deliberate corruption that the
// report must flag.
GirReport getting_it_right(
    const TvpSvModelSpec& spec, const GettingItRightConfig& cfg,
    const std::function<void(ModelParameters&, Rng&)>& post_sweep_hook = nullptr);

std::string to_text(const GirReport& report);

}  // namespace gar

#endif  // GAR_GIR_HPP
