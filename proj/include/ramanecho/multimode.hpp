#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "sequences.hpp"

namespace ramanecho {

// N ~ delta_opt / omega, both in the same frequency unit.
inline int channel_count(double delta_opt, double omega) {
  if (!(omega > 0.0)) throw ValidationError("channel_count: omega must be > 0");
  if (!(delta_opt >= omega)) throw ValidationError("sub-single-channel: delta_opt < omega");
  const double ratio = delta_opt / omega;
  // absorb representation error so exact ratios such as 4 GHz / 4 MHz land on the integer
  return static_cast<int>(std::floor(ratio * (1.0 + 1e-12)));
}

struct ChannelPlan {
  double delta_opt = 0.0;  // kHz
  double omega = 0.0;      // kHz
  int n_channels = 0;

  static ChannelPlan from_widths(double delta_opt, double omega) {
    return ChannelPlan{delta_opt, omega, channel_count(delta_opt, omega)};
  }

  void validate() const {
    if (n_channels < 1) throw ValidationError("ChannelPlan: n_channels must be >= 1");
    if (n_channels != channel_count(delta_opt, omega))
      throw ValidationError("ChannelPlan: n_channels must equal floor(delta_opt / omega)");
  }
};

// Per-channel changes to the rephasing pulses of the base scenario.
struct ChannelOverride {
  std::optional<double> rephase_area;  // rad
  std::optional<double> ratio_p;
  std::optional<double> ratio_c;
};

// Channels are independent copies of the scenario; reports are ordered by
// channel index.
inline std::vector<EfficiencyReport> run_multichannel(const ChannelPlan& plan, const ScenarioSpec& scenario,
                                                      const std::vector<ChannelOverride>& overrides = {},
                                                      unsigned threads = default_thread_count()) {
  plan.validate();
  if (overrides.size() > static_cast<std::size_t>(plan.n_channels))
    throw ValidationError("more channel overrides than channels");
  scenario.validate();

  const auto n = static_cast<std::size_t>(plan.n_channels);
  std::vector<ScenarioSpec> specs(n, scenario);
  for (std::size_t c = 0; c < overrides.size(); ++c) {
    const auto& o = overrides[c];
    if (o.rephase_area || o.ratio_p || o.ratio_c) set_rephasing(specs[c], o.rephase_area, o.ratio_p, o.ratio_c);
    specs[c].validate();
  }

  std::vector<EfficiencyReport> reports(n);
  const unsigned inner = n > 1 ? 1u : threads;
  parallel_for(
      n, threads, [&](std::size_t c) { reports[c] = analyze_scenario(specs[c], run_scenario(specs[c], inner)); },
      [](std::size_t c, std::exception_ptr e) {
        try {
          std::rethrow_exception(e);
        } catch (const NumericalError& err) {
          throw NumericalError("channel " + std::to_string(c) + ": " + err.what());
        } catch (const ValidationError& err) {
          throw ValidationError("channel " + std::to_string(c) + ": " + err.what());
        }
      });
  return reports;
}

}  // namespace ramanecho
