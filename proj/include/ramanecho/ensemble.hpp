#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "density_matrix.hpp"
#include "error.hpp"
#include "lambda_system.hpp"
#include "liouvillian.hpp"
#include "parallel.hpp"

namespace ramanecho {

// One detuning class of the inhomogeneously broadened spin ensemble.
struct SpinGroup {
  double delta = 0.0;  // kHz
  double weight = 1.0;

  bool operator==(const SpinGroup&) const = default;
};

// Gaussian broadening sampled on a symmetric grid.
struct EnsembleSpec {
  double fwhm = 100.0;  // kHz
  int group_count = 121;
  double step = 2.0;  // kHz

  void validate() const {
    if (group_count <= 0 || group_count % 2 == 0) throw ValidationError("EnsembleSpec: group_count must be odd");
    if (group_count == 1) {
      if (!(fwhm >= 0.0)) throw ValidationError("EnsembleSpec: fwhm must be >= 0");
      return;
    }
    if (!(step > 0.0)) throw ValidationError("EnsembleSpec: step must be > 0");
    if (!(fwhm > 0.0)) throw ValidationError("EnsembleSpec: fwhm must be > 0 for more than one group");
    if ((group_count - 1) * step < 2.0 * fwhm * (1.0 - 1e-12)) {
      throw ValidationError("EnsembleSpec: grid must span at least 2*fwhm");
    }
  }

  bool operator==(const EnsembleSpec&) const = default;
};

inline void normalize_weights(std::vector<SpinGroup>& groups) {
  CompensatedSum total;
  for (const auto& g : groups) total.add(g.weight);
  const double s = total.value();
  if (!(s > 0.0)) throw ValidationError("ensemble weights must have positive sum");
  for (auto& g : groups) g.weight /= s;
}

// delta_k = (k - (n-1)/2) * step, weights exp(-4 ln2 delta^2 / fwhm^2)
// renormalized over the truncated grid.
inline std::vector<SpinGroup> discretize_gaussian(const EnsembleSpec& spec) {
  spec.validate();
  const int n = spec.group_count;
  if (n == 1) return {SpinGroup{0.0, 1.0}};

  std::vector<SpinGroup> groups(static_cast<std::size_t>(n));
  const int half = (n - 1) / 2;
  for (int k = 0; k < n; ++k) {
    const double delta = static_cast<double>(k - half) * spec.step;
    const double x = delta / spec.fwhm;
    groups[k] = SpinGroup{delta, std::exp(-4.0 * std::numbers::ln2 * x * x)};
  }
  normalize_weights(groups);
  return groups;
}

// Tracked single-group observables, in CSV column order.
enum class Observable : int { re_rho12 = 0, im_rho12, re_rho13, im_rho13, rho11, rho22, rho33 };
inline constexpr std::size_t observable_count = 7;

inline constexpr std::array<std::string_view, observable_count> observable_names = {
    "re_rho12", "im_rho12", "re_rho13", "im_rho13", "rho11", "rho22", "rho33"};

inline std::array<double, observable_count> observe(const DensityMatrix& rho) {
  return {rho.rho12().real(), rho.rho12().imag(), rho.rho13().real(), rho.rho13().imag(),
          rho.rho11(),        rho.rho22(),        rho.rho33()};
}

// Time series of an ensemble run: per-group states and weighted aggregates.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<SpinGroup> groups;
  std::vector<std::vector<DensityMatrix>> per_group;  // [group][time]
  std::array<std::vector<double>, observable_count> aggregate;

  std::size_t size() const { return times.size(); }

  const std::vector<double>& series(Observable o) const { return aggregate[static_cast<int>(o)]; }
  double value(Observable o, std::size_t k) const { return series(o)[k]; }

  double abs_rho12(std::size_t k) const {
    return std::hypot(value(Observable::re_rho12, k), value(Observable::im_rho12, k));
  }
  double abs_rho13(std::size_t k) const {
    return std::hypot(value(Observable::re_rho13, k), value(Observable::im_rho13, k));
  }

  // Index of the first sample at or after t (clamped to the last sample).
  std::size_t index_at(double t) const {
    std::size_t k = 0;
    while (k + 1 < times.size() && times[k] < t - 1e-9) ++k;
    return k;
  }
};

// S_o(t) = sum_i w_i O_i(t), summed in ascending group order.
inline void aggregate_observables(TrajectoryRecord& record) {
  const std::size_t nt = record.times.size();
  if (record.per_group.size() != record.groups.size()) throw ValidationError("aggregate: per-group data missing");
  for (auto& col : record.aggregate) col.assign(nt, 0.0);
  for (std::size_t k = 0; k < nt; ++k) {
    std::array<CompensatedSum, observable_count> sums{};
    for (std::size_t g = 0; g < record.groups.size(); ++g) {
      const auto obs = observe(record.per_group[g][k]);
      for (std::size_t o = 0; o < observable_count; ++o) sums[o].add(record.groups[g].weight * obs[o]);
    }
    for (std::size_t o = 0; o < observable_count; ++o) record.aggregate[o][k] = sums[o].value();
  }
}

// Rejects overlapping or out-of-order segments; with `contiguous`, also gaps.
inline void validate_sequence(const std::vector<PulseSegment>& sequence, bool contiguous) {
  if (sequence.empty()) throw ValidationError("pulse sequence is empty");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    sequence[i].validate();
    if (i == 0) continue;
    const double prev_end = sequence[i - 1].t_end();
    const double tol = 1e-9 * std::max(1.0, std::abs(prev_end));
    if (sequence[i].t_start < prev_end - tol) {
      throw ValidationError("overlapping pulse segments at t = " + std::to_string(sequence[i].t_start) + " us");
    }
    if (contiguous && sequence[i].t_start > prev_end + tol) {
      throw ValidationError("gap in pulse sequence at t = " + std::to_string(prev_end) + " us");
    }
  }
}

// Inserts zero-drive segments so the pulses cover [t0, t_end] contiguously.
inline std::vector<PulseSegment> fill_gaps(std::vector<PulseSegment> pulses, double t0, double t_end) {
  std::sort(pulses.begin(), pulses.end(),
            [](const PulseSegment& a, const PulseSegment& b) { return a.t_start < b.t_start; });
  if (!pulses.empty()) validate_sequence(pulses, false);
  std::vector<PulseSegment> out;
  double t = t0;
  for (const auto& p : pulses) {
    if (p.t_start < t0 - 1e-9) throw ValidationError("pulse starts before the sequence origin");
    if (p.t_start > t + 1e-9) out.push_back(PulseSegment::gap(t, p.t_start - t));
    PulseSegment q = p;
    if (!out.empty()) q.t_start = out.back().t_end();
    out.push_back(q);
    t = q.t_end();
  }
  if (t_end > t + 1e-9) out.push_back(PulseSegment::gap(t, t_end - t));
  else if (t_end < t - 1e-9) throw ValidationError("pulses extend beyond the sequence span");
  return out;
}

struct EnsembleOptions {
  Sampling sampling{};
  unsigned threads = default_thread_count();
};

// Propagates one group through every segment; returns the concatenated grid.
inline SegmentTrajectory propagate_group(const std::vector<PulseSegment>& sequence, const SystemParams& params,
                                         double delta, const DensityMatrix& rho0, const Sampling& sampling) {
  SegmentTrajectory all;
  DensityMatrix rho = rho0;
  for (std::size_t s = 0; s < sequence.size(); ++s) {
    SegmentTrajectory seg = propagate_segment_exact(rho, sequence[s], params, delta, sampling);
    const std::size_t first = all.times.empty() ? 0 : 1;
    all.times.insert(all.times.end(), seg.times.begin() + first, seg.times.end());
    all.states.insert(all.states.end(), seg.states.begin() + first, seg.states.end());
    rho = seg.final_state();
  }
  return all;
}

// Runs every group independently and aggregates. `group_model(g)` returns the
// SystemParams and two-photon detuning used for group g.
template <typename GroupModel>
TrajectoryRecord simulate_groups(const std::vector<PulseSegment>& sequence, const std::vector<SpinGroup>& groups,
                                 const DensityMatrix& rho0, const EnsembleOptions& options, GroupModel&& group_model) {
  validate_sequence(sequence, true);
  if (groups.empty()) throw ValidationError("ensemble has no groups");

  TrajectoryRecord record;
  record.groups = groups;
  record.per_group.resize(groups.size());
  std::vector<std::vector<double>> times(groups.size());

  parallel_for(
      groups.size(), options.threads,
      [&](std::size_t g) {
        const auto [params, delta] = group_model(g);
        SegmentTrajectory traj = propagate_group(sequence, params, delta, rho0, options.sampling);
        times[g] = std::move(traj.times);
        record.per_group[g] = std::move(traj.states);
      },
      [&](std::size_t g, std::exception_ptr e) {
        std::string name = "group " + std::to_string(g) + " (delta = " + std::to_string(groups[g].delta) + " kHz)";
        try {
          std::rethrow_exception(e);
        } catch (const NumericalError& err) {
          throw NumericalError(name + ": " + err.what());
        } catch (const ValidationError& err) {
          throw ValidationError(name + ": " + err.what());
        }
      });

  record.times = std::move(times.front());
  aggregate_observables(record);
  return record;
}

inline TrajectoryRecord simulate_ensemble(const std::vector<PulseSegment>& sequence, const SystemParams& params,
                                          const std::vector<SpinGroup>& groups, const DensityMatrix& rho0,
                                          const EnsembleOptions& options = {}) {
  params.validate();
  return simulate_groups(sequence, groups, rho0, options,
                         [&](std::size_t g) { return std::pair<SystemParams, double>(params, groups[g].delta); });
}

struct Peak {
  double time = 0.0;
  double value = 0.0;
};

// Maximum of value_at(k) over samples with lo <= t <= hi.
template <typename ValueAt>
Peak peak_in_window(const TrajectoryRecord& record, double lo, double hi, ValueAt&& value_at) {
  Peak best{lo, -1.0};
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const double t = record.times[k];
    if (t < lo - 1e-9 || t > hi + 1e-9) continue;
    const double v = value_at(k);
    if (v > best.value) best = Peak{t, v};
  }
  if (best.value < 0.0) throw ValidationError("window contains no samples");
  return best;
}

}  // namespace ramanecho
