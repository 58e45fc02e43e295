#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "../ensemble.hpp"
#include "../error.hpp"
#include "csv.hpp"

namespace ramanecho::io {

// Aggregate series by name: any CSV column plus abs_rho12 / abs_rho13.
inline std::vector<double> observable_series(const TrajectoryRecord& record, std::string_view name) {
  for (std::size_t o = 0; o < observable_count; ++o)
    if (observable_names[o] == name) return record.aggregate[o];
  std::vector<double> out(record.size());
  if (name == "abs_rho12") {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = record.abs_rho12(k);
  } else if (name == "abs_rho13") {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = record.abs_rho13(k);
  } else {
    throw ValidationError("unknown observable '" + std::string(name) + "'");
  }
  return out;
}

inline void check_observables(const std::vector<std::string>& names) {
  if (names.empty()) throw ValidationError("observable list is empty");
  const TrajectoryRecord probe;
  for (const auto& n : names) (void)observable_series(probe, n);
}

inline std::string render_svg(const TrajectoryRecord& record, const std::vector<std::string>& observables) {
  check_observables(observables);
  if (record.size() < 2) throw ValidationError("render_svg: record needs at least two samples");

  constexpr double width = 800, height = 420, left = 70, right = 150, top = 20, bottom = 50;
  constexpr std::array<std::string_view, 6> palette = {"#1f77b4", "#d62728", "#2ca02c",
                                                       "#9467bd", "#ff7f0e", "#17becf"};

  std::vector<std::vector<double>> series;
  double lo = 0.0, hi = 0.0;
  for (const auto& name : observables) {
    series.push_back(observable_series(record, name));
    const auto [mn, mx] = std::minmax_element(series.back().begin(), series.back().end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
  }
  if (hi - lo < 1e-300) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= lo < 0.0 ? pad : 0.0;
  hi += pad;

  const double t0 = record.times.front(), t1 = record.times.back();
  const double pw = width - left - right, ph = height - top - bottom;
  const auto x = [&](double t) { return left + pw * (t - t0) / (t1 - t0); };
  const auto y = [&](double v) { return top + ph * (hi - v) / (hi - lo); };

  std::ostringstream s;
  s.precision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (int i = 0; i <= 6; ++i) {
    const double t = t0 + (t1 - t0) * i / 6.0;
    s << "<line x1=\"" << x(t) << "\" y1=\"" << top + ph << "\" x2=\"" << x(t) << "\" y2=\"" << top + ph + 5
      << "\" stroke=\"#333\"/>\n";
    s << "<text x=\"" << x(t) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    s << "<text x=\"" << left - 6 << "\" y=\"" << y(v) + 4 << "\" text-anchor=\"end\">" << v << "</text>\n";
  }
  s << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">time (us)</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto color = palette[i % palette.size()];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < record.size(); ++k) s << x(record.times[k]) << ',' << y(series[i][k]) << ' ';
    s << "\"/>\n";
    const double ly = top + 16 + 18 * static_cast<double>(i);
    s << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 30 << "\" y2=\""
      << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << width - right + 36 << "\" y=\"" << ly + 4 << "\">" << observables[i] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

inline void render_svg(const TrajectoryRecord& record, const std::filesystem::path& path,
                       const std::vector<std::string>& observables) {
  write_text_file(path, render_svg(record, observables));
}

}  // namespace ramanecho::io
