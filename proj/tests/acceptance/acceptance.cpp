// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ramanecho/ramanecho.hpp"

using namespace ramanecho;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome echo_timing() {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioSpec spec = scenario_fig1();
  const TrajectoryRecord rec = run_scenario(spec);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const double write = rec.abs_rho12(rec.index_at(10.0));
  const double at45 = rec.abs_rho12(rec.index_at(45.0));
  // the largest revival anywhere after the rephasing pulse
  const Peak p = peak_in_window(rec, 50.5, spec.span, [&](std::size_t k) { return rec.abs_rho12(k); });
  const bool ok = std::abs(p.time - 95.0) <= 1.0 && at45 < 0.1 * write && seconds < 10.0;
  std::ostringstream d;
  d << "echo at " << p.time << " us (95 +- 1), |rho12|(45)/write = " << at45 / write << " (< 0.1), runtime "
    << fmt("%.2f", seconds) << " s (< 10)";
  return {ok, d.str()};
}

Outcome area_rule() {
  const double e2 = run_fig3_point(units::two_pi, 1, 1, default_thread_count()).efficiency;
  const double e4 = run_fig3_point(2 * units::two_pi, 1, 1, default_thread_count()).efficiency;
  const double e6 = run_fig3_point(3 * units::two_pi, 1, 1, default_thread_count()).efficiency;
  const bool ok = std::abs(e6 / e2 - 1.0) <= 0.05 && e4 < 0.05 * e2;
  std::ostringstream d;
  d << "eff(2pi) = " << e2 << ", eff(6pi)/eff(2pi) = " << e6 / e2 << " (1 +- 0.05), eff(4pi)/eff(2pi) = " << e4 / e2
    << " (< 0.05)";
  return {ok, d.str()};
}

Outcome area_curve() {
  const std::vector<double> mult{1.8, 1.6, 1.2, 1.0};
  const std::vector<double> expected{0.91, 0.77, 0.41, 0.27};
  std::vector<double> areas;
  for (double m : mult) areas.push_back(m * units::pi);
  const auto pts = sweep_areas(areas);
  bool ok = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ok = ok && std::abs(pts[i].relative - expected[i]) <= 0.10;
    d << (i ? ", " : "") << mult[i] << "pi: " << fmt("%.3f", pts[i].relative) << " (" << expected[i] << ")";
  }
  return {ok, d.str()};
}

Outcome ratio_monotone() {
  const auto pts = sweep_ratios({{50, 50}, {30, 40}, {25, 43.3}, {10, 49}});
  bool ok = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) ok = ok && pts[i].report.efficiency < pts[i - 1].report.efficiency;
    d << (i ? " > " : "") << pts[i].ratio_p << "/" << pts[i].ratio_c << ": " << fmt("%.4f", pts[i].report.efficiency);
  }
  return {ok, d.str()};
}

Outcome photon_echo() {
  TwoLevelParams p;
  const Peak pi_echo = photon_echo_peak(simulate_photon_echo(p, units::pi), p);
  const Peak two_pi_echo = photon_echo_peak(simulate_photon_echo(p, units::two_pi), p);
  TwoLevelParams broad = p;
  broad.gamma_opt = 25.0;
  const Peak broad_echo = photon_echo_peak(simulate_photon_echo(broad, units::pi), broad);
  const bool ok = std::abs(pi_echo.time - p.expected_echo()) <= 1.0 && two_pi_echo.value < 0.05 * pi_echo.value &&
                  broad_echo.value < 0.1 * pi_echo.value;
  std::ostringstream d;
  d << "pi echo at " << pi_echo.time << " us (" << p.expected_echo() << " +- 1), 2pi/pi = "
    << fmt("%.2e", two_pi_echo.value / pi_echo.value) << " (< 0.05), gamma_opt 25/2.5 = "
    << fmt("%.2e", broad_echo.value / pi_echo.value) << " (< 0.1)";
  return {ok, d.str()};
}

Outcome readout() {
  const ScenarioSpec spec = scenario_fig4_readout();
  const TrajectoryRecord rec = run_scenario(spec);
  const PulseSegment& a = spec.with_role(PulseRole::readout).front()->segment;
  const auto re12 = [&](std::size_t k) { return std::abs(rec.value(Observable::re_rho12, k)); };
  const auto im13 = [&](std::size_t k) { return std::abs(rec.value(Observable::im_rho13, k)); };

  const double before = re12(rec.index_at(a.t_start));
  const double after = re12(rec.index_at(a.t_end()));
  const double im_before = im13(rec.index_at(a.t_start));
  const Peak emission = peak_in_window(rec, a.t_start, a.t_start + 5.0, im13);
  const double late = im13(rec.index_at(a.t_start + 20.0));
  // transient: rises well above the pre-readout level, then falls back
  const bool ok = after < 0.05 * before && emission.value >= 10 * im_before && late < 0.5 * emission.value;
  std::ostringstream d;
  d << "|Re rho12| after/before = " << fmt("%.2e", after / before) << " (< 0.05), |Im rho13| peak "
    << fmt("%.3e", emission.value) << " at " << emission.time << " us, pre " << fmt("%.1e", im_before) << ", +20 us "
    << fmt("%.2e", late);
  return {ok, d.str()};
}

Outcome time_reversed() {
  const ScenarioSpec spec = scenario_fig3();
  const TrajectoryRecord rec = run_scenario(spec);
  const auto echoes = analyze_data_echoes(spec, rec);
  const double dephased = rec.abs_rho12(rec.index_at(45.0));
  const DataEcho& d1 = echoes.at(0);
  const DataEcho& d2 = echoes.at(1);
  const auto interior = [](const DataEcho& e) {
    return e.report.echo_time > e.window.lo + 0.5 && e.report.echo_time < e.window.hi - 0.5;
  };
  const bool ok = d2.report.echo_time < d1.report.echo_time && interior(d1) && interior(d2) &&
                  d1.report.echo_peak > 10 * dephased && d2.report.echo_peak > 10 * dephased;
  std::ostringstream s;
  s << "D2 echo at " << d2.report.echo_time << " us, D1 echo at " << d1.report.echo_time << " us, peaks "
    << fmt("%.3e", d2.report.echo_peak) << " / " << fmt("%.3e", d1.report.echo_peak) << " vs dephased "
    << fmt("%.1e", dephased);
  return {ok, s.str()};
}

Outcome formulas() {
  const double t2 = spin_t2(1.0);
  const int n = channel_count(4e6, 4e3);
  const bool ok = std::abs(t2 - 318.3) <= 0.5 && n == 1000;
  std::ostringstream d;
  d << "spin_t2(1 kHz) = " << fmt("%.2f", t2) << " us (318.3 +- 0.5), channel_count(4 GHz, 4 MHz) = " << n;
  return {ok, d.str()};
}

Outcome properties() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& r : run_property_suite()) {
    if (!r.passed) {
      ok = false;
      d << "FAILED " << r.name << " = " << r.worst << "; ";
    }
  }
  if (ok) d << "all 9 properties within bounds";
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 echo timing", echo_timing},
      {"2 rephasing-area selection", area_rule},
      {"3 area-reduction curve", area_curve},
      {"4 field-ratio monotonicity", ratio_monotone},
      {"5 photon-echo contrast", photon_echo},
      {"6 readout conversion", readout},
      {"7 time-reversed order", time_reversed},
      {"8 formula checks", formulas},
      {"9 property suite", properties},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
