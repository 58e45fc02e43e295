#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "io/csv.hpp"
#include "io/quantity.hpp"
#include "io/scenario_file.hpp"
#include "io/svg.hpp"
#include "multimode.hpp"
#include "photon_echo.hpp"
#include "properties.hpp"
#include "sequences.hpp"

namespace ramanecho::cli {

enum ExitCode : int { ok = 0, usage = 1, invalid = 2, numerical = 3 };

struct OutputFlags {
  std::string out_dir = ".";
  bool csv = false;
  bool svg = false;
  bool per_group = false;
  bool seedless = false;
  unsigned threads = default_thread_count();
};

namespace detail {

inline std::filesystem::path output_path(const OutputFlags& f, const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(f.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + f.out_dir + "': " + ec.message());
  return std::filesystem::path(f.out_dir) / file;
}

// CSV/SVG for one trajectory. Called only after all simulation work is done.
inline void emit(const TrajectoryRecord& record, const std::string& stem, const OutputFlags& f,
                 const std::vector<std::string>& observables, std::ostream& out) {
  if (f.svg) io::check_observables(observables);
  if (f.csv) {
    const auto path = output_path(f, stem + ".csv");
    io::write_csv(record, path, io::CsvOptions{f.per_group});
    out << "wrote " << path.string() << '\n';
  }
  if (f.svg) {
    const auto path = output_path(f, stem + ".svg");
    io::render_svg(record, path, observables);
    out << "wrote " << path.string() << '\n';
  }
}

inline void print_echoes(const ScenarioSpec& spec, const TrajectoryRecord& record, std::ostream& out) {
  if (spec.with_role(PulseRole::rephasing).empty() || spec.with_role(PulseRole::data).empty()) return;
  out << "pulse  write_end_us  expected_us  echo_time_us  write_peak  echo_peak  efficiency\n";
  for (const auto& e : analyze_data_echoes(spec, record)) {
    out << std::left << std::setw(6) << e.label << std::right << std::fixed << std::setprecision(2) << std::setw(13)
        << e.window.write_end << std::setw(13) << e.window.expected << std::setw(14) << e.report.echo_time
        << std::scientific << std::setprecision(4) << std::setw(12) << e.report.write_peak << std::setw(11)
        << e.report.echo_peak << std::fixed << std::setw(12) << e.report.efficiency << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

inline void run_spec(const ScenarioSpec& spec, const OutputFlags& f, const std::vector<std::string>& observables,
                     std::ostream& out) {
  if (f.svg) io::check_observables(observables);
  const TrajectoryRecord record = run_scenario(spec, f.threads);
  out << "scenario " << spec.name << ": " << record.groups.size() << " groups, " << record.size() << " samples\n";
  print_echoes(spec, record, out);
  emit(record, spec.name, f, observables, out);
}

inline std::pair<double, double> parse_ratio(const std::string& s) {
  const auto sep = s.find_first_of(":/");
  if (sep == std::string::npos) throw ValidationError("ratio '" + s + "': expected P:C, for example 30:40");
  try {
    std::size_t a = 0, b = 0;
    const std::string ps = s.substr(0, sep), cs = s.substr(sep + 1);
    const double p = std::stod(ps, &a), c = std::stod(cs, &b);
    if (a != ps.size() || b != cs.size()) throw std::invalid_argument(s);
    return {p, c};
  } catch (const std::logic_error&) {
    throw ValidationError("ratio '" + s + "': expected P:C, for example 30:40");
  }
}

inline void print_sweep(const std::vector<SweepPoint>& points, std::ostream& out) {
  out << "area_pi  ratio_p  ratio_c  echo_time_us  efficiency  relative\n";
  for (const auto& p : points) {
    out << std::fixed << std::setprecision(3) << std::setw(7) << p.area / units::pi << std::setw(9) << p.ratio_p
        << std::setw(9) << p.ratio_c << std::setprecision(2) << std::setw(14) << p.report.echo_time
        << std::setprecision(4) << std::setw(12) << p.report.efficiency << std::setw(10) << p.relative << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

inline std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream s;
  s << "area_rad,ratio_p,ratio_c,write_peak,echo_peak,echo_time_us,efficiency,relative\n";
  for (const auto& p : points) {
    s << io::format_double(p.area) << ',' << io::format_double(p.ratio_p) << ',' << io::format_double(p.ratio_c)
      << ',' << io::format_double(p.report.write_peak) << ',' << io::format_double(p.report.echo_peak) << ','
      << io::format_double(p.report.echo_time) << ',' << io::format_double(p.report.efficiency) << ','
      << io::format_double(p.relative) << '\n';
  }
  return s.str();
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Raman spin-echo simulator for inhomogeneously broadened lambda ensembles", "ramanecho"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputFlags flags;
  app.add_option("--out-dir", flags.out_dir, "Directory for CSV/SVG files");
  app.add_flag("--csv", flags.csv, "Write the aggregate trajectory as CSV");
  app.add_flag("--svg", flags.svg, "Write an SVG plot of selected aggregates");
  app.add_flag("--per-group", flags.per_group, "Add per-group columns to the CSV");
  app.add_flag("--seedless", flags.seedless, "No effect: all runs are deterministic and no RNG is used");
  app.add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run a scenario file");
  std::string scenario_path;
  run->add_option("file", scenario_path, "Scenario file (YAML)")->required();

  auto* scenario = app.add_subcommand("scenario", "Run a bundled scenario");
  std::string scenario_name;
  scenario->add_option("name", scenario_name, "fig1, fig3, fig4, fig5 or fig6")->required();

  auto* sweep = app.add_subcommand("sweep", "Rephasing-area and field-ratio sweeps on the two-data scenario");
  std::vector<std::string> areas, ratios;
  sweep->add_option("--areas", areas, "Rephasing areas, e.g. 2pi,1.8pi,1pi")->delimiter(',');
  sweep->add_option("--ratios", ratios, "OmegaP:OmegaC ratios at 2pi, e.g. 50:50,30:40")->delimiter(',');

  auto* echo2 = app.add_subcommand("echo2", "Two-level photon-echo reference");
  std::string gamma_opt = "2.5 kHz";
  echo2->add_option("--gamma-opt", gamma_opt, "Optical coherence linewidth")->capture_default_str();

  auto* channels = app.add_subcommand("channels", "Multimode channel plan");
  std::string channel_file, delta_opt, omega;
  channels->add_option("file", channel_file, "Scenario file with a channels section");
  channels->add_option("--delta-opt", delta_opt, "Optical inhomogeneous width, e.g. 4 GHz");
  channels->add_option("--omega", omega, "Per-channel bandwidth, e.g. 4 MHz");

  auto* check = app.add_subcommand("check", "Run the property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return usage;
  }

  try {
    if (*run) {
      const io::ScenarioFile file = io::load_scenario(scenario_path);
      OutputFlags f = flags;
      f.per_group = f.per_group || file.outputs.per_group;
      detail::run_spec(file.spec, f, file.outputs.observables, out);
    } else if (*scenario) {
      if (scenario_name == "fig5" || scenario_name == "echo2") {
        err << "note: fig5 is the photon-echo reference; running echo2\n";
        scenario_name = "echo2";
      } else {
        detail::run_spec(bundled_scenario(scenario_name), flags, {"abs_rho12", "im_rho13"}, out);
        return ok;
      }
    }

    if (*echo2 || scenario_name == "echo2") {
      TwoLevelParams p;
      p.gamma_opt = io::parse_quantity(gamma_opt, io::Dimension::frequency, "--gamma-opt");
      const TrajectoryRecord pi_rec = simulate_photon_echo(p, units::pi, flags.threads);
      const TrajectoryRecord two_pi_rec = simulate_photon_echo(p, units::two_pi, flags.threads);
      const Peak a = photon_echo_peak(pi_rec, p), b = photon_echo_peak(two_pi_rec, p);
      out << "photon echo, gamma_opt = " << p.gamma_opt << " kHz, expected at " << p.expected_echo() << " us\n";
      out << "rephasing  echo_time_us  |rho13| peak\n";
      out << "pi         " << std::setw(12) << a.time << "  " << a.value << '\n';
      out << "2pi        " << std::setw(12) << b.time << "  " << b.value << '\n';
      out << "2pi / pi = " << (a.value > 0 ? b.value / a.value : 0.0) << '\n';
      detail::emit(pi_rec, "echo2_pi", flags, {"abs_rho13"}, out);
      detail::emit(two_pi_rec, "echo2_2pi", flags, {"abs_rho13"}, out);
    } else if (*sweep) {
      std::vector<SweepPoint> points;
      if (areas.empty() && ratios.empty()) {
        areas = {"2pi", "1.8pi", "1.6pi", "1.2pi", "1pi"};
        ratios = {"50:50", "30:40", "25:43.3", "10:49"};
      }
      std::vector<double> a;
      for (const auto& s : areas) a.push_back(io::parse_quantity(s, io::Dimension::angle, "--areas"));
      std::vector<std::pair<double, double>> r;
      for (const auto& s : ratios) r.push_back(detail::parse_ratio(s));
      if (!a.empty()) {
        auto pa = sweep_areas(a, 1.0, 1.0, flags.threads);
        points.insert(points.end(), pa.begin(), pa.end());
      }
      if (!r.empty()) {
        auto pr = sweep_ratios(r, units::two_pi, flags.threads);
        points.insert(points.end(), pr.begin(), pr.end());
      }
      detail::print_sweep(points, out);
      if (flags.csv) {
        const auto path = detail::output_path(flags, "sweep.csv");
        io::write_text_file(path, detail::sweep_csv(points));
        out << "wrote " << path.string() << '\n';
      }
    } else if (*channels) {
      if (!channel_file.empty()) {
        const io::ScenarioFile file = io::load_scenario(channel_file);
        if (!file.channels) throw ValidationError(channel_file + ": no channels section");
        const auto& c = *file.channels;
        const auto reports = run_multichannel(c.plan, file.spec, c.overrides, flags.threads);
        out << "channels: " << c.plan.n_channels << '\n' << "channel  echo_time_us  efficiency\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
          out << std::setw(7) << i << std::setw(14) << reports[i].echo_time << "  " << reports[i].efficiency << '\n';
      } else {
        if (delta_opt.empty() || omega.empty()) throw ValidationError("channels: give a file or --delta-opt and --omega");
        const double d = io::parse_quantity(delta_opt, io::Dimension::frequency, "--delta-opt");
        const double w = io::parse_quantity(omega, io::Dimension::frequency, "--omega");
        out << "channels: " << channel_count(d, w) << '\n';
      }
    } else if (*check) {
      bool all = true;
      for (const auto& r : run_property_suite(flags.threads)) {
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.worst << " (bound " << r.bound << ")\n";
        all = all && r.passed;
      }
      return all ? ok : numerical;
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return numerical;
  } catch (const ParseError& e) {
    err << "error";
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << ": " << e.what() << '\n';
    return invalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  }
  return ok;
}

}  // namespace ramanecho::cli
