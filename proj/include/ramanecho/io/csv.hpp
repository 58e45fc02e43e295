#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "../ensemble.hpp"
#include "../error.hpp"

namespace ramanecho::io {

struct CsvOptions {
  bool per_group = false;
};

inline std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::vector<std::string> csv_header(const TrajectoryRecord& record, const CsvOptions& options) {
  std::vector<std::string> cols{"time_us"};
  for (auto name : observable_names) cols.emplace_back(name);
  if (options.per_group) {
    for (const auto& g : record.groups) {
      const std::string suffix = "@" + format_double(g.delta) + "kHz";
      for (auto name : observable_names) cols.push_back(std::string(name) + suffix);
    }
  }
  return cols;
}

inline void write_csv(const TrajectoryRecord& record, std::ostream& out, const CsvOptions& options = {}) {
  if (record.size() == 0) throw ValidationError("write_csv: empty record");
  const auto header = csv_header(record, options);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t k = 0; k < record.size(); ++k) {
    out << format_double(record.times[k]);
    for (std::size_t o = 0; o < observable_count; ++o) out << ',' << format_double(record.aggregate[o][k]);
    if (options.per_group) {
      for (std::size_t g = 0; g < record.groups.size(); ++g) {
        for (double v : observe(record.per_group[g][k])) out << ',' << format_double(v);
      }
    }
    out << '\n';
  }
}

// Writes to a temporary sibling and renames, so a failure never leaves a
// partial file behind.
inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write '" + path.string() + "'");
  }
}

inline void write_csv(const TrajectoryRecord& record, const std::filesystem::path& path,
                      const CsvOptions& options = {}) {
  std::ostringstream out;
  write_csv(record, out, options);
  write_text_file(path, out.str());
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ValidationError("csv: no column '" + std::string(name) + "'");
  }
};

inline CsvTable parse_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  if (!std::getline(in, line)) throw ParseError("csv: missing header", 1);
  t.header = split(line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) throw ParseError("csv: column count mismatch", lineno);
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      const auto r = std::from_chars(c.data(), c.data() + c.size(), row[i]);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size()) throw ParseError("csv: bad number '" + c + "'", lineno);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_csv(in);
}

}  // namespace ramanecho::io
