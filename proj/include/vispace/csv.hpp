#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vispace {

// Numeric cell format shared by all emitters: 9 significant digits, '.'
// decimal separator, no locale dependence.
inline std::string format_sig9(double v) {
  if (v == 0.0) {
    v = 0.0;  // normalize -0
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::string(buf);
}

// Writes content to a temporary file in the target directory, then renames it
// over the destination, so an interrupted run never leaves a partial file.
inline void atomic_write_file(const std::string& path,
                              const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("unwritable path: " + path);
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("unwritable path: " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("unwritable path: " + path);
  }
}

using CsvRow = std::vector<std::string>;

namespace detail {

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') {
      quoted += "\"\"";
    } else {
      quoted += c;
    }
  }
  quoted += "\"";
  return quoted;
}

}  // namespace detail

// RFC-4180-style CSV with a header row and LF line endings; byte-identical
// across runs for identical inputs.
inline void emit_csv(const std::string& path, const CsvRow& header,
                     const std::vector<CsvRow>& rows) {
  std::string content;
  const auto append_row = [&content](const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) {
        content += ',';
      }
      content += detail::csv_quote(row[i]);
    }
    content += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("emit_csv: ragged row");
    }
    append_row(row);
  }
  atomic_write_file(path, content);
}

}  // namespace vispace
