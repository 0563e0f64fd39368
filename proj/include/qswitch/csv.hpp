// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic CSV emission: fixed column order, 12 significant digits,
// '.' decimal separator, comment header with version, config hash and seed,
// and no timestamps, so identical runs produce identical bytes.

#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qswitch {

// Filesystem-level failure (unwritable path, failed flush). The CLI maps
// this to its I/O exit status.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// %.12g with C locale semantics.
std::string format_number(double v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& cells);

  // Flushes and verifies the stream; throws IoError on failure. Called by
  // the destructor as a backstop, but errors only surface when invoked
  // explicitly.
  void close();

  const std::string& path() const { return path_; }

  ~CsvWriter();

 private:
  std::string path_;
  std::ofstream out_;
  bool closed_ = false;
};

struct PlotSeries {
  int x_column = 1;  // 1-based CSV column indices
  int y_column = 2;
};

// Writes a gnuplot script that renders the named series from the CSV; the
// CSV header row supplies the series titles.
void write_plot_script(const std::string& script_path,
                       const std::string& csv_path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<PlotSeries>& series);

}  // namespace qswitch
