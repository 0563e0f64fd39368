// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/csv.hpp"

#include <cstdio>

namespace qswitch {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ",";
    out_ << cells[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double v : cells) text.push_back(format_number(v));
  row(text);
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.flush();
  if (!out_) throw IoError("write to " + path_ + " failed");
  out_.close();
}

CsvWriter::~CsvWriter() {
  if (!closed_) {
    out_.flush();
    out_.close();
  }
}

void write_plot_script(const std::string& script_path,
                       const std::string& csv_path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<PlotSeries>& series) {
  std::ofstream out(script_path);
  if (!out) throw IoError("cannot open " + script_path + " for writing");
  out << "# gnuplot script; run as: gnuplot -p " << script_path << "\n";
  out << "set datafile separator \",\"\n";
  out << "set key autotitle columnhead\n";
  out << "set title \"" << title << "\"\n";
  out << "set xlabel \"" << xlabel << "\"\n";
  out << "set ylabel \"" << ylabel << "\"\n";
  out << "plot";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out << ", \\\n    ";
    out << " \"" << csv_path << "\" using " << series[i].x_column << ":"
        << series[i].y_column << " with linespoints";
  }
  out << "\n";
  out.flush();
  if (!out) throw IoError("write to " + script_path + " failed");
}

}  // namespace qswitch
