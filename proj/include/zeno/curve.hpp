// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_CURVE_HPP
#define ZENO_CURVE_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace zeno
{

struct PlotSpec
{
  std::string x_column;                // empty: first column
  std::vector<std::string> y_columns;  // empty: every other column
  bool log_x = false;
  bool log_y = false;
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Named columns of real values plus an ordered metadata block. Every row has
// the same arity as the header.
class ExperimentCurve
{
public:
  using Metadata = std::vector<std::pair<std::string, std::string>>;

  ExperimentCurve() = default;
  ExperimentCurve(std::string name, std::vector<std::string> columns);

  const std::string &name() const { return name_; }
  const std::vector<std::string> &columns() const { return columns_; }
  const std::vector<std::vector<double>> &rows() const { return rows_; }
  const Metadata &metadata() const { return metadata_; }
  const PlotSpec &plot() const { return plot_; }

  std::size_t column_index(const std::string &column) const;
  std::vector<double> column(const std::string &column) const;

  void add_row(std::vector<double> row);
  // Replaces the value if the key already exists, keeping its position.
  void set_metadata(const std::string &key, const std::string &value);
  void set_plot(PlotSpec plot) { plot_ = std::move(plot); }
  void set_name(std::string name) { name_ = std::move(name); }

private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  Metadata metadata_;
  PlotSpec plot_;
};

// Shortest round-trip form is not used: every float is written with 17
// significant digits so output is stable across standard libraries.
std::string format_real(double value);

enum class Format
{
  csv,
  json,
  svg
};

std::vector<Format> parse_formats(const std::string &list);
std::string extension(Format format);

void write_csv(const ExperimentCurve &curve, std::ostream &out);
ExperimentCurve read_csv(std::istream &in, const std::string &name = {});
void write_json(const ExperimentCurve &curve, std::ostream &out);
void write_svg(const ExperimentCurve &curve, std::ostream &out);

// Writes <directory>/<curve name>.<ext> for each format. Throws IoError naming
// the files already written if a write fails part way.
std::vector<std::filesystem::path> emit(const ExperimentCurve &curve, const std::vector<Format> &formats,
                                        const std::filesystem::path &directory);

}  // namespace zeno

#endif  // ZENO_CURVE_HPP
