// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/curve.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "zeno/error.hpp"

namespace zeno
{

ExperimentCurve::ExperimentCurve(std::string name, std::vector<std::string> columns)
  : name_(std::move(name)), columns_(std::move(columns))
{
  for (const auto &c : columns_)
  {
    if (c.empty() || c.find_first_of(",\n\r#\"") != std::string::npos)
    {
      throw std::invalid_argument("invalid column name '" + c + "'");
    }
  }
}

std::size_t ExperimentCurve::column_index(const std::string &column) const
{
  for (std::size_t i = 0; i < columns_.size(); ++i)
  {
    if (columns_[i] == column)
    {
      return i;
    }
  }
  throw std::out_of_range("curve '" + name_ + "' has no column '" + column + "'");
}

std::vector<double> ExperimentCurve::column(const std::string &column) const
{
  const auto idx = column_index(column);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto &r : rows_)
  {
    out.push_back(r[idx]);
  }
  return out;
}

void ExperimentCurve::add_row(std::vector<double> row)
{
  if (row.size() != columns_.size())
  {
    throw std::invalid_argument("row arity " + std::to_string(row.size()) + " does not match header arity " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

void ExperimentCurve::set_metadata(const std::string &key, const std::string &value)
{
  if (key.empty() || key.find_first_of(":\n\r") != std::string::npos || value.find_first_of("\n\r") != std::string::npos)
  {
    throw std::invalid_argument("invalid metadata entry '" + key + "'");
  }
  for (auto &[k, v] : metadata_)
  {
    if (k == key)
    {
      v = value;
      return;
    }
  }
  metadata_.emplace_back(key, value);
}

std::string format_real(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<Format> parse_formats(const std::string &list)
{
  std::vector<Format> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    Format f;
    if (item == "csv")
    {
      f = Format::csv;
    }
    else if (item == "json")
    {
      f = Format::json;
    }
    else if (item == "svg")
    {
      f = Format::svg;
    }
    else
    {
      throw std::invalid_argument("unknown output format '" + item + "' (expected csv, json, svg)");
    }
    bool seen = false;
    for (auto g : out)
    {
      seen = seen || g == f;
    }
    if (!seen)
    {
      out.push_back(f);
    }
  }
  if (out.empty())
  {
    throw std::invalid_argument("no output format given");
  }
  return out;
}

std::string extension(Format format)
{
  switch (format)
  {
  case Format::csv:
    return "csv";
  case Format::json:
    return "json";
  case Format::svg:
    return "svg";
  }
  return "";
}

void write_csv(const ExperimentCurve &curve, std::ostream &out)
{
  for (const auto &[k, v] : curve.metadata())
  {
    out << "# " << k << ": " << v << '\n';
  }
  for (std::size_t i = 0; i < curve.columns().size(); ++i)
  {
    out << (i ? "," : "") << curve.columns()[i];
  }
  out << '\n';
  for (const auto &row : curve.rows())
  {
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      out << (i ? "," : "") << format_real(row[i]);
    }
    out << '\n';
  }
}

ExperimentCurve read_csv(std::istream &in, const std::string &name)
{
  std::string line;
  ExperimentCurve::Metadata metadata;
  bool have_header = false;
  ExperimentCurve curve;
  while (std::getline(in, line))
  {
    if (!have_header && line.rfind("# ", 0) == 0)
    {
      const auto sep = line.find(": ", 2);
      if (sep == std::string::npos)
      {
        throw std::invalid_argument("malformed metadata line: " + line);
      }
      metadata.emplace_back(line.substr(2, sep - 2), line.substr(sep + 2));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
    {
      cells.push_back(cell);
    }
    if (!have_header)
    {
      curve = ExperimentCurve(name, cells);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto &c : cells)
    {
      errno = 0;
      char *end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0' || errno == ERANGE)
      {
        throw std::invalid_argument("not a number in CSV: '" + c + "'");
      }
      row.push_back(v);
    }
    curve.add_row(std::move(row));
  }
  if (!have_header)
  {
    throw std::invalid_argument("CSV has no header row");
  }
  for (const auto &[k, v] : metadata)
  {
    curve.set_metadata(k, v);
  }
  return curve;
}

void write_json(const ExperimentCurve &curve, std::ostream &out)
{
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto &[k, v] : curve.metadata())
  {
    doc["metadata"][k] = v;
  }
  doc["columns"] = curve.columns();
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto &row : curve.rows())
  {
    for (double v : row)
    {
      if (!std::isfinite(v))
      {
        throw std::invalid_argument("non-finite value cannot be written to JSON");
      }
    }
    doc["rows"].push_back(row);
  }
  out << doc.dump(2) << '\n';
}

std::vector<std::filesystem::path> emit(const ExperimentCurve &curve, const std::vector<Format> &formats,
                                        const std::filesystem::path &directory)
{
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec || !std::filesystem::is_directory(directory))
  {
    throw IoError("cannot create output directory " + directory.string() + (ec ? ": " + ec.message() : ""));
  }
  std::vector<std::filesystem::path> written;
  for (Format f : formats)
  {
    const auto path = directory / (curve.name() + "." + extension(f));
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (file)
    {
      switch (f)
      {
      case Format::csv:
        write_csv(curve, file);
        break;
      case Format::json:
        write_json(curve, file);
        break;
      case Format::svg:
        write_svg(curve, file);
        break;
      }
      file.close();
    }
    if (!file)
    {
      std::string msg = "failed writing " + path.string();
      if (!written.empty())
      {
        msg += " (partial output:";
        for (const auto &p : written)
        {
          msg += " " + p.string();
        }
        msg += ")";
      }
      throw IoError(msg);
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace zeno
