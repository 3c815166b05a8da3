// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

// Minimal native SVG line plots: one plot per curve, linear or log10 axes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "zeno/curve.hpp"

namespace zeno
{

namespace
{

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string &s)
{
  std::string out;
  for (char c : s)
  {
    switch (c)
    {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

struct Axis
{
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double transform(double v) const { return log ? std::log10(v) : v; }

  // Fraction along the axis in [0, 1].
  double fraction(double v) const { return (transform(v) - lo) / (hi - lo); }

  std::vector<double> ticks() const
  {
    std::vector<double> out;
    if (log)
    {
      for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0)
      {
        out.push_back(std::pow(10.0, e));
      }
      if (out.size() < 2)
      {
        out = {std::pow(10.0, lo), std::pow(10.0, hi)};
      }
      return out;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
    {
      if (m * mag >= raw)
      {
        step = m * mag;
        break;
      }
    }
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
    {
      out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return out;
  }
};

Axis make_axis(const std::vector<double> &values, bool log)
{
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values)
  {
    if (!std::isfinite(v) || (log && v <= 0.0))
    {
      continue;
    }
    lo = std::min(lo, axis.transform(v));
    hi = std::max(hi, axis.transform(v));
  }
  if (!std::isfinite(lo))
  {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12)
  {
    const double pad = std::max(std::abs(lo) * 0.05, log ? 0.5 : 0.5);
    lo -= pad;
    hi += pad;
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

}  // namespace

void write_svg(const ExperimentCurve &curve, std::ostream &out)
{
  const PlotSpec &spec = curve.plot();
  const auto &columns = curve.columns();
  std::size_t x_index = 0;
  if (!spec.x_column.empty())
  {
    x_index = curve.column_index(spec.x_column);
  }
  std::vector<std::size_t> y_indices;
  if (spec.y_columns.empty())
  {
    for (std::size_t i = 0; i < columns.size(); ++i)
    {
      if (i != x_index)
      {
        y_indices.push_back(i);
      }
    }
  }
  else
  {
    for (const auto &c : spec.y_columns)
    {
      y_indices.push_back(curve.column_index(c));
    }
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto &row : curve.rows())
  {
    xs.push_back(row[x_index]);
    for (auto yi : y_indices)
    {
      ys.push_back(row[yi]);
    }
  }
  const Axis xa = make_axis(xs, spec.log_x);
  const Axis ya = make_axis(ys, spec.log_y);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + xa.fraction(v) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - ya.fraction(v)) * ph; };

  const std::string title = spec.title.empty() ? curve.name() : spec.title;
  const std::string x_label = spec.x_label.empty() ? (columns.empty() ? "" : columns[x_index]) : spec.x_label;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
      << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight) << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : xa.ticks())
  {
    const double x = px(t);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 19) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : ya.ticks())
  {
    const double y = py(t);
    out << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
        << fmt(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
        << "</text>\n";
  }
  out << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(x_label) << (spec.log_x ? " (log)" : "") << "</text>\n";
  out << "<text x=\"20\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << fmt(kTop + ph / 2) << ")\">" << escape(spec.y_label.empty() ? "value" : spec.y_label)
      << (spec.log_y ? " (log)" : "") << "</text>\n";

  for (std::size_t k = 0; k < y_indices.size(); ++k)
  {
    const char *colour = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto &row : curve.rows())
    {
      const double x = row[x_index];
      const double y = row[y_indices[k]];
      if (!std::isfinite(x) || !std::isfinite(y) || (spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0))
      {
        continue;
      }
      out << (first ? "" : " ") << fmt(px(x)) << "," << fmt(py(y));
      first = false;
    }
    out << "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    out << "<line x1=\"" << fmt(kLeft + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(kLeft + pw + 32)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(kLeft + pw + 36) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(columns[y_indices[k]])
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace zeno
