// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "zeno/curve.hpp"
#include "zeno/error.hpp"

namespace zeno
{
namespace
{

ExperimentCurve sample_curve()
{
  ExperimentCurve c("sample", {"x", "y"});
  c.set_metadata("experiment", "sample");
  c.set_metadata("alpha", "0.1");
  c.add_row({0.1, 1.0 / 3.0});
  c.add_row({1e-300, -2.5e17});
  c.add_row({123456789.123456789, std::nextafter(1.0, 2.0)});
  c.set_plot(PlotSpec{"x", {"y"}, true, false, "Sample", "x", "y"});
  return c;
}

std::string to_csv(const ExperimentCurve &c)
{
  std::ostringstream out;
  write_csv(c, out);
  return out.str();
}

TEST(ExperimentCurve, ArityAndColumns)
{
  ExperimentCurve c("c", {"a", "b"});
  EXPECT_THROW(c.add_row({1.0}), std::invalid_argument);
  c.add_row({1.0, 2.0});
  EXPECT_EQ(c.column("b"), std::vector<double>{2.0});
  EXPECT_THROW((void)c.column("z"), std::out_of_range);
  c.set_metadata("k", "1");
  c.set_metadata("j", "2");
  c.set_metadata("k", "3");
  EXPECT_EQ(c.metadata().front(), (std::pair<std::string, std::string>{"k", "3"}));
}

TEST(Csv, FullPrecisionRoundTripIsByteIdentical)
{
  const auto c = sample_curve();
  const std::string first = to_csv(c);
  std::istringstream in(first);
  const auto parsed = read_csv(in, "sample");
  EXPECT_EQ(parsed.rows(), c.rows());
  EXPECT_EQ(parsed.metadata(), c.metadata());
  EXPECT_EQ(to_csv(parsed), first);
  EXPECT_NE(first.find("# alpha: 0.1\n"), std::string::npos);
  EXPECT_NE(first.find("x,y\n"), std::string::npos);
  EXPECT_EQ(first.find(';'), std::string::npos);
}

TEST(Csv, EmptyCurveIsHeaderOnly)
{
  const ExperimentCurve c("empty", {"a", "b"});
  EXPECT_EQ(to_csv(c), "a,b\n");
  std::ostringstream out;
  write_json(c, out);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j["rows"].is_array());
  EXPECT_TRUE(j["rows"].empty());
  EXPECT_EQ(j["columns"], nlohmann::json::array({"a", "b"}));
  EXPECT_TRUE(j["metadata"].is_object());
}

TEST(Json, SchemaAndValues)
{
  const auto c = sample_curve();
  std::ostringstream out;
  write_json(c, out);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["metadata"]["alpha"], "0.1");
  ASSERT_EQ(j["rows"].size(), 3U);
  EXPECT_EQ(j["rows"][0][1].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(j["rows"][2][1].get<double>(), std::nextafter(1.0, 2.0));

  ExperimentCurve bad("bad", {"a"});
  bad.add_row({std::numeric_limits<double>::quiet_NaN()});
  std::ostringstream sink;
  EXPECT_THROW(write_json(bad, sink), std::invalid_argument);
}

TEST(Svg, HasAxesAndNoTimestamps)
{
  const auto c = sample_curve();
  std::ostringstream a;
  std::ostringstream b;
  write_svg(c, a);
  write_svg(c, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("<svg"), std::string::npos);
  EXPECT_NE(a.str().find("<polyline"), std::string::npos);
  EXPECT_NE(a.str().find("Sample"), std::string::npos);
  EXPECT_EQ(a.str().find("2026"), std::string::npos);
}

TEST(Formats, Parsing)
{
  EXPECT_EQ(parse_formats("csv,json"), (std::vector<Format>{Format::csv, Format::json}));
  EXPECT_EQ(parse_formats("svg"), (std::vector<Format>{Format::svg}));
  EXPECT_THROW(parse_formats("csv,pdf"), std::invalid_argument);
  EXPECT_THROW(parse_formats(""), std::invalid_argument);
}

TEST(Emit, WritesRequestedFilesAndReportsFailures)
{
  const auto dir = std::filesystem::temp_directory_path() / "zeno_emit_test";
  std::filesystem::remove_all(dir);
  const auto files = emit(sample_curve(), {Format::csv, Format::json, Format::svg}, dir / "nested");
  ASSERT_EQ(files.size(), 3U);
  for (const auto &f : files)
  {
    EXPECT_TRUE(std::filesystem::exists(f)) << f;
  }
  // A regular file where the directory should be.
  std::ofstream(dir / "blocker") << "x";
  EXPECT_THROW(emit(sample_curve(), {Format::csv}, dir / "blocker"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace zeno
