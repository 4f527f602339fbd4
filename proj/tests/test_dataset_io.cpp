#include <mvst/dataset_io.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace mvst;

namespace {

  Dataset parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_dataset(in);
  }

  std::size_t error_line(const std::string& text) {
    try {
      (void)parse(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    ADD_FAILURE() << "expected a parse error";
    return 0;
  }

  const std::string header = "@problemName Toy\n@dimensions 2\n@seriesLength 3\n@classLabel true a b\n@data\n";

} // namespace

TEST(DatasetIo, ParsesWellFormedFile) {
  const auto ds = parse("# leading comment\n" + header + "1,2,3:4,5,6:a\r\n# mid comment\n-1.5,2e-3,0:7,8,9:b\n");
  EXPECT_EQ(ds.name(), "Toy");
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.dimensions(), 2u);
  EXPECT_EQ(ds.length(), 3u);
  EXPECT_EQ(ds.classes(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds[1].dim(0)[1], 2e-3);
  EXPECT_EQ(ds[1].label(), "b");
}

TEST(DatasetIo, FullPrecisionOnRead) {
  const auto ds = parse("@problemName P\n@dimensions 1\n@seriesLength 1\n@classLabel true a\n@data\n"
                        "0.12345678901234567:a\n");
  EXPECT_EQ(ds[0].dim(0)[0], 0.12345678901234567);
}

TEST(DatasetIo, HeaderErrorsReportLine) {
  EXPECT_EQ(error_line("@problemName A\n@problemName B\n"), 2u);
  EXPECT_EQ(error_line("@problemName A\n@dimensions 1\n@classLabel true a\n@data\n1:a\n"), 4u);
  EXPECT_EQ(error_line("@problemName A\n@dimensions 0\n"), 2u);
  EXPECT_EQ(error_line("@problemName A\n@bogus 1\n"), 2u);
  EXPECT_EQ(error_line("@problemName A\n@classLabel false\n"), 2u);
  EXPECT_EQ(error_line("1,2:a\n"), 1u);
}

TEST(DatasetIo, DataErrorsReportLine) {
  EXPECT_EQ(error_line(header + "1,2,3:4,5,6:a\n1,2,3:a\n"), 7u);      // missing dimension
  EXPECT_EQ(error_line(header + "1,2:4,5,6:a\n"), 6u);                 // short series
  EXPECT_EQ(error_line(header + "1,2,3:4,5,6:zz\n"), 6u);              // unknown label
  EXPECT_EQ(error_line(header + "1,?,3:4,5,6:a\n"), 6u);               // missing value
  EXPECT_EQ(error_line(header + "1,nan,3:4,5,6:a\n"), 6u);             // non-finite
  EXPECT_EQ(error_line(header), 5u);                                   // no instances
  EXPECT_EQ(error_line(header + "1,2,3:4,5,6:a\n@data\n"), 7u);        // header after data
}

TEST(DatasetIo, WriteUsesSixSignificantDigitsAndReadsBack) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 100.0);
  std::vector<MultivariateInstance> instances;
  for (int i = 0; i < 5; ++i) {
    std::vector<TimeSeries> dims;
    for (int j = 0; j < 3; ++j) {
      std::vector<double> v(7);
      for (auto& x : v) { x = g(rng); }
      dims.emplace_back(std::move(v));
    }
    instances.emplace_back(std::move(dims), i % 2 ? "up" : "down");
  }
  const Dataset ds("Rand", instances, {"up", "down"});
  std::ostringstream out;
  io::write_dataset(out, ds);
  const auto text = out.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.rfind("@problemName Rand\n@dimensions 3\n@seriesLength 7\n@classLabel true up down\n@data\n", 0), 0u);
  const auto back = parse(text);
  ASSERT_EQ(back.size(), ds.size());
  EXPECT_EQ(back.classes(), ds.classes());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(back[i].label(), ds[i].label());
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t t = 0; t < 7; ++t) {
        EXPECT_NEAR(back[i].dim(j)[t], ds[i].dim(j)[t], 5e-6 * std::abs(ds[i].dim(j)[t]) + 1e-300);
      }
    }
  }
  // A second write of the re-read data is byte-identical.
  std::ostringstream again;
  io::write_dataset(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(DatasetIo, RejectsUnwritableTokens) {
  const Dataset ds("has space", {MultivariateInstance({TimeSeries{1}}, "a")}, {"a"});
  std::ostringstream out;
  EXPECT_THROW(io::write_dataset(out, ds), ConfigError);
}

TEST(DatasetIo, MissingFileNamesPath) {
  try {
    (void)io::read_dataset_file("/nonexistent/nope.ts");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/nope.ts"), std::string::npos);
  }
}
