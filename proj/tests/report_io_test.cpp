#include "chebroot/report_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "chebroot/errors.hpp"
#include "chebroot/experiments.hpp"

namespace chebroot {
namespace {

const Interval kBox(-10.0, 10.0);

RootReport cos_report(int n) {
  RootConfig config;
  config.degree = n;
  return find_roots(parse_function("cos(x)"), kBox, config);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find("\r\n", start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 2;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.5707963267948966), "1.5707963267948966");
  for (double v : {1e-300, -2.5, 3.0, 0.1 + 0.2, std::numeric_limits<double>::denorm_min()}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(CsvFieldTest, QuotesWhenNeeded) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_field(""), "");
}

TEST(ReportJsonTest, RoundTrip) {
  for (int n : {8, 13, 30}) {
    const RootReport report = cos_report(n);
    EXPECT_EQ(report_from_json(report_to_json(report)), report) << n;
  }
  const RootReport adaptive = find_roots(parse_function("exp(-0.5*x^2)*(12-48*x^2+16*x^4)"), kBox);
  EXPECT_EQ(report_from_json(report_to_json(adaptive)), adaptive);
}

TEST(ReportJsonTest, CarriesCandidatesAndDecay) {
  const RootReport report = cos_report(30);
  const auto j = nlohmann::json::parse(report_to_json(report));
  EXPECT_EQ(j.at("version"), kReportFormatVersion);
  EXPECT_EQ(j.at("roots").size(), 6u);
  EXPECT_EQ(j.at("candidates").size(), report.candidates.size());
  EXPECT_EQ(j.at("decay").size(), report.coefficient_decay.abs_coeffs.size());
  EXPECT_EQ(j.at("degree_used"), 30);
}

TEST(ReportJsonTest, RejectsMalformedInput) {
  EXPECT_THROW(report_from_json("not json"), InvalidArgument);
  EXPECT_THROW(report_from_json("{}"), InvalidArgument);
  auto j = nlohmann::json::parse(report_to_json(cos_report(13)));
  j["version"] = kReportFormatVersion + 1;
  EXPECT_THROW(report_from_json(j.dump()), InvalidArgument);
  j["version"] = kReportFormatVersion;
  j["candidates"][0]["reason"] = "bogus";
  EXPECT_THROW(report_from_json(j.dump()), InvalidArgument);
}

TEST(ReportCsvTest, MatchesJsonFieldForField) {
  const RootReport report = cos_report(20);
  const auto j = nlohmann::json::parse(report_to_json(report));
  const auto lines = split_lines(report_to_csv(report));
  ASSERT_EQ(lines.size(), report.candidates.size() + 1);
  EXPECT_EQ(lines[0], "re,im,accepted,reason,residual,polish_iterations,x");
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const auto fields = split_fields(lines[i + 1]);
    ASSERT_EQ(fields.size(), 7u) << lines[i + 1];
    const auto& c = j.at("candidates")[i];
    EXPECT_EQ(std::stod(fields[0]), c.at("re").get<double>());
    EXPECT_EQ(std::stod(fields[1]), c.at("im").get<double>());
    EXPECT_EQ(fields[2], c.at("accepted").get<bool>() ? "true" : "false");
    EXPECT_EQ(fields[3], c.at("reason").get<std::string>());
    if (c.at("residual").is_null()) {
      EXPECT_EQ(fields[4], "");
    } else {
      EXPECT_EQ(std::stod(fields[4]), c.at("residual").get<double>());
    }
    EXPECT_EQ(std::stoi(fields[5]), c.at("polish_iterations").get<int>());
    if (c.at("x").is_null()) {
      EXPECT_EQ(fields[6], "");
    } else {
      EXPECT_EQ(std::stod(fields[6]), c.at("x").get<double>());
    }
  }
}

TEST(ReportTextTest, MentionsRoots) {
  const std::string text = report_to_text(cos_report(30));
  EXPECT_NE(text.find("1.5707963267948966"), std::string::npos);
}

TEST(SweepIoTest, RoundTripAndCsvRows) {
  const auto fn = parse_function("cos(x)");
  const auto runs = run_sweep(fn, kBox, {13, 20, 30});
  EXPECT_EQ(sweep_from_json(sweep_to_json(fn.text, kBox, runs)), runs);
  const auto lines = split_lines(sweep_to_csv(runs));
  std::size_t rows = 0;
  for (const auto& r : runs) rows += r.report.candidates.size();
  ASSERT_EQ(lines.size(), rows + 1);
  EXPECT_EQ(lines[0].rfind("degree,", 0), 0u);
  EXPECT_EQ(lines[1].rfind("13,", 0), 0u);
  EXPECT_EQ(lines.back().rfind("30,", 0), 0u);
}

TEST(InterpIoTest, CsvAndJsonAgree) {
  const auto table = interp_table([](double x) { return std::cos(x); }, kBox, 13, 11);
  const auto lines = split_lines(interp_to_csv(table));
  ASSERT_EQ(lines.size(), 12u);
  EXPECT_EQ(lines[0], "x,f,proxy,error");
  const auto j = nlohmann::json::parse(interp_to_json(table)).at("samples");
  ASSERT_EQ(j.size(), 11u);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto fields = split_fields(lines[i + 1]);
    ASSERT_EQ(fields.size(), 4u);
    EXPECT_EQ(std::stod(fields[0]), table[i].x);
    EXPECT_EQ(std::stod(fields[1]), table[i].f);
    EXPECT_EQ(std::stod(fields[2]), table[i].proxy);
    EXPECT_EQ(std::stod(fields[3]), table[i].f - table[i].proxy);
    EXPECT_EQ(j[i].at("x").get<double>(), table[i].x);
  }
}

TEST(BenchIoTest, RoundTripAndCsvRows) {
  std::vector<BenchCase> corpus = default_corpus();
  corpus[0].degree_sweep = {13, 30};
  corpus.erase(corpus.begin() + 1, corpus.end());
  BenchReport report = run_bench(corpus);
  EXPECT_EQ(bench_from_json(bench_to_json(report)), report);
  const auto lines = split_lines(bench_to_csv(report));
  EXPECT_EQ(lines.size(), report.rows.size() + 1);
  EXPECT_THROW(bench_from_json("[]"), InvalidArgument);
  EXPECT_FALSE(bench_to_text(report).empty());
}

}  // namespace
}  // namespace chebroot
