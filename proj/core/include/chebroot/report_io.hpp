#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chebroot/experiments.hpp"
#include "chebroot/rootfinder.hpp"

namespace chebroot {

inline constexpr int kReportFormatVersion = 1;

/// Shortest decimal string that reads back to the same binary64.
std::string format_double(double value);

/// RFC 4180 field: quoted when it holds a delimiter or a line break.
std::string csv_field(std::string_view text);

std::string report_to_json(const RootReport& report);
/// Throws InvalidArgument on malformed input or a version mismatch.
RootReport report_from_json(std::string_view text);
/// Header plus one row per candidate.
std::string report_to_csv(const RootReport& report);
std::string report_to_text(const RootReport& report);

std::string sweep_to_json(const std::string& function_text, const Interval& interval,
                          const std::vector<SweepRun>& runs);
std::vector<SweepRun> sweep_from_json(std::string_view text);
/// One row per (degree, candidate).
std::string sweep_to_csv(const std::vector<SweepRun>& runs);
std::string sweep_to_text(const std::vector<SweepRun>& runs);

std::string interp_to_json(const std::vector<InterpSample>& table);
std::string interp_to_csv(const std::vector<InterpSample>& table);

std::string bench_to_json(const BenchReport& report);
BenchReport bench_from_json(std::string_view text);
std::string bench_to_csv(const BenchReport& report);
std::string bench_to_text(const BenchReport& report);

}  // namespace chebroot
