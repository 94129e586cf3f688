#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chebroot/expression.hpp"
#include "chebroot/interval.hpp"
#include "chebroot/rootfinder.hpp"

namespace chebroot {

/// A parsed user function with its symbolic derivative when one exists
/// (expressions using abs fall back to the proxy derivative).
struct ParsedFunction {
  std::string text;
  Expression expr;
  std::optional<Expression> derivative;

  RealFunction f() const;
  RealFunction df() const;  // empty when derivative is absent
};

/// Throws ParseError.
ParsedFunction parse_function(const std::string& text);

RootReport find_roots(const ParsedFunction& fn, const Interval& interval, const RootConfig& config = {});

struct SweepRun {
  int degree = 0;
  RootReport report;

  friend bool operator==(const SweepRun&, const SweepRun&) = default;
};

/// One fixed-degree run per entry of `degrees`; the config's degree is overridden.
std::vector<SweepRun> run_sweep(const ParsedFunction& fn, const Interval& interval, const std::vector<int>& degrees,
                                const RootConfig& config = {});

struct InterpSample {
  double x = 0.0;
  double f = 0.0;
  double proxy = 0.0;
};

/// True function against its degree-(n-1) interpolant on a uniform grid of
/// `points` points spanning the interval (endpoints included).
std::vector<InterpSample> interp_table(const RealFunction& f, const Interval& interval, int nodes, int points = 1001);

struct BenchCase {
  std::string name;
  std::string function_text;
  Interval interval;
  std::vector<int> degree_sweep;
  std::optional<std::vector<double>> oracle_roots;
  std::string oracle_note;
};

/// The built-in cases on [-10, 10], each with its own degree sweep.
std::vector<BenchCase> default_corpus();

struct BenchRow {
  std::string case_name;
  std::string function_text;
  int degree = 0;
  std::size_t accepted_roots = 0;
  std::size_t candidates = 0;
  std::size_t filter_accepted = 0;
  std::size_t spurious_candidates = 0;  // passed the eigenvalue filter but not kept as roots
  std::optional<std::size_t> oracle_roots;
  std::optional<double> max_root_error;        // symmetric distance, polished roots vs oracle
  std::optional<double> unpolished_max_error;  // filter-accepted eigenvalues vs nearest oracle root
  std::optional<bool> oracle_match;
  double proxy_max_error = 0.0;  // 1001-point uniform grid
  double wall_seconds = 0.0;
  std::vector<double> roots;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Roots within this distance of the oracle count as a match.
inline constexpr double kOracleMatchTol = 1e-8;

/// Oracle mismatches are recorded in the rows, never thrown.
BenchReport run_bench(const std::vector<BenchCase>& corpus, const RootConfig& base = {});

}  // namespace chebroot
