#include "chebroot/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace chebroot {

RealFunction ParsedFunction::f() const {
  return [e = expr](double x) { return eval_expr(e, x); };
}

RealFunction ParsedFunction::df() const {
  if (!derivative) return {};
  return [d = *derivative](double x) { return eval_expr(d, x); };
}

ParsedFunction parse_function(const std::string& text) {
  ParsedFunction fn{text, parse(text), std::nullopt};
  try {
    fn.derivative = differentiate_expr(fn.expr);
  } catch (const UnsupportedDerivative&) {
    // Newton falls back to the proxy derivative.
  }
  return fn;
}

RootReport find_roots(const ParsedFunction& fn, const Interval& interval, const RootConfig& config) {
  return find_roots(fn.f(), interval, config, fn.df());
}

std::vector<SweepRun> run_sweep(const ParsedFunction& fn, const Interval& interval, const std::vector<int>& degrees,
                                const RootConfig& config) {
  if (degrees.empty()) throw InvalidArgument("run_sweep: no degrees given");
  std::vector<SweepRun> runs;
  runs.reserve(degrees.size());
  for (int n : degrees) {
    RootConfig c = config;
    c.degree = n;
    runs.push_back({n, find_roots(fn, interval, c)});
  }
  return runs;
}

std::vector<InterpSample> interp_table(const RealFunction& f, const Interval& interval, int nodes, int points) {
  if (nodes < 1) throw InvalidArgument("interp_table: need at least one node");
  if (points < 2) throw InvalidArgument("interp_table: need at least two grid points");
  const ChebyshevSeries proxy = interpolate(f, interval, static_cast<std::size_t>(nodes));
  std::vector<InterpSample> table;
  table.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const double x = i == points - 1 ? interval.upper() : interval.lower() + t * interval.width();
    table.push_back({x, f(x), proxy(x)});
  }
  return table;
}

std::vector<BenchCase> default_corpus() {
  const Interval box(-10.0, 10.0);
  constexpr double pi = std::numbers::pi;

  std::vector<double> cos_roots;
  for (int k = -2; k <= 3; ++k) cos_roots.push_back((2 * k - 1) * pi / 2.0);

  const double inner = std::sqrt((3.0 - std::sqrt(6.0)) / 2.0);
  const double outer = std::sqrt((3.0 + std::sqrt(6.0)) / 2.0);

  return {
      {"trigonometric", "cos(x)", box, {12, 13, 20, 30}, cos_roots, "odd multiples of pi/2 inside (-10, 10)"},
      {"exponential", "exp(x)", box, {8, 13, 20, 30}, std::vector<double>{}, "exp(x) > 0 everywhere"},
      {"gaussian_quartic",
       "exp(-0.5*x^2)*(12-48*x^2+16*x^4)",
       box,
       {10, 20, 30, 40},
       std::vector<double>{-outer, -inner, inner, outer},
       "x^2 = (3 +- sqrt(6)) / 2 from 4x^4 - 12x^2 + 3 = 0"},
  };
}

namespace {

double nearest_distance(double x, const std::vector<double>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (double y : set) best = std::min(best, std::abs(x - y));
  return best;
}

}  // namespace

BenchReport run_bench(const std::vector<BenchCase>& corpus, const RootConfig& base) {
  BenchReport report;
  for (const BenchCase& bc : corpus) {
    const ParsedFunction fn = parse_function(bc.function_text);
    const RealFunction f = fn.f();
    for (int n : bc.degree_sweep) {
      RootConfig config = base;
      config.degree = n;

      const auto start = std::chrono::steady_clock::now();
      const RootReport rr = find_roots(fn, bc.interval, config);
      const auto stop = std::chrono::steady_clock::now();

      BenchRow row;
      row.case_name = bc.name;
      row.function_text = bc.function_text;
      row.degree = n;
      row.accepted_roots = rr.roots.size();
      row.candidates = rr.candidates.size();
      row.roots = rr.roots;
      row.wall_seconds = std::chrono::duration<double>(stop - start).count();

      std::vector<double> unpolished;
      for (const auto& c : rr.candidates) {
        if (c.rejection_reason == RejectionReason::imag_too_large ||
            c.rejection_reason == RejectionReason::outside_box) {
          continue;
        }
        unpolished.push_back(bc.interval.from_standard(c.standard_coord.real()));
      }
      row.filter_accepted = unpolished.size();
      row.spurious_candidates = unpolished.size() - rr.roots.size();

      if (bc.oracle_roots) {
        const auto& oracle = *bc.oracle_roots;
        row.oracle_roots = oracle.size();
        double err = 0.0;
        for (double r : rr.roots) err = std::max(err, nearest_distance(r, oracle));
        for (double r : oracle) err = std::max(err, nearest_distance(r, rr.roots));
        if (std::isfinite(err)) row.max_root_error = err;
        row.oracle_match = rr.roots.size() == oracle.size() && std::isfinite(err) && err <= kOracleMatchTol;
        if (!unpolished.empty() && !oracle.empty()) {
          double u = 0.0;
          for (double r : unpolished) u = std::max(u, nearest_distance(r, oracle));
          row.unpolished_max_error = u;
        }
      }

      double proxy_err = 0.0;
      for (const auto& s : interp_table(f, bc.interval, n)) proxy_err = std::max(proxy_err, std::abs(s.f - s.proxy));
      row.proxy_max_error = proxy_err;

      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace chebroot
