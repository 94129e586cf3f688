#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebroot/errors.hpp"
#include "chebroot/experiments.hpp"
#include "chebroot/report_io.hpp"

namespace chebroot::cli {

namespace {

struct Options {
  std::string function;
  std::vector<double> interval;
  std::optional<int> degree;
  bool adaptive = false;
  std::vector<int> degrees;
  std::optional<double> imag_tol;
  std::optional<double> box_tol;
  std::optional<double> residual_tol;
  bool no_polish = false;
  std::string format;
  std::string output;
  std::string output_dir;
  bool allow_nonconverged = false;
  int points = 1001;
};

// Raised for conditions that map to exit code 2.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_function_options(CLI::App& sub, Options& o) {
  sub.add_option("--function", o.function, "Function of x, e.g. \"exp(-0.5*x^2)*(12-48*x^2+16*x^4)\"")
      ->required();
  sub.add_option("--interval", o.interval, "Interval endpoints A B")->expected(2)->required();
}

void add_config_options(CLI::App& sub, Options& o) {
  sub.add_option("--imag-tol", o.imag_tol, "Max |Im| of an accepted eigenvalue (default 1e-8)");
  sub.add_option("--box-tol", o.box_tol, "Accept |Re| <= 1 + box-tol (default 1e-6)");
  sub.add_option("--residual-tol", o.residual_tol, "Max |f| at an accepted root (default: scaled to max |f|)");
  sub.add_flag("--no-polish", o.no_polish, "Skip Newton polishing");
}

void add_degree_options(CLI::App& sub, Options& o) {
  auto* deg = sub.add_option("--degree", o.degree, "Number of Chebyshev nodes N")->check(CLI::Range(2, 1 << 20));
  auto* ada = sub.add_flag("--adaptive", o.adaptive, "Pick N by coefficient decay (default)");
  deg->excludes(ada);
  sub.add_flag("--allow-nonconverged", o.allow_nonconverged, "Exit 0 even if the adaptive proxy did not converge");
}

void add_output_options(CLI::App& sub, Options& o, std::string& format, std::vector<std::string> formats) {
  sub.add_option("--format", format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  sub.add_option("--output", o.output, "Write to this file instead of stdout");
}

RootConfig make_config(const Options& o) {
  RootConfig c;
  c.degree = o.degree;
  if (o.imag_tol) c.imag_tol = *o.imag_tol;
  if (o.box_tol) c.box_tol = *o.box_tol;
  c.residual_tol = o.residual_tol;
  c.polish = !o.no_polish;
  c.validate();
  return c;
}

Interval make_interval(const Options& o) { return Interval(o.interval.at(0), o.interval.at(1)); }

void emit(const Options& o, const std::string& payload, std::ostream& out) {
  if (o.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + o.output + "'");
  file << payload;
}

void check_converged(const Options& o, bool converged) {
  if (!converged && !o.allow_nonconverged) {
    throw NumericalFailure("adaptive proxy did not converge by N = 128 (pass --allow-nonconverged to accept)");
  }
}

void run_roots(const Options& o, std::ostream& out) {
  const ParsedFunction fn = parse_function(o.function);
  const RootReport report = find_roots(fn, make_interval(o), make_config(o));
  check_converged(o, report.proxy_converged);
  if (o.format == "json") {
    emit(o, report_to_json(report), out);
  } else if (o.format == "csv") {
    emit(o, report_to_csv(report), out);
  } else {
    emit(o, report_to_text(report), out);
  }
}

void run_sweep_cmd(const Options& o, std::ostream& out) {
  const ParsedFunction fn = parse_function(o.function);
  const Interval interval = make_interval(o);
  const std::vector<SweepRun> runs = run_sweep(fn, interval, o.degrees, make_config(o));
  if (o.format == "json") {
    emit(o, sweep_to_json(o.function, interval, runs), out);
  } else if (o.format == "csv") {
    emit(o, sweep_to_csv(runs), out);
  } else {
    emit(o, sweep_to_text(runs), out);
  }
}

void run_interp(const Options& o, std::ostream& out) {
  const ParsedFunction fn = parse_function(o.function);
  const Interval interval = make_interval(o);
  int nodes = 0;
  if (o.degree) {
    nodes = *o.degree;
  } else {
    const AdaptiveResult ar = adaptive_degree(fn.f(), interval, RootConfig{});
    check_converged(o, ar.converged);
    nodes = ar.nodes;
  }
  const std::vector<InterpSample> table = interp_table(fn.f(), interval, nodes, o.points);
  if (o.format == "json") {
    emit(o, interp_to_json(table), out);
  } else {
    emit(o, interp_to_csv(table), out);
  }
}

void run_bench_cmd(const Options& o, std::ostream& out) {
  RootConfig base;
  if (o.imag_tol) base.imag_tol = *o.imag_tol;
  if (o.box_tol) base.box_tol = *o.box_tol;
  base.residual_tol = o.residual_tol;
  base.polish = !o.no_polish;
  base.validate();

  const BenchReport report = run_bench(default_corpus(), base);
  if (!o.output_dir.empty()) {
    std::filesystem::create_directories(o.output_dir);
    const std::filesystem::path dir(o.output_dir);
    std::ofstream(dir / "bench.json", std::ios::binary) << bench_to_json(report);
    std::ofstream(dir / "bench.csv", std::ios::binary) << bench_to_csv(report);
  }
  if (o.format == "json") {
    emit(o, bench_to_json(report), out);
  } else if (o.format == "csv") {
    emit(o, bench_to_csv(report), out);
  } else {
    emit(o, bench_to_text(report), out);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global real rootfinding on an interval via Chebyshev interpolation", "chebroot"};
  app.require_subcommand(1);

  Options o;

  auto* roots = app.add_subcommand("roots", "Find all roots of one function");
  add_function_options(*roots, o);
  add_degree_options(*roots, o);
  add_config_options(*roots, o);
  std::string roots_format = "json";
  add_output_options(*roots, o, roots_format, {"json", "csv", "text"});

  auto* sweep = app.add_subcommand("sweep", "Root candidates for each N in a list");
  add_function_options(*sweep, o);
  sweep->add_option("--degrees", o.degrees, "Comma-separated node counts, e.g. 13,20,30")
      ->delimiter(',')
      ->required()
      ->check(CLI::Range(2, 1 << 20));
  add_config_options(*sweep, o);

  auto* interp = app.add_subcommand("interp", "Function vs Chebyshev proxy on a uniform grid");
  add_function_options(*interp, o);
  add_degree_options(*interp, o);
  interp->add_option("--points", o.points, "Grid points")->check(CLI::Range(2, 10000000))->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Run the built-in cos / exp / Gaussian-quartic corpus");
  add_config_options(*bench, o);
  bench->add_option("--output-dir", o.output_dir, "Also write bench.json and bench.csv here");

  std::string sweep_format = "csv";
  std::string interp_format = "csv";
  std::string bench_format = "json";
  add_output_options(*sweep, o, sweep_format, {"json", "csv", "text"});
  add_output_options(*interp, o, interp_format, {"json", "csv"});
  add_output_options(*bench, o, bench_format, {"json", "csv", "text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (roots->parsed()) {
      o.format = roots_format;
      run_roots(o, out);
    } else if (sweep->parsed()) {
      o.format = sweep_format;
      run_sweep_cmd(o, out);
    } else if (interp->parsed()) {
      o.format = interp_format;
      run_interp(o, out);
    } else if (bench->parsed()) {
      o.format = bench_format;
      run_bench_cmd(o, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (e.offset() <= o.function.size()) {
      err << "  " << o.function << "\n  " << std::string(e.offset(), ' ') << "^\n";
    }
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonFiniteSample& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace chebroot::cli
