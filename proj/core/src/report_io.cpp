#include "chebroot/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chebroot/errors.hpp"

namespace chebroot {

using nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

json config_json(const RootConfig& c) {
  return {
      {"degree", optional_json(c.degree)},
      {"imag_tol", c.imag_tol},
      {"box_tol", c.box_tol},
      {"chop_tol", c.chop_tol},
      {"adaptive_tol", c.adaptive_tol},
      {"max_adaptive_degree", c.max_adaptive_degree},
      {"polish", c.polish},
      {"polish_max_iter", c.polish_max_iter},
      {"residual_tol", optional_json(c.residual_tol)},
      {"dedupe_tol", c.dedupe_tol},
  };
}

RootConfig config_from(const json& j) {
  RootConfig c;
  c.degree = optional_from<int>(j, "degree");
  c.imag_tol = j.at("imag_tol").get<double>();
  c.box_tol = j.at("box_tol").get<double>();
  c.chop_tol = j.at("chop_tol").get<double>();
  c.adaptive_tol = j.at("adaptive_tol").get<double>();
  c.max_adaptive_degree = j.at("max_adaptive_degree").get<int>();
  c.polish = j.at("polish").get<bool>();
  c.polish_max_iter = j.at("polish_max_iter").get<int>();
  c.residual_tol = optional_from<double>(j, "residual_tol");
  c.dedupe_tol = j.at("dedupe_tol").get<double>();
  return c;
}

json report_json(const RootReport& r) {
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back({
        {"re", c.standard_coord.real()},
        {"im", c.standard_coord.imag()},
        {"accepted", c.accepted},
        {"reason", std::string(to_string(c.rejection_reason))},
        {"residual", optional_json(c.residual)},
        {"polish_iterations", c.polish_iterations},
        {"x", optional_json(c.mapped_coord)},
    });
  }
  json decay = json::array();
  for (std::size_t j = 0; j < r.coefficient_decay.abs_coeffs.size(); ++j) {
    decay.push_back({{"j", j}, {"abs_coeff", r.coefficient_decay.abs_coeffs[j]}});
  }
  return {
      {"version", kReportFormatVersion},
      {"config", config_json(r.config)},
      {"degree_used", r.degree_used},
      {"proxy_degree", r.proxy_degree},
      {"proxy_converged", r.proxy_converged},
      {"residual_tol", r.residual_tol},
      {"roots", r.roots},
      {"candidates", candidates},
      {"decay", decay},
      {"decay_slope", optional_json(r.coefficient_decay.slope)},
      {"function_evaluations", r.function_evaluations},
  };
}

RootReport report_from(const json& j) {
  RootReport r;
  r.config = config_from(j.at("config"));
  r.degree_used = j.at("degree_used").get<int>();
  r.proxy_degree = j.at("proxy_degree").get<int>();
  r.proxy_converged = j.at("proxy_converged").get<bool>();
  r.residual_tol = j.at("residual_tol").get<double>();
  r.roots = j.at("roots").get<std::vector<double>>();
  for (const auto& jc : j.at("candidates")) {
    RootCandidate c;
    c.standard_coord = {jc.at("re").get<double>(), jc.at("im").get<double>()};
    c.accepted = jc.at("accepted").get<bool>();
    c.rejection_reason = rejection_reason_from_string(jc.at("reason").get<std::string>());
    c.residual = optional_from<double>(jc, "residual");
    c.polish_iterations = jc.at("polish_iterations").get<int>();
    c.mapped_coord = optional_from<double>(jc, "x");
    r.candidates.push_back(c);
  }
  for (const auto& jd : j.at("decay")) r.coefficient_decay.abs_coeffs.push_back(jd.at("abs_coeff").get<double>());
  r.coefficient_decay.slope = optional_from<double>(j, "decay_slope");
  r.function_evaluations = j.at("function_evaluations").get<std::size_t>();
  return r;
}

json parse_versioned(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("version", -1) != kReportFormatVersion) {
    throw InvalidArgument("unsupported report version");
  }
  return j;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

constexpr std::string_view kCandidateHeader = "re,im,accepted,reason,residual,polish_iterations,x";

void candidate_row(std::ostringstream& os, const RootCandidate& c) {
  os << format_double(c.standard_coord.real()) << ',' << format_double(c.standard_coord.imag()) << ','
     << (c.accepted ? "true" : "false") << ',' << to_string(c.rejection_reason) << ',' << csv_optional(c.residual)
     << ',' << c.polish_iterations << ',' << csv_optional(c.mapped_coord) << "\r\n";
}

}  // namespace

std::string report_to_json(const RootReport& report) { return report_json(report).dump(2) + "\n"; }

RootReport report_from_json(std::string_view text) {
  const json j = parse_versioned(text);
  return guarded([&] { return report_from(j); });
}

std::string report_to_csv(const RootReport& report) {
  std::ostringstream os;
  os << kCandidateHeader << "\r\n";
  for (const auto& c : report.candidates) candidate_row(os, c);
  return os.str();
}

std::string report_to_text(const RootReport& report) {
  std::ostringstream os;
  os << "nodes: " << report.degree_used << " (proxy degree " << report.proxy_degree << ")"
     << (report.proxy_converged ? "" : " [proxy not converged]") << "\n";
  os << "candidates: " << report.candidates.size() << "\n";
  os << "roots: " << report.roots.size() << "\n";
  for (double r : report.roots) os << "  " << format_double(r) << "\n";
  os << "function evaluations: " << report.function_evaluations << "\n";
  return os.str();
}

std::string sweep_to_json(const std::string& function_text, const Interval& interval,
                          const std::vector<SweepRun>& runs) {
  json jr = json::array();
  for (const auto& run : runs) jr.push_back({{"degree", run.degree}, {"report", report_json(run.report)}});
  json j = {
      {"version", kReportFormatVersion},
      {"function", function_text},
      {"interval", {interval.lower(), interval.upper()}},
      {"runs", jr},
  };
  return j.dump(2) + "\n";
}

std::vector<SweepRun> sweep_from_json(std::string_view text) {
  const json j = parse_versioned(text);
  return guarded([&] {
    std::vector<SweepRun> runs;
    for (const auto& jr : j.at("runs")) runs.push_back({jr.at("degree").get<int>(), report_from(jr.at("report"))});
    return runs;
  });
}

std::string sweep_to_csv(const std::vector<SweepRun>& runs) {
  std::ostringstream os;
  os << "degree," << kCandidateHeader << "\r\n";
  for (const auto& run : runs) {
    for (const auto& c : run.report.candidates) {
      os << run.degree << ',';
      candidate_row(os, c);
    }
  }
  return os.str();
}

std::string sweep_to_text(const std::vector<SweepRun>& runs) {
  std::ostringstream os;
  for (const auto& run : runs) {
    std::size_t filtered = 0;
    for (const auto& c : run.report.candidates) {
      if (c.rejection_reason != RejectionReason::imag_too_large &&
          c.rejection_reason != RejectionReason::outside_box) {
        ++filtered;
      }
    }
    os << "N=" << run.degree << ": " << run.report.candidates.size() << " eigenvalues, " << filtered
       << " pass filter, " << run.report.roots.size() << " roots:";
    for (double r : run.report.roots) os << ' ' << format_double(r);
    os << "\n";
  }
  return os.str();
}

std::string interp_to_json(const std::vector<InterpSample>& table) {
  json rows = json::array();
  for (const auto& s : table) rows.push_back({{"x", s.x}, {"f", s.f}, {"proxy", s.proxy}, {"error", s.f - s.proxy}});
  return json{{"version", kReportFormatVersion}, {"samples", rows}}.dump(2) + "\n";
}

std::string interp_to_csv(const std::vector<InterpSample>& table) {
  std::ostringstream os;
  os << "x,f,proxy,error\r\n";
  for (const auto& s : table) {
    os << format_double(s.x) << ',' << format_double(s.f) << ',' << format_double(s.proxy) << ','
       << format_double(s.f - s.proxy) << "\r\n";
  }
  return os.str();
}

namespace {

json bench_row_json(const BenchRow& r) {
  return {
      {"case", r.case_name},
      {"function", r.function_text},
      {"degree", r.degree},
      {"accepted_roots", r.accepted_roots},
      {"candidates", r.candidates},
      {"filter_accepted", r.filter_accepted},
      {"spurious_candidates", r.spurious_candidates},
      {"oracle_roots", optional_json(r.oracle_roots)},
      {"max_root_error", optional_json(r.max_root_error)},
      {"unpolished_max_error", optional_json(r.unpolished_max_error)},
      {"oracle_match", optional_json(r.oracle_match)},
      {"proxy_max_error", r.proxy_max_error},
      {"wall_seconds", r.wall_seconds},
      {"roots", r.roots},
  };
}

BenchRow bench_row_from(const json& j) {
  BenchRow r;
  r.case_name = j.at("case").get<std::string>();
  r.function_text = j.at("function").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.accepted_roots = j.at("accepted_roots").get<std::size_t>();
  r.candidates = j.at("candidates").get<std::size_t>();
  r.filter_accepted = j.at("filter_accepted").get<std::size_t>();
  r.spurious_candidates = j.at("spurious_candidates").get<std::size_t>();
  r.oracle_roots = optional_from<std::size_t>(j, "oracle_roots");
  r.max_root_error = optional_from<double>(j, "max_root_error");
  r.unpolished_max_error = optional_from<double>(j, "unpolished_max_error");
  r.oracle_match = optional_from<bool>(j, "oracle_match");
  r.proxy_max_error = j.at("proxy_max_error").get<double>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  r.roots = j.at("roots").get<std::vector<double>>();
  return r;
}

}  // namespace

std::string bench_to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) rows.push_back(bench_row_json(r));
  return json{{"version", kReportFormatVersion}, {"rows", rows}}.dump(2) + "\n";
}

BenchReport bench_from_json(std::string_view text) {
  const json j = parse_versioned(text);
  return guarded([&] {
    BenchReport report;
    for (const auto& jr : j.at("rows")) report.rows.push_back(bench_row_from(jr));
    return report;
  });
}

std::string bench_to_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "case,function,degree,accepted_roots,candidates,filter_accepted,spurious_candidates,oracle_roots,"
        "max_root_error,unpolished_max_error,oracle_match,proxy_max_error,wall_seconds\r\n";
  for (const auto& r : report.rows) {
    os << csv_field(r.case_name) << ',' << csv_field(r.function_text) << ',' << r.degree << ',' << r.accepted_roots
       << ',' << r.candidates << ',' << r.filter_accepted << ',' << r.spurious_candidates << ','
       << (r.oracle_roots ? std::to_string(*r.oracle_roots) : std::string()) << ','
       << csv_optional(r.max_root_error) << ',' << csv_optional(r.unpolished_max_error) << ','
       << (r.oracle_match ? (*r.oracle_match ? "true" : "false") : "") << ',' << format_double(r.proxy_max_error)
       << ',' << format_double(r.wall_seconds) << "\r\n";
  }
  return os.str();
}

std::string bench_to_text(const BenchReport& report) {
  std::ostringstream os;
  for (const auto& r : report.rows) {
    os << r.case_name << " N=" << r.degree << ": " << r.accepted_roots << " roots";
    if (r.oracle_roots) os << " (oracle " << *r.oracle_roots << ")";
    if (r.max_root_error) os << ", max error " << format_double(*r.max_root_error);
    os << ", " << r.spurious_candidates << " spurious, proxy error " << format_double(r.proxy_max_error);
    if (r.oracle_match) os << (*r.oracle_match ? "  [match]" : "  [MISMATCH]");
    os << "\n";
  }
  return os.str();
}

}  // namespace chebroot
