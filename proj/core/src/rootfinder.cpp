#include "chebroot/rootfinder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "chebroot/errors.hpp"

namespace chebroot {

namespace {

constexpr std::array<std::pair<RejectionReason, std::string_view>, 6> kReasonNames{{
    {RejectionReason::none, "none"},
    {RejectionReason::imag_too_large, "imag_too_large"},
    {RejectionReason::outside_box, "outside_box"},
    {RejectionReason::residual_too_large, "residual_too_large"},
    {RejectionReason::newton_diverged, "newton_diverged"},
    {RejectionReason::duplicate, "duplicate"},
}};

// cbrt(eps): balances truncation and rounding error of a central difference.
const double kDiffStep = std::cbrt(std::numeric_limits<double>::epsilon());

void reject(RootCandidate& c, RejectionReason reason) {
  c.accepted = false;
  c.rejection_reason = reason;
  c.mapped_coord.reset();
}

struct Proxy {
  ChebyshevSeries raw;
  ChebyshevSeries chopped;
  int nodes;
  bool converged;
  double sample_scale;
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Proxy sample_proxy(const RealFunction& f, const Interval& interval, std::size_t n, double chop_tol) {
  const std::vector<double> xs = mapped_nodes(interval, n);
  std::vector<double> samples;
  samples.reserve(n);
  for (double x : xs) samples.push_back(f(x));
  ChebyshevSeries raw = transform(samples, interval);
  ChebyshevSeries chopped = chop(raw, chop_tol);
  return {std::move(raw), std::move(chopped), static_cast<int>(n), true, max_abs(samples)};
}

bool tail_resolved(std::span<const double> a, double tol) {
  constexpr std::size_t tail = 8;
  if (a.size() < tail) return false;
  const double cutoff = tol * max_abs(a);
  return std::all_of(a.end() - tail, a.end(), [&](double v) { return std::abs(v) <= cutoff; });
}

Proxy adaptive_proxy(const RealFunction& f, const Interval& interval, const RootConfig& config) {
  const auto cap = static_cast<std::size_t>(config.max_adaptive_degree);
  std::size_t n = std::min<std::size_t>(16, cap);
  while (true) {
    Proxy p = sample_proxy(f, interval, n, config.chop_tol);
    if (tail_resolved(p.raw.coeffs(), config.adaptive_tol)) return p;
    if (2 * n > cap) {
      p.converged = false;
      return p;
    }
    n *= 2;
  }
}

}  // namespace

std::string_view to_string(RejectionReason reason) noexcept {
  for (const auto& [r, name] : kReasonNames) {
    if (r == reason) return name;
  }
  return "unknown";
}

RejectionReason rejection_reason_from_string(std::string_view name) {
  for (const auto& [r, n] : kReasonNames) {
    if (n == name) return r;
  }
  throw InvalidArgument("unknown rejection reason '" + std::string(name) + "'");
}

void RootConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
  };
  if (degree && *degree < 2) throw InvalidArgument("degree must be at least 2");
  positive(imag_tol, "imag_tol");
  positive(box_tol, "box_tol");
  positive(chop_tol, "chop_tol");
  positive(adaptive_tol, "adaptive_tol");
  positive(dedupe_tol, "dedupe_tol");
  if (residual_tol) positive(*residual_tol, "residual_tol");
  if (max_adaptive_degree < 2) throw InvalidArgument("max_adaptive_degree must be at least 2");
  if (polish_max_iter < 1) throw InvalidArgument("polish_max_iter must be at least 1");
}

double effective_residual_tol(const RootConfig& config, double sample_scale) noexcept {
  if (config.residual_tol) return *config.residual_tol;
  return std::max(1e-10, 1e-8 * sample_scale);
}

std::vector<RootCandidate> filter_candidates(const Spectrum& spectrum, const RootConfig& config) {
  std::vector<RootCandidate> out;
  out.reserve(spectrum.eigenvalues.size());
  for (const auto& z : spectrum.eigenvalues) {
    RootCandidate c;
    c.standard_coord = z;
    c.accepted = true;
    if (!(std::abs(z.imag()) <= config.imag_tol)) {
      reject(c, RejectionReason::imag_too_large);
    } else if (!(std::abs(z.real()) <= 1.0 + config.box_tol)) {
      reject(c, RejectionReason::outside_box);
    }
    out.push_back(c);
  }
  return out;
}

PolishResult newton_polish(const RealFunction& f, const RealFunction& df, double x0, const Interval& interval,
                           int max_iter) {
  const double kStallTol = std::sqrt(std::numeric_limits<double>::epsilon());
  const double eps = std::numeric_limits<double>::epsilon();
  const double margin = 0.1 * interval.width();
  const double lo = interval.lower() - margin;
  const double hi = interval.upper() + margin;

  PolishResult result;
  double x = x0;
  double fx = f(x);
  double best_x = x;
  double best_f = std::abs(fx);
  double prev = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= max_iter; ++it) {
    result.iterations = it;
    if (!std::isfinite(fx)) {
      result.diverged = true;
      break;
    }
    double dx = 0.0;
    if (fx != 0.0) {
      const double d = df(x);
      if (!(std::abs(d) >= 1e-300) || !std::isfinite(d)) {
        result.diverged = true;
        break;
      }
      dx = fx / d;
    }
    result.last_correction = dx;
    if (std::abs(dx) >= std::abs(prev)) {
      // Corrections stopped shrinking. That is convergence only once they are
      // at noise level; a stall at a large step (e.g. exp, dx = 1) is not.
      result.converged = std::abs(dx) <= kStallTol * std::max(1.0, std::abs(x));
      break;
    }
    const double next = x - dx;
    if (!(next >= lo && next <= hi)) {
      result.diverged = true;
      break;
    }
    x = next;
    fx = dx == 0.0 ? fx : f(x);
    if (std::abs(fx) <= best_f) {
      best_f = std::abs(fx);
      best_x = x;
    }
    prev = dx;
    if (std::abs(dx) <= 4.0 * eps * std::max(1.0, std::abs(x))) {
      result.converged = true;
      break;
    }
  }
  result.x = best_x;
  return result;
}

AdaptiveResult adaptive_degree(const RealFunction& f, const Interval& interval, const RootConfig& config) {
  std::size_t evaluations = 0;
  const RealFunction counted = [&](double x) {
    ++evaluations;
    return f(x);
  };
  Proxy p = adaptive_proxy(counted, interval, config);
  return {std::move(p.chopped), p.nodes, p.converged, p.sample_scale, evaluations};
}

std::vector<RootCandidate> residual_reject(std::vector<RootCandidate> candidates, double residual_tol) {
  for (auto& c : candidates) {
    if (!c.accepted) continue;
    if (!c.residual || !(*c.residual <= residual_tol)) reject(c, RejectionReason::residual_too_large);
  }
  return candidates;
}

std::vector<RootCandidate> residual_reject(std::vector<RootCandidate> candidates, const RealFunction& f,
                                           const RootConfig& config, double sample_scale) {
  for (auto& c : candidates) {
    if (c.accepted && c.mapped_coord) c.residual = std::abs(f(*c.mapped_coord));
  }
  return residual_reject(std::move(candidates), effective_residual_tol(config, sample_scale));
}

std::vector<double> dedupe_and_sort(std::vector<RootCandidate>& candidates, const Interval& interval,
                                    const RootConfig& config) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].accepted && candidates[i].mapped_coord) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return *candidates[i].mapped_coord < *candidates[j].mapped_coord;
  });

  const double radius = config.dedupe_tol * interval.width();
  auto residual_of = [&](std::size_t i) {
    return candidates[i].residual.value_or(std::numeric_limits<double>::infinity());
  };

  std::vector<std::size_t> kept;
  for (std::size_t i : idx) {
    if (!kept.empty() && *candidates[i].mapped_coord - *candidates[kept.back()].mapped_coord < radius) {
      if (residual_of(i) < residual_of(kept.back())) {
        reject(candidates[kept.back()], RejectionReason::duplicate);
        kept.back() = i;
      } else {
        reject(candidates[i], RejectionReason::duplicate);
      }
      continue;
    }
    kept.push_back(i);
  }

  std::vector<double> roots;
  roots.reserve(kept.size());
  for (std::size_t i : kept) roots.push_back(*candidates[i].mapped_coord);
  return roots;
}

RootReport find_roots(const RealFunction& f, const Interval& interval, const RootConfig& config,
                      const RealFunction& df) {
  config.validate();

  RootReport report;
  report.config = config;
  std::size_t evaluations = 0;
  const RealFunction counted = [&](double x) {
    ++evaluations;
    return f(x);
  };

  Proxy proxy = config.degree
                    ? sample_proxy(counted, interval, static_cast<std::size_t>(*config.degree), config.chop_tol)
                    : adaptive_proxy(counted, interval, config);

  report.degree_used = proxy.nodes;
  report.proxy_degree = static_cast<int>(proxy.chopped.degree());
  report.proxy_converged = proxy.converged;
  if (proxy.raw.size() >= 4) {
    report.coefficient_decay = coefficient_decay(proxy.raw);
  } else {
    for (double a : proxy.raw.coeffs()) report.coefficient_decay.abs_coeffs.push_back(std::abs(a));
  }
  report.residual_tol = effective_residual_tol(config, proxy.sample_scale);

  const ChebyshevSeries& series = proxy.chopped;
  Spectrum spectrum;
  if (series.degree() == 1) {
    // The colleague-matrix formula degenerates for N = 1; a_0 + a_1 x = 0 directly.
    spectrum.eigenvalues.push_back({-series.coeffs()[0] / series.coeffs()[1], 0.0});
    spectrum.converged.push_back(true);
  } else if (series.degree() >= 2) {
    spectrum = eigenvalues(build_frobenius(series));
  }

  std::vector<RootCandidate> candidates = filter_candidates(spectrum, config);

  RealFunction derivative = df;
  if (!derivative) {
    // Central differences of f itself. The proxy derivative is only used where
    // f cannot be sampled on both sides of x.
    derivative = [&counted, d = differentiate(series)](double x) {
      const double h = kDiffStep * std::max(1.0, std::abs(x));
      const double slope = (counted(x + h) - counted(x - h)) / (2.0 * h);
      return std::isfinite(slope) ? slope : d(x);
    };
  }

  const double slack = config.box_tol * interval.width() / 2.0;
  for (auto& c : candidates) {
    if (!c.accepted) continue;
    double x = interval.from_standard(c.standard_coord.real());
    if (config.polish) {
      const PolishResult polished = newton_polish(counted, derivative, x, interval, config.polish_max_iter);
      c.polish_iterations = polished.iterations;
      if (polished.diverged || !polished.converged) {
        c.residual = std::abs(counted(polished.x));
        reject(c, RejectionReason::newton_diverged);
        continue;
      }
      x = polished.x;
    }
    if (x < interval.lower()) {
      if (x < interval.lower() - slack) {
        reject(c, RejectionReason::newton_diverged);
        continue;
      }
      x = interval.lower();
    } else if (x > interval.upper()) {
      if (x > interval.upper() + slack) {
        reject(c, RejectionReason::newton_diverged);
        continue;
      }
      x = interval.upper();
    }
    c.mapped_coord = x;
  }

  candidates = residual_reject(std::move(candidates), counted, config, proxy.sample_scale);
  report.roots = dedupe_and_sort(candidates, interval, config);
  report.candidates = std::move(candidates);
  report.function_evaluations = evaluations;
  return report;
}

}  // namespace chebroot
