#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "chebroot/chebyshev.hpp"
#include "chebroot/companion.hpp"
#include "chebroot/interval.hpp"

namespace chebroot {

using RealFunction = std::function<double(double)>;

enum class RejectionReason {
  none,
  imag_too_large,
  outside_box,
  residual_too_large,
  newton_diverged,
  duplicate,
};

std::string_view to_string(RejectionReason reason) noexcept;
/// Inverse of to_string; throws InvalidArgument for an unknown name.
RejectionReason rejection_reason_from_string(std::string_view name);

/// One eigenvalue of the colleague matrix and what became of it.
struct RootCandidate {
  std::complex<double> standard_coord;
  std::optional<double> mapped_coord;  // set only when accepted
  bool accepted = false;
  RejectionReason rejection_reason = RejectionReason::none;
  std::optional<double> residual;  // |f| at the final real location, when there is one
  int polish_iterations = 0;

  friend bool operator==(const RootCandidate&, const RootCandidate&) = default;
};

struct RootConfig {
  std::optional<int> degree;  // number of interpolation nodes N; empty = adaptive
  double imag_tol = 1e-8;
  double box_tol = 1e-6;
  double chop_tol = 1e-13;
  double adaptive_tol = 1e-12;
  int max_adaptive_degree = 128;
  bool polish = true;
  int polish_max_iter = 12;
  std::optional<double> residual_tol;  // empty = max(1e-10, 1e-8 * max|f(x_k)|)
  double dedupe_tol = 1e-9;  // relative to interval width

  /// Throws InvalidArgument on a non-positive tolerance or a fixed degree < 2.
  void validate() const;

  friend bool operator==(const RootConfig&, const RootConfig&) = default;
};

struct RootReport {
  std::vector<double> roots;
  std::vector<RootCandidate> candidates;
  int degree_used = 0;    // number of nodes N the proxy was built from
  int proxy_degree = 0;   // degree of the chopped proxy
  bool proxy_converged = true;
  double residual_tol = 0.0;  // the tolerance actually applied
  DecayProfile coefficient_decay;
  std::size_t function_evaluations = 0;
  RootConfig config;

  friend bool operator==(const RootReport&, const RootReport&) = default;
};

/// Pipeline: sample at mapped nodes, transform, chop, colleague matrix,
/// eigenvalues, filter, map back, Newton polish, residual check, dedupe, sort.
/// When `df` is empty Newton uses the derivative of the proxy.
/// Throws NonFiniteSample if f is not finite at a node.
RootReport find_roots(const RealFunction& f, const Interval& interval, const RootConfig& config = {},
                      const RealFunction& df = {});

/// Every eigenvalue becomes a candidate. Accepted iff |im| <= imag_tol and
/// |re| <= 1 + box_tol; the imaginary test is applied first.
std::vector<RootCandidate> filter_candidates(const Spectrum& spectrum, const RootConfig& config);

struct PolishResult {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;  // derivative underflow or the iterate left [a - w, b + w], w = 0.1 (b-a)
  double last_correction = 0.0;
};

/// Newton iteration. Stops when |dx| <= 4 eps max(1, |x|) (the step is
/// applied), when |dx_n| >= |dx_{n-1}| (the step is not applied), or after
/// max_iter corrections. Returns the iterate with the smallest |f| seen.
PolishResult newton_polish(const RealFunction& f, const RealFunction& df, double x0, const Interval& interval,
                           int max_iter);

struct AdaptiveResult {
  ChebyshevSeries series;  // chopped
  int nodes = 0;
  bool converged = false;
  double sample_scale = 0.0;  // max |f(x_k)| at the final node set
  std::size_t function_evaluations = 0;
};

/// Transform at N = 16, 32, 64, ... up to max_adaptive_degree, stopping at the
/// first N whose trailing eight coefficients are below adaptive_tol * max|a_j|.
AdaptiveResult adaptive_degree(const RealFunction& f, const Interval& interval, const RootConfig& config);

/// Accepted candidates with residual above tol flip to residual_too_large.
/// Candidates are expected to carry their residual already.
std::vector<RootCandidate> residual_reject(std::vector<RootCandidate> candidates, double residual_tol);

/// Overload that evaluates f at each accepted candidate's mapped location.
std::vector<RootCandidate> residual_reject(std::vector<RootCandidate> candidates, const RealFunction& f,
                                           const RootConfig& config, double sample_scale);

/// Sort accepted locations and merge those closer than dedupe_tol * width,
/// keeping the smaller residual. Merged-away candidates become `duplicate`.
std::vector<double> dedupe_and_sort(std::vector<RootCandidate>& candidates, const Interval& interval,
                                    const RootConfig& config);

/// max(1e-10, 1e-8 * sample_scale) unless the config pins a value.
double effective_residual_tol(const RootConfig& config, double sample_scale) noexcept;

}  // namespace chebroot
