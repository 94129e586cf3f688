#include "chebroot/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chebroot {

std::vector<double> standard_nodes(std::size_t n) {
  if (n == 0) throw InvalidArgument("standard_nodes: n must be positive");
  std::vector<double> nodes(n);
  const double denom = 2.0 * static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    nodes[k - 1] = std::cos(std::numbers::pi * static_cast<double>(2 * k - 1) / denom);
  }
  // cos(pi/2) evaluates to 6e-17; the middle node of odd n is exactly zero.
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

std::vector<double> mapped_nodes(const Interval& interval, std::size_t n) {
  std::vector<double> nodes = standard_nodes(n);
  for (double& x : nodes) x = interval.from_standard(x);
  return nodes;
}

ChebyshevSeries::ChebyshevSeries(Interval interval, std::vector<double> coeffs)
    : interval_(interval), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("ChebyshevSeries: no coefficients");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidArgument("ChebyshevSeries: non-finite coefficient");
  }
}

double ChebyshevSeries::operator()(double x) const noexcept {
  const double t = interval_.to_standard(x);
  const double two_t = 2.0 * t;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) {
    const double b0 = coeffs_[j] + two_t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + t * b1 - b2;
}

double evaluate(const ChebyshevSeries& series, double x) noexcept { return series(x); }

ChebyshevSeries transform(std::span<const double> samples, const Interval& interval) {
  const std::size_t n = samples.size();
  if (n == 0) throw InvalidArgument("transform: empty sample list");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(samples[k])) {
      throw NonFiniteSample(k, interval.from_standard(standard_nodes(n)[k]), samples[k]);
    }
  }

  const double denom = 2.0 * static_cast<double>(n);
  std::vector<double> coeffs(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      // Reduce j(2k-1) mod 4n before scaling so the angle stays in [0, 2pi).
      const std::size_t m = (j * (2 * k - 1)) % (4 * n);
      sum += samples[k - 1] * std::cos(std::numbers::pi * static_cast<double>(m) / denom);
    }
    coeffs[j] = (j == 0 ? 1.0 : 2.0) * sum / static_cast<double>(n);
  }
  return ChebyshevSeries(interval, std::move(coeffs));
}

ChebyshevSeries differentiate(const ChebyshevSeries& series) {
  const auto a = series.coeffs();
  const std::size_t n = a.size();
  if (n == 1) return ChebyshevSeries(series.interval(), {0.0});

  // c_{j-1} = c_{j+1} + 2 j a_j, c_{n-1} = c_n = 0, c_0 halved at the end.
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t j = n - 1; j >= 1; --j) {
    c[j - 1] = c[j + 1] + 2.0 * static_cast<double>(j) * a[j];
  }
  c[0] *= 0.5;
  c.resize(n - 1);
  const double scale = 2.0 / series.interval().width();
  for (double& v : c) v *= scale;
  return ChebyshevSeries(series.interval(), std::move(c));
}

ChebyshevSeries chop(const ChebyshevSeries& series, double tol) {
  const auto a = series.coeffs();
  double max_abs = 0.0;
  for (double v : a) max_abs = std::max(max_abs, std::abs(v));
  const double cutoff = tol * max_abs;
  std::size_t keep = a.size();
  while (keep > 1 && std::abs(a[keep - 1]) <= cutoff) --keep;
  return ChebyshevSeries(series.interval(), std::vector<double>(a.begin(), a.begin() + keep));
}

DecayProfile coefficient_decay(const ChebyshevSeries& series, double noise_floor) {
  const auto a = series.coeffs();
  if (a.size() < 4) throw InvalidArgument("coefficient_decay: need at least 4 coefficients");

  DecayProfile profile;
  profile.abs_coeffs.reserve(a.size());
  double max_abs = 0.0;
  for (double v : a) {
    profile.abs_coeffs.push_back(std::abs(v));
    max_abs = std::max(max_abs, std::abs(v));
  }

  const double floor = noise_floor * max_abs;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = 1; j < a.size(); ++j) {
    if (profile.abs_coeffs[j] > floor) {
      pts.emplace_back(std::log(static_cast<double>(j)), std::log(profile.abs_coeffs[j]));
    }
  }
  if (pts.size() < 2) return profile;

  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  profile.slope = sxy / sxx;
  return profile;
}

}  // namespace chebroot
