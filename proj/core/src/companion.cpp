#include "chebroot/companion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chebroot {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : order_(rows.size()), entries_() {
  entries_.reserve(order_ * order_);
  for (const auto& row : rows) {
    if (row.size() != order_) throw InvalidArgument("DenseMatrix: rows must form a square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

double DenseMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
  return t;
}

FrobeniusMatrix build_frobenius(const ChebyshevSeries& series) {
  const std::size_t n = series.degree();
  if (n == 0) throw InvalidArgument("build_frobenius: series has degree 0");
  const auto a = series.coeffs();
  const double lead = a[n];
  if (lead == 0.0) {
    throw DegenerateLeadingCoefficient("build_frobenius: leading coefficient is zero");
  }

  DenseMatrix m(n);
  if (n >= 2) m(0, 1) = 1.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    m(j, j - 1) = 0.5;
    m(j, j + 1) = 0.5;
  }
  const std::size_t last = n - 1;
  for (std::size_t k = 0; k < n; ++k) m(last, k) = -a[k] / (2.0 * lead);
  if (n >= 2) m(last, n - 2) += 0.5;
  return FrobeniusMatrix(std::move(m));
}

bool Spectrum::all_converged() const noexcept {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

namespace {

using Rows = std::vector<std::vector<double>>;

// Diagonal similarity scaling by powers of two (Parlett-Reinsch).
void balance(Rows& h) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = h.size();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(h[j][i]);
        r += std::abs(h[i][j]);
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) h[i][j] *= g;
        for (std::size_t j = 0; j < n; ++j) h[j][i] *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form.
void to_hessenberg(Rows& h) {
  const std::size_t n = h.size();
  if (n < 3) return;
  std::vector<double> ort(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i < n; ++i) scale += std::abs(h[i][m - 1]);
    if (scale == 0.0) continue;

    double hh = 0.0;
    for (std::size_t i = n; i-- > m;) {
      ort[i] = h[i][m - 1] / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;

    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = n; i-- > m;) f += ort[i] * h[i][j];
      f /= hh;
      for (std::size_t i = m; i < n; ++i) h[i][j] -= f * ort[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      for (std::size_t j = n; j-- > m;) f += ort[j] * h[i][j];
      f /= hh;
      for (std::size_t j = m; j < n; ++j) h[i][j] -= f * ort[j];
    }
    h[m][m - 1] = scale * g;
    for (std::size_t i = m + 1; i < n; ++i) h[i][m - 1] = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
void hessenberg_qr(Rows& h, std::vector<std::complex<double>>& eig, std::vector<bool>& converged) {
  const int size = static_cast<int>(h.size());
  const double eps = std::numeric_limits<double>::epsilon();
  const long max_sweeps = 30L * size;

  double norm = 0.0;
  for (int i = 0; i < size; ++i) {
    for (int j = std::max(i - 1, 0); j < size; ++j) norm += std::abs(h[i][j]);
  }

  int n = size - 1;
  int iter = 0;
  long sweeps = 0;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, w = 0, x = 0, y = 0;

  while (n >= 0) {
    int l = n;
    while (l > 0) {
      s = std::abs(h[l - 1][l - 1]) + std::abs(h[l][l]);
      if (s == 0.0) s = norm;
      if (std::abs(h[l][l - 1]) <= eps * s) break;
      --l;
    }

    if (l == n) {
      eig[n] = {h[n][n] + exshift, 0.0};
      converged[n] = true;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = h[n][n - 1] * h[n - 1][n];
      p = (h[n - 1][n - 1] - h[n][n]) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      x = h[n][n] + exshift;
      if (q >= 0) {
        z = (p >= 0) ? p + z : p - z;
        eig[n - 1] = {x + z, 0.0};
        eig[n] = {z != 0.0 ? x - w / z : x + z, 0.0};
      } else {
        eig[n - 1] = {x + p, z};
        eig[n] = {x + p, -z};
      }
      converged[n - 1] = converged[n] = true;
      n -= 2;
      iter = 0;
    } else {
      if (sweeps >= max_sweeps) break;
      ++sweeps;

      x = h[n][n];
      y = h[n - 1][n - 1];
      w = h[n][n - 1] * h[n - 1][n];

      // Exceptional shifts break cycles that the standard shift can fall into.
      if (iter == 10) {
        exshift += x;
        for (int i = 0; i <= n; ++i) h[i][i] -= x;
        s = std::abs(h[n][n - 1]) + std::abs(h[n - 1][n - 2]);
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      if (iter == 30) {
        s = (y - x) / 2.0;
        s = s * s + w;
        if (s > 0) {
          s = std::sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / 2.0 + s);
          for (int i = 0; i <= n; ++i) h[i][i] -= s;
          exshift += s;
          x = y = w = 0.964;
        }
      }
      ++iter;

      int m = n - 2;
      while (m >= l) {
        z = h[m][m];
        r = x - z;
        s = y - z;
        p = (r * s - w) / h[m + 1][m] + h[m][m + 1];
        q = h[m + 1][m + 1] - z - r - s;
        r = h[m + 2][m + 1];
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h[m][m - 1]) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) * (std::abs(h[m - 1][m - 1]) + std::abs(z) + std::abs(h[m + 1][m + 1])))) {
          break;
        }
        --m;
      }

      for (int i = m + 2; i <= n; ++i) {
        h[i][i - 2] = 0.0;
        if (i > m + 2) h[i][i - 3] = 0.0;
      }

      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h[k][k - 1];
          q = h[k + 1][k - 1];
          r = notlast ? h[k + 2][k - 1] : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s == 0.0) continue;

        if (k != m) {
          h[k][k - 1] = -s * x;
        } else if (l != m) {
          h[k][k - 1] = -h[k][k - 1];
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;

        for (int j = k; j < size; ++j) {
          p = h[k][j] + q * h[k + 1][j];
          if (notlast) {
            p += r * h[k + 2][j];
            h[k + 2][j] -= p * z;
          }
          h[k][j] -= p * x;
          h[k + 1][j] -= p * y;
        }
        for (int i = 0; i <= std::min(n, k + 3); ++i) {
          p = x * h[i][k] + y * h[i][k + 1];
          if (notlast) {
            p += z * h[i][k + 2];
            h[i][k + 2] -= p * r;
          }
          h[i][k] -= p;
          h[i][k + 1] -= p * q;
        }
      }
    }
  }

  // Sweep cap hit: report the unreduced block's diagonal as-is.
  for (int i = 0; i <= n; ++i) eig[i] = {h[i][i] + exshift, 0.0};
}

}  // namespace

Spectrum eigenvalues(const DenseMatrix& matrix) {
  const std::size_t n = matrix.order();
  if (n == 0) throw InvalidArgument("eigenvalues: empty matrix");

  Rows h(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(matrix(i, j))) throw InvalidArgument("eigenvalues: non-finite matrix entry");
      h[i][j] = matrix(i, j);
    }
  }

  balance(h);
  to_hessenberg(h);

  std::vector<std::complex<double>> eig(n);
  std::vector<bool> conv(n, false);
  hessenberg_qr(h, eig, conv);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (eig[i].real() != eig[j].real()) return eig[i].real() < eig[j].real();
    return eig[i].imag() < eig[j].imag();
  });

  Spectrum spectrum;
  spectrum.eigenvalues.reserve(n);
  spectrum.converged.reserve(n);
  for (std::size_t i : order) {
    spectrum.eigenvalues.push_back(eig[i]);
    spectrum.converged.push_back(conv[i]);
  }
  return spectrum;
}

}  // namespace chebroot
