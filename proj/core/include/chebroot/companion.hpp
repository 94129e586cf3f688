#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "chebroot/chebyshev.hpp"

namespace chebroot {

/// Dense square real matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t order) : order_(order), entries_(order * order, 0.0) {}
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t order() const noexcept { return order_; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  double trace() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<double> entries_;
};

/// Chebyshev-Frobenius (colleague) matrix of a degree-N series. Rows 1..N-1
/// encode x T_0 = T_1 and x T_j = (T_{j-1} + T_{j+1}) / 2; the last row folds
/// T_N back onto the basis through the series coefficients:
///   A(N, k) = -a_{k-1} / (2 a_N) + (1/2) delta(k, N-1).
/// Indices above are 1-based; operator() is 0-based.
class FrobeniusMatrix {
 public:
  std::size_t order() const noexcept { return matrix_.order(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }
  const DenseMatrix& matrix() const noexcept { return matrix_; }

 private:
  friend FrobeniusMatrix build_frobenius(const ChebyshevSeries& series);
  explicit FrobeniusMatrix(DenseMatrix m) : matrix_(std::move(m)) {}

  DenseMatrix matrix_;
};

/// Throws InvalidArgument for a degree-0 series and DegenerateLeadingCoefficient
/// when a_N == 0 (chop the series first).
FrobeniusMatrix build_frobenius(const ChebyshevSeries& series);

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (re, im)
  std::vector<bool> converged;

  bool all_converged() const noexcept;
};

/// All eigenvalues of a real square matrix: balancing, Householder reduction
/// to upper Hessenberg form, then Francis double-shift QR with deflation
/// when |h(i+1,i)| <= eps (|h(i,i)| + |h(i+1,i+1)|). After 30 * order QR
/// sweeps the remaining diagonal entries are returned flagged unconverged.
/// Throws InvalidArgument for an empty matrix or a non-finite entry.
Spectrum eigenvalues(const DenseMatrix& matrix);

inline Spectrum eigenvalues(const FrobeniusMatrix& matrix) { return eigenvalues(matrix.matrix()); }

}  // namespace chebroot
