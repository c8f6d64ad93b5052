#pragma once

// Packed lower-triangular storage and the Cholesky factorization /
// triangular solves used by the kriging engine. Rows are contiguous, so the
// inner loops are dot products and axpys over row prefixes.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfline::linalg {

/// Lower triangle of an n x n matrix, row-major packed: row i holds
/// entries (i,0)..(i,i) starting at offset i(i+1)/2.
class PackedLower {
 public:
  PackedLower() = default;
  explicit PackedLower(std::size_t n) : n_(n), data_(n * (n + 1) / 2, 0.0) {}

  std::size_t size() const { return n_; }

  std::span<double> row(std::size_t i) { return {data_.data() + offset(i), i + 1}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + offset(i), i + 1}; }

  double& operator()(std::size_t i, std::size_t j) { return data_[offset(i) + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[offset(i) + j]; }

 private:
  static std::size_t offset(std::size_t i) { return i * (i + 1) / 2; }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Raised when a pivot of the Cholesky factorization is not safely positive.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(std::size_t index, double pivot, double smallest_pivot);

  std::size_t index() const { return index_; }
  double pivot() const { return pivot_; }
  double smallest_pivot() const { return smallest_; }

 private:
  std::size_t index_;
  double pivot_;
  double smallest_;
};

/// Overwrites the lower triangle of a symmetric positive definite matrix with
/// its Cholesky factor L (A = L L^T). A pivot d_j fails when
/// d_j <= max(n, 16) * eps * A_jj.
void cholesky_in_place(PackedLower& a);

/// Solves L y = b in place.
void forward_solve(const PackedLower& l, std::span<double> b);

/// Solves L^T x = y in place.
void backward_solve_transposed(const PackedLower& l, std::span<double> y);

/// Forward solve for several right-hand sides (rhs[k] is the k-th), four at a
/// time so each row of L is streamed once per group.
void forward_solve_many(const PackedLower& l, std::vector<std::vector<double>>& rhs);

}  // namespace halfline::linalg
