#include "halfline/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "halfline/simd.hpp"

namespace halfline::linalg {

namespace {

std::string describe_failure(std::size_t index, double pivot, double smallest) {
  std::ostringstream os;
  os.precision(6);
  os << "Cholesky factorization failed at row " << index << ": pivot " << pivot
     << " is not safely positive (smallest pivot so far " << smallest
     << "); duplicate points or a noise variance too small for the Gram matrix";
  return os.str();
}

}  // namespace

FactorizationError::FactorizationError(std::size_t index, double pivot, double smallest_pivot)
    : std::runtime_error(describe_failure(index, pivot, smallest_pivot)),
      index_(index),
      pivot_(pivot),
      smallest_(smallest_pivot) {}

void cholesky_in_place(PackedLower& a) {
  const auto& k = simd::active();
  const std::size_t n = a.size();
  const double tol = static_cast<double>(std::max<std::size_t>(n, 16)) *
                     std::numeric_limits<double>::epsilon();
  double smallest = std::numeric_limits<double>::infinity();

  // Finishes row i for columns [from, i] once columns < from are done.
  auto finish_row = [&](std::size_t i, std::size_t from) {
    double* ri = a.row(i).data();
    for (std::size_t j = from; j < i; ++j) {
      const double* rj = a.row(j).data();
      ri[j] = (ri[j] - k.dot(ri, rj, j)) / rj[j];
    }
    const double diag = ri[i];
    const double d = diag - k.dot(ri, ri, i);
    smallest = std::min(smallest, d);
    if (!(d > tol * diag)) throw FactorizationError(i, d, smallest);
    ri[i] = std::sqrt(d);
  };

  // Rows in groups of four share each earlier row j in one dot_1x4 pass.
  std::size_t i0 = 0;
  for (; i0 + 4 <= n; i0 += 4) {
    double* r[4] = {a.row(i0).data(), a.row(i0 + 1).data(), a.row(i0 + 2).data(),
                    a.row(i0 + 3).data()};
    double out[4];
    for (std::size_t j = 0; j < i0; ++j) {
      const double* rj = a.row(j).data();
      k.dot_1x4(rj, r[0], r[1], r[2], r[3], j, out);
      const double inv = 1.0 / rj[j];
      for (int q = 0; q < 4; ++q) r[q][j] = (r[q][j] - out[q]) * inv;
    }
    for (std::size_t q = 0; q < 4; ++q) finish_row(i0 + q, i0);
  }
  for (; i0 < n; ++i0) finish_row(i0, 0);
}

void forward_solve(const PackedLower& l, std::span<double> b) {
  const auto& k = simd::active();
  for (std::size_t i = 0; i < l.size(); ++i) {
    const double* ri = l.row(i).data();
    b[i] = (b[i] - k.dot(ri, b.data(), i)) / ri[i];
  }
}

void backward_solve_transposed(const PackedLower& l, std::span<double> y) {
  const auto& k = simd::active();
  for (std::size_t i = l.size(); i-- > 0;) {
    const double* ri = l.row(i).data();
    y[i] /= ri[i];
    k.axpy(-y[i], ri, y.data(), i);
  }
}

void forward_solve_many(const PackedLower& l, std::vector<std::vector<double>>& rhs) {
  const auto& k = simd::active();
  std::size_t c = 0;
  for (; c + 4 <= rhs.size(); c += 4) {
    double* b[4] = {rhs[c].data(), rhs[c + 1].data(), rhs[c + 2].data(), rhs[c + 3].data()};
    double out[4];
    for (std::size_t i = 0; i < l.size(); ++i) {
      const double* ri = l.row(i).data();
      k.dot_1x4(ri, b[0], b[1], b[2], b[3], i, out);
      for (int q = 0; q < 4; ++q) b[q][i] = (b[q][i] - out[q]) / ri[i];
    }
  }
  for (; c < rhs.size(); ++c) forward_solve(l, rhs[c]);
}

}  // namespace halfline::linalg
