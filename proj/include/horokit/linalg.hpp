#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "horokit/rational.hpp"

namespace horokit {

/// Cap on live nonzeros inside the exact eliminations, derived from
/// HOROKIT_MAX_MEM (bytes) when set.  One nonzero is budgeted at ~64 bytes.
inline std::size_t exact_solver_nonzero_cap() {
  static std::size_t cap = [] {
    if (const char* env = std::getenv("HOROKIT_MAX_MEM")) {
      long long bytes = std::atoll(env);
      if (bytes > 0) return static_cast<std::size_t>(bytes / 64);
    }
    return static_cast<std::size_t>(8u) << 20;  // ~512 MB worth of entries
  }();
  return cap;
}

/// Sparse matrix over Q, row-major.
struct SparseMatrixQ {
  int rows = 0, cols = 0;
  std::vector<std::map<int, Rational>> row_data;

  SparseMatrixQ() = default;
  SparseMatrixQ(int r, int c) : rows(r), cols(c), row_data(r) {}

  void set(int r, int c, const Rational& v) {
    if (v == 0)
      row_data[r].erase(c);
    else
      row_data[r][c] = v;
  }
  void add(int r, int c, const Rational& v) {
    auto it = row_data[r].find(c);
    if (it == row_data[r].end()) {
      if (v != 0) row_data[r][c] = v;
    } else {
      it->second += v;
      if (it->second == 0) row_data[r].erase(it);
    }
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& m : row_data) n += m.size();
    return n;
  }
};

namespace detail {

// In-place Gauss-Jordan; returns pivot column per pivot row order.
// Pivot rows are chosen by sparsity to limit fill-in.
inline std::vector<std::pair<int, int>> rref(SparseMatrixQ& A) {
  std::vector<std::pair<int, int>> pivots;  // (row, col)
  std::vector<bool> used(A.rows, false);
  const std::size_t cap = exact_solver_nonzero_cap();
  for (int col = 0; col < A.cols; ++col) {
    int best = -1;
    std::size_t best_nnz = 0;
    for (int r = 0; r < A.rows; ++r) {
      if (used[r]) continue;
      auto it = A.row_data[r].find(col);
      if (it == A.row_data[r].end()) continue;
      std::size_t nnz = A.row_data[r].size();
      if (best < 0 || nnz < best_nnz) {
        best = r;
        best_nnz = nnz;
      }
    }
    if (best < 0) continue;
    used[best] = true;
    pivots.emplace_back(best, col);
    Rational inv = A.row_data[best][col];
    for (auto& [c, v] : A.row_data[best]) v /= inv;
    for (int r = 0; r < A.rows; ++r) {
      if (r == best) continue;
      auto it = A.row_data[r].find(col);
      if (it == A.row_data[r].end()) continue;
      Rational f = it->second;
      for (const auto& [c, v] : A.row_data[best]) A.add(r, c, -f * v);
    }
    if (A.nonzeros() > cap)
      throw resource_error("exact elimination exceeded the HOROKIT_MAX_MEM budget");
  }
  return pivots;
}

}  // namespace detail

/// Basis of the right nullspace {x : Ax = 0}, as dense rational vectors.
inline std::vector<QVec> nullspace(SparseMatrixQ A) {
  auto pivots = detail::rref(A);
  std::vector<int> pivot_col_of(A.cols, -1);
  for (auto [r, c] : pivots) pivot_col_of[c] = r;
  std::vector<QVec> basis;
  for (int free = 0; free < A.cols; ++free) {
    if (pivot_col_of[free] >= 0) continue;
    QVec v = qvec_zero(A.cols);
    v[free] = 1;
    for (auto [r, c] : pivots) {
      auto it = A.row_data[r].find(free);
      if (it != A.row_data[r].end()) v[c] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves Ax = b.  Returns the solution with all free variables set to zero,
/// which (with columns sorted by preference) is the minimal one.
inline std::optional<QVec> solve_sparse(SparseMatrixQ A, const QVec& b) {
  int bc = A.cols;
  A.cols += 1;
  for (int r = 0; r < A.rows; ++r)
    if (b[r] != 0) A.row_data[r][bc] = b[r];
  auto pivots = detail::rref(A);
  QVec x = qvec_zero(bc);
  for (auto [r, c] : pivots) {
    if (c == bc) return std::nullopt;  // inconsistent row 0 = 1
    auto it = A.row_data[r].find(bc);
    if (it != A.row_data[r].end()) x[c] = it->second;
  }
  // Rows without pivots must have zero rhs.
  std::vector<bool> has_pivot(A.rows, false);
  for (auto [r, c] : pivots) has_pivot[r] = true;
  for (int r = 0; r < A.rows; ++r)
    if (!has_pivot[r] && A.row_data[r].count(bc)) return std::nullopt;
  return x;
}

/// Dense exact solve for small square systems.
inline std::optional<QVec> solve_dense(std::vector<QVec> A, QVec b) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    Rational d = A[col][col];
    for (int c = col; c < n; ++c) A[col][c] /= d;
    b[col] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace horokit
