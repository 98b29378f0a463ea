#pragma once

#include <string>
#include <utility>
#include <vector>

#include "horokit/errors.hpp"
#include "horokit/rational.hpp"

namespace horokit {

/// Structure data of split sl(n,R) in a fixed ordered basis:
/// positive-root vectors E_ij (i<j) sorted by root height, then the Cartan
/// basis H_k = E_kk - E_{k+1,k+1}, then the negative-root vectors F_ij = E_ji
/// in the mirrored order.  All constants are exact rationals.
struct LieAlgebraData {
  int n = 0;
  int dim = 0;       // n^2 - 1
  int num_pos = 0;   // n(n-1)/2
  int cartan_dim = 0;

  std::vector<std::string> basis_labels;
  std::vector<std::pair<int, int>> pos_pairs;  // (i,j), i<j, for generator k

  // bracket_table[a][b] = [X_a, X_b] as sparse (index, coeff) pairs
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> bracket_table;

  std::vector<QVec> theta;    // dim x dim, X -> -X^T on the basis
  std::vector<QVec> killing;  // dim x dim, B(X,Y) = 2n tr(XY)

  // basis matrices, n x n, for construction and for tests
  std::vector<std::vector<QVec>> basis_matrices;

  int pos_begin() const { return 0; }
  int cartan_begin() const { return num_pos; }
  int neg_begin() const { return num_pos + cartan_dim; }

  bool is_pos(int k) const { return k < num_pos; }
  bool is_cartan(int k) const { return k >= num_pos && k < num_pos + cartan_dim; }
  bool is_neg(int k) const { return k >= num_pos + cartan_dim; }

  const std::vector<std::pair<int, Rational>>& bracket(int a, int b) const {
    return bracket_table[a][b];
  }

  /// Root of a positive-root generator, in diagonal-entry coordinates
  /// (length-n rational vector c with lambda(diag d) = sum c_i d_i).
  QVec root_of_pos(int k) const {
    QVec c = qvec_zero(n);
    c[pos_pairs[k].first] = 1;
    c[pos_pairs[k].second] = -1;
    return c;
  }

  /// Decomposes a traceless diagonal (entry vector) on the H_k basis:
  /// coordinates are the partial sums of the entries.
  QVec cartan_coords(const QVec& diag_entries) const {
    QVec t(cartan_dim);
    Rational acc = 0;
    for (int k = 0; k < cartan_dim; ++k) {
      acc += diag_entries[k];
      t[k] = acc;
    }
    return t;
  }

  Rational killing_diag(const QVec& d1, const QVec& d2) const {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += d1[i] * d2[i];
    return Rational(2 * n) * s;
  }
};

namespace detail {

inline std::vector<QVec> zero_matrix(int n) { return std::vector<QVec>(n, qvec_zero(n)); }

inline std::vector<QVec> mat_mul(const std::vector<QVec>& a, const std::vector<QVec>& b) {
  int n = static_cast<int>(a.size());
  auto r = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

// Expands a traceless n x n matrix on the fixed basis.
inline QVec expand_on_basis(const LieAlgebraData& g, const std::vector<QVec>& M) {
  QVec coeff = qvec_zero(g.dim);
  for (int k = 0; k < g.num_pos; ++k) {
    auto [i, j] = g.pos_pairs[k];
    coeff[k] = M[i][j];                  // E_ij component
    coeff[g.neg_begin() + k] = M[j][i];  // F_ij component
  }
  QVec d(g.n);
  for (int i = 0; i < g.n; ++i) d[i] = M[i][i];
  QVec t = g.cartan_coords(d);
  for (int k = 0; k < g.cartan_dim; ++k) coeff[g.cartan_begin() + k] = t[k];
  return coeff;
}

}  // namespace detail

/// Builds the structure data of split sl(n,R).  Exact-tensor sizes are kept
/// at desk scale, hence the n <= 6 guard.
inline LieAlgebraData build_split_sl(int n) {
  if (n < 2 || n > 6) throw argument_error("build_split_sl: n must be in [2,6]");
  LieAlgebraData g;
  g.n = n;
  g.dim = n * n - 1;
  g.num_pos = n * (n - 1) / 2;
  g.cartan_dim = n - 1;

  // positive roots e_i - e_j ordered by height j-i, then by i
  for (int h = 1; h < n; ++h)
    for (int i = 0; i + h < n; ++i) g.pos_pairs.emplace_back(i, i + h);

  auto label = [](const std::string& p, int i, int j) {
    return p + std::to_string(i + 1) + std::to_string(j + 1);
  };
  g.basis_matrices.resize(g.dim);
  g.basis_labels.resize(g.dim);
  for (int k = 0; k < g.num_pos; ++k) {
    auto [i, j] = g.pos_pairs[k];
    auto E = detail::zero_matrix(n);
    E[i][j] = 1;
    g.basis_matrices[k] = E;
    g.basis_labels[k] = label("E", i, j);
    auto F = detail::zero_matrix(n);
    F[j][i] = 1;
    g.basis_matrices[g.neg_begin() + k] = F;
    g.basis_labels[g.neg_begin() + k] = label("F", i, j);
  }
  for (int k = 0; k < g.cartan_dim; ++k) {
    auto H = detail::zero_matrix(n);
    H[k][k] = 1;
    H[k + 1][k + 1] = -1;
    g.basis_matrices[g.cartan_begin() + k] = H;
    g.basis_labels[g.cartan_begin() + k] = "H" + std::to_string(k + 1);
  }

  g.bracket_table.assign(g.dim, std::vector<std::vector<std::pair<int, Rational>>>(g.dim));
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto AB = detail::mat_mul(g.basis_matrices[a], g.basis_matrices[b]);
      auto BA = detail::mat_mul(g.basis_matrices[b], g.basis_matrices[a]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) AB[i][j] -= BA[i][j];
      QVec c = detail::expand_on_basis(g, AB);
      for (int k = 0; k < g.dim; ++k)
        if (c[k] != 0) g.bracket_table[a][b].emplace_back(k, c[k]);
    }

  g.theta.assign(g.dim, qvec_zero(g.dim));
  for (int a = 0; a < g.dim; ++a) {
    auto M = detail::zero_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M[i][j] = -g.basis_matrices[a][j][i];
    QVec c = detail::expand_on_basis(g, M);
    for (int k = 0; k < g.dim; ++k) g.theta[a][k] = c[k];
  }

  g.killing.assign(g.dim, qvec_zero(g.dim));
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto M = detail::mat_mul(g.basis_matrices[a], g.basis_matrices[b]);
      Rational tr = 0;
      for (int i = 0; i < n; ++i) tr += M[i][i];
      g.killing[a][b] = Rational(2 * n) * tr;
    }
  return g;
}

/// [X,Y] for coefficient vectors over the basis.
inline QVec bracket_vec(const LieAlgebraData& g, const QVec& x, const QVec& y) {
  QVec r = qvec_zero(g.dim);
  for (int a = 0; a < g.dim; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < g.dim; ++b) {
      if (y[b] == 0) continue;
      for (const auto& [c, v] : g.bracket_table[a][b]) r[c] += x[a] * y[b] * v;
    }
  }
  return r;
}

/// Jacobi defect [[a,b],c] + [[b,c],a] + [[c,a],b] on basis triples; zero in
/// a Lie algebra.
inline QVec jacobi_residual(const LieAlgebraData& g, int a, int b, int c) {
  QVec ea = qvec_zero(g.dim), eb = qvec_zero(g.dim), ec = qvec_zero(g.dim);
  ea[a] = 1;
  eb[b] = 1;
  ec[c] = 1;
  QVec r = bracket_vec(g, bracket_vec(g, ea, eb), ec);
  r = r + bracket_vec(g, bracket_vec(g, eb, ec), ea);
  r = r + bracket_vec(g, bracket_vec(g, ec, ea), eb);
  return r;
}

}  // namespace horokit
