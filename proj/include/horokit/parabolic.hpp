#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "horokit/linalg.hpp"
#include "horokit/root_system.hpp"

namespace horokit {

/// Standard parabolic q_F = n_F + a_F + m_F attached to a set F of simple
/// roots.  Bases are stored as coefficient vectors over the algebra basis;
/// a_F additionally keeps diagonal-entry coordinates.
struct ParabolicData {
  std::vector<int> subset_F;        // simple-root indices (0-based)
  std::vector<QVec> a_basis_diag;   // diagonal-entry coordinates
  std::vector<int> n_basis;         // algebra indices of the n_F generators
  std::vector<QVec> m_basis;        // coefficient vectors over the algebra basis
  QVec rho;                         // functional, diagonal coordinates; restricts to rho_{a_F}
  std::vector<QVec> weights;        // beta_j per n_basis entry, diagonal coordinates

  int dim_a() const { return static_cast<int>(a_basis_diag.size()); }
  int dim_n() const { return static_cast<int>(n_basis.size()); }
  Rational rho_at(const QVec& diag_entries) const { return dot(rho, diag_entries); }
};

inline ParabolicData parabolic_from_subset(const RestrictedRootSystem& rs,
                                           const std::vector<int>& F) {
  const auto& g = rs.alg;
  const int r = rs.rank();
  std::set<int> fset;
  for (int f : F) {
    if (f < 0 || f >= r) throw argument_error("parabolic_from_subset: simple-root index out of range");
    fset.insert(f);
  }

  ParabolicData p;
  p.subset_F.assign(fset.begin(), fset.end());

  // a_F = joint kernel of the simple roots in F, inside the traceless diagonals.
  // Solve on diagonal entries: constraints alpha_f(d)=0 and sum d = 0.
  {
    SparseMatrixQ A(static_cast<int>(fset.size()) + 1, g.n);
    int row = 0;
    for (int f : fset) {
      const auto& alpha = rs.roots[rs.simple[f]].coeff;
      for (int i = 0; i < g.n; ++i) A.set(row, i, alpha[i]);
      ++row;
    }
    for (int i = 0; i < g.n; ++i) A.set(row, i, 1);
    p.a_basis_diag = nullspace(A);
  }

  // n_F: positive root spaces whose root does not vanish on a_F
  for (int rp : rs.positive) {
    const auto& root = rs.roots[rp];
    bool vanishes = true;
    for (const auto& av : p.a_basis_diag)
      if (dot(root.coeff, av) != 0) {
        vanishes = false;
        break;
      }
    if (!vanishes) {
      p.n_basis.push_back(root.space_index);
      p.weights.push_back(root.coeff);
    }
  }

  // m_F: root spaces (both signs) vanishing on a_F, plus the Killing-orthogonal
  // complement of a_F in the full Cartan.
  std::set<int> nset(p.n_basis.begin(), p.n_basis.end());
  for (const auto& root : rs.roots) {
    bool vanishes = true;
    for (const auto& av : p.a_basis_diag)
      if (dot(root.coeff, av) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) {
      QVec v = qvec_zero(g.dim);
      v[root.space_index] = 1;
      p.m_basis.push_back(std::move(v));
    }
  }
  {
    // Cartan part of m_F: traceless diagonals orthogonal to every a_F vector.
    SparseMatrixQ A(static_cast<int>(p.a_basis_diag.size()) + 1, g.n);
    int row = 0;
    for (const auto& av : p.a_basis_diag) {
      for (int i = 0; i < g.n; ++i) A.set(row, i, Rational(2 * g.n) * av[i]);
      ++row;
    }
    for (int i = 0; i < g.n; ++i) A.set(row, i, 1);
    for (const auto& d : nullspace(A)) {
      QVec v = qvec_zero(g.dim);
      QVec t = g.cartan_coords(d);
      for (int k = 0; k < g.cartan_dim; ++k) v[g.cartan_begin() + k] = t[k];
      p.m_basis.push_back(std::move(v));
    }
  }

  // rho: half sum of the n_F roots (all multiplicities are one here)
  p.rho = qvec_zero(g.n);
  for (const auto& beta : p.weights) p.rho = p.rho + Rational(1, 2) * beta;
  return p;
}

}  // namespace horokit
