#pragma once

#include <algorithm>
#include <vector>

#include "horokit/lie_algebra.hpp"

namespace horokit {

/// One restricted root: its functional in diagonal-entry coordinates and the
/// algebra basis index spanning its (one-dimensional) root space.
struct RestrictedRoot {
  QVec coeff;      // length n, sums to zero
  int space_index;  // basis index of the eigenvector
};

struct RestrictedRootSystem {
  LieAlgebraData alg;
  std::vector<RestrictedRoot> roots;  // all nonzero roots
  std::vector<int> positive;          // indices into roots
  std::vector<int> simple;            // indices into roots, subset of positive

  int rank() const { return alg.cartan_dim; }

  Rational root_value(const RestrictedRoot& r, const QVec& diag_entries) const {
    return dot(r.coeff, diag_entries);
  }
  const RestrictedRoot& simple_root(int i) const { return roots[simple[i]]; }
};

/// Simultaneous ad-eigenspace decomposition of g under the diagonal Cartan.
/// For split sl(n) every non-Cartan basis vector is already a joint
/// eigenvector; this is computed and checked rather than assumed.
inline RestrictedRootSystem restricted_root_system(const LieAlgebraData& alg) {
  RestrictedRootSystem rs;
  rs.alg = alg;
  const auto& g = rs.alg;

  for (int a = 0; a < g.dim; ++a) {
    if (g.is_cartan(a)) continue;
    // eigenvalue of ad_{H_k} on X_a, for each Cartan basis vector
    QVec evals(g.cartan_dim);
    for (int k = 0; k < g.cartan_dim; ++k) {
      const auto& br = g.bracket(g.cartan_begin() + k, a);
      Rational ev = 0;
      for (const auto& [c, v] : br) {
        if (c != a) throw invariant_error("ad-eigenvector", "basis vector is not a joint eigenvector");
        ev = v;
      }
      evals[k] = ev;
    }
    // recover the diagonal-coordinate functional: c_k - c_{k+1} = evals[k],
    // normalized by sum c_i = 0
    QVec c(g.n);
    c[g.n - 1] = 0;
    for (int k = g.cartan_dim - 1; k >= 0; --k) c[k] = c[k + 1] + evals[k];
    Rational mean = 0;
    for (auto& x : c) mean += x;
    mean /= g.n;
    for (auto& x : c) x -= mean;
    rs.roots.push_back({c, a});
  }

  // positivity: first nonzero diagonal coordinate positive
  for (int r = 0; r < static_cast<int>(rs.roots.size()); ++r) {
    for (const auto& x : rs.roots[r].coeff) {
      if (x == 0) continue;
      if (x > 0) rs.positive.push_back(r);
      break;
    }
  }

  // simple = indecomposable positive roots
  for (int rp : rs.positive) {
    bool decomposable = false;
    for (int a : rs.positive) {
      for (int b : rs.positive) {
        if (rs.roots[a].coeff + rs.roots[b].coeff == rs.roots[rp].coeff) {
          decomposable = true;
          break;
        }
      }
      if (decomposable) break;
    }
    if (!decomposable) rs.simple.push_back(rp);
  }
  std::sort(rs.simple.begin(), rs.simple.end(), [&](int a, int b) {
    return rs.roots[a].space_index < rs.roots[b].space_index;
  });
  return rs;
}

/// Expresses a positive root as nonnegative-integer combination of the simple
/// roots; empty result means no such expression exists.
inline std::vector<int> simple_root_coordinates(const RestrictedRootSystem& rs, const QVec& root) {
  // For type A the simple coordinates are read off the diagonal coefficients:
  // root = e_i - e_j gives coefficient 1 to alpha_i..alpha_{j-1}.
  int r = rs.rank();
  std::vector<int> coords(r, 0);
  QVec rem = root;
  // solve by partial sums: coefficient of alpha_k equals sum of first k+1 entries
  Rational acc = 0;
  for (int k = 0; k < r; ++k) {
    acc += rem[k];
    if (denominator(acc) != 1 || acc < 0) return {};
    coords[k] = static_cast<int>(numerator(acc));
  }
  // verify
  QVec rebuilt = qvec_zero(rem.size());
  for (int k = 0; k < r; ++k)
    rebuilt = rebuilt + Rational(coords[k]) * rs.roots[rs.simple[k]].coeff;
  if (!(rebuilt == rem)) return {};
  return coords;
}

}  // namespace horokit
