#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "horokit/linalg.hpp"
#include "horokit/root_system.hpp"

namespace horokit {

/// Element of the full Cartan a_0, stored exactly as traceless diagonal
/// entries.  Floats enter only through exact dyadic conversion.
struct ChamberVector {
  QVec diag;  // length n, sums to zero

  static ChamberVector from_diag(QVec d) {
    Rational s = 0;
    for (const auto& x : d) s += x;
    if (s != 0) throw argument_error("ChamberVector: entries must sum to zero");
    return {std::move(d)};
  }
  bool is_zero() const { return horokit::is_zero(diag); }
};

inline Rational simple_value(const RestrictedRootSystem& rs, int i, const ChamberVector& H) {
  return dot(rs.simple_root(i).coeff, H.diag);
}

/// Killing norm squared, exact.
inline Rational killing_q(const RestrictedRootSystem& rs, const ChamberVector& H) {
  return rs.alg.killing_diag(H.diag, H.diag);
}

inline double killing_norm(const RestrictedRootSystem& rs, const ChamberVector& H) {
  return std::sqrt(to_double(killing_q(rs, H)));
}

/// Max |alpha_j(H)| over the simple roots: the sup norm in the basis dual to
/// the simple roots.
inline Rational norm_inf(const RestrictedRootSystem& rs, const ChamberVector& H) {
  Rational m = 0;
  for (std::size_t i = 0; i < rs.simple.size(); ++i) {
    Rational v = simple_value(rs, static_cast<int>(i), H);
    if (v < 0) v = -v;
    if (v > m) m = v;
  }
  return m;
}

inline bool in_closed_chamber(const RestrictedRootSystem& rs, const ChamberVector& H) {
  for (std::size_t i = 0; i < rs.simple.size(); ++i)
    if (simple_value(rs, static_cast<int>(i), H) < 0) return false;
  return true;
}

/// Wall set {i : alpha_i(H) = 0}.
inline std::vector<int> wall_set(const RestrictedRootSystem& rs, const ChamberVector& H) {
  std::vector<int> F;
  for (std::size_t i = 0; i < rs.simple.size(); ++i)
    if (simple_value(rs, static_cast<int>(i), H) == 0) F.push_back(static_cast<int>(i));
  return F;
}

/// alpha(H) >= eps * |H| for every simple root with alpha(H) > 0, tested as
/// alpha(H)^2 >= eps^2 Q(H) so the comparison stays rational.
inline bool in_eps_chamber(const RestrictedRootSystem& rs, const ChamberVector& H,
                           const Rational& eps) {
  Rational q = killing_q(rs, H);
  for (std::size_t i = 0; i < rs.simple.size(); ++i) {
    Rational v = simple_value(rs, static_cast<int>(i), H);
    if (v < 0) return false;
    if (v > 0 && v * v < eps * eps * q) return false;
  }
  return true;
}

struct ChamberClassification {
  bool in_closed_chamber = false;
  bool eps_regular = false;
  std::vector<int> wall_set;  // valid when eps_regular
};

/// The unique F with H in the eps-regular component of wall type F, or
/// "not eps-regular".
inline ChamberClassification chamber_classify(const RestrictedRootSystem& rs,
                                              const ChamberVector& H, const Rational& eps) {
  if (eps <= 0) throw argument_error("chamber_classify: eps must be positive");
  ChamberClassification out;
  out.in_closed_chamber = in_closed_chamber(rs, H);
  if (!out.in_closed_chamber) return out;
  out.eps_regular = in_eps_chamber(rs, H, eps);
  if (out.eps_regular) out.wall_set = wall_set(rs, H);
  return out;
}

/// Tight constants D >= D' > 0 with D' |Y|_inf <= |Y| <= D |Y|_inf, where
/// |.| is the Killing norm and |.|_inf the sup norm in the dual simple-root
/// basis.  Both are optimized exactly over the cube faces.
struct NormEquivalence {
  Rational D2;   // max of Q on the unit cube (attained at a vertex)
  Rational Dp2;  // min of Q on the cube boundary
  Rational c2;   // (D^2/D')^2 = D2^2 / Dp2
  double D, Dp, c;
  std::vector<QVec> dual_basis_diag;  // H^j with alpha_i(H^j) = delta_ij
};

inline NormEquivalence norm_equivalence(const RestrictedRootSystem& rs) {
  const auto& g = rs.alg;
  const int r = rs.rank();

  NormEquivalence ne;
  // dual basis: alpha_i(H^j) = delta_ij, trace zero
  for (int j = 0; j < r; ++j) {
    std::vector<QVec> A(g.n, qvec_zero(g.n));
    QVec b = qvec_zero(g.n);
    for (int i = 0; i < r; ++i) {
      A[i] = rs.simple_root(i).coeff;
      b[i] = (i == j) ? 1 : 0;
    }
    for (int k = 0; k < g.n; ++k) A[g.n - 1][k] = 1;
    auto sol = solve_dense(A, b);
    if (!sol) throw invariant_error("dual-basis", "simple roots failed to span");
    ne.dual_basis_diag.push_back(*sol);
  }

  // Gram matrix of the dual basis under the Killing form
  std::vector<QVec> G(r, qvec_zero(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      G[i][j] = g.killing_diag(ne.dual_basis_diag[i], ne.dual_basis_diag[j]);
  auto Q = [&](const QVec& x) {
    Rational s = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) s += x[i] * G[i][j] * x[j];
    return s;
  };

  // max over the cube = max over vertices (convexity)
  ne.D2 = 0;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    QVec x(r);
    for (int i = 0; i < r; ++i) x[i] = (mask >> i) & 1 ? 1 : -1;
    Rational v = Q(x);
    if (v > ne.D2) ne.D2 = v;
  }

  // min over the boundary: enumerate faces (fixed coordinate subsets with
  // signs), take the interior critical point of each face when feasible
  std::optional<Rational> best;
  std::vector<int> fixed(r, 0);  // 0 free, +1/-1 fixed
  auto consider = [&](const QVec& x) {
    for (int i = 0; i < r; ++i) {
      Rational a = x[i] < 0 ? -x[i] : x[i];
      if (a > 1) return;
    }
    Rational v = Q(x);
    if (!best || v < *best) best = v;
  };
  // iterate over all nonzero sign patterns on all subsets
  std::vector<int> idx(r);
  for (unsigned subset = 1; subset < (1u << r); ++subset) {
    int nf = 0;
    for (int i = 0; i < r; ++i)
      if ((subset >> i) & 1) idx[nf++] = i;
    for (unsigned signs = 0; signs < (1u << nf); ++signs) {
      std::fill(fixed.begin(), fixed.end(), 0);
      for (int s = 0; s < nf; ++s) fixed[idx[s]] = ((signs >> s) & 1) ? 1 : -1;
      // free coordinates: solve grad Q = 0 restricted to them
      std::vector<int> free_idx;
      for (int i = 0; i < r; ++i)
        if (fixed[i] == 0) free_idx.push_back(i);
      QVec x(r);
      for (int i = 0; i < r; ++i) x[i] = fixed[i];
      if (free_idx.empty()) {
        consider(x);
        continue;
      }
      int nf2 = static_cast<int>(free_idx.size());
      std::vector<QVec> A(nf2, qvec_zero(nf2));
      QVec b = qvec_zero(nf2);
      for (int a = 0; a < nf2; ++a) {
        for (int c = 0; c < nf2; ++c) A[a][c] = G[free_idx[a]][free_idx[c]];
        Rational rhs = 0;
        for (int i = 0; i < r; ++i)
          if (fixed[i] != 0) rhs -= G[free_idx[a]][i] * Rational(fixed[i]);
        b[a] = rhs;
      }
      auto sol = solve_dense(A, b);
      if (!sol) continue;  // cannot happen for a PD form
      for (int a = 0; a < nf2; ++a) x[free_idx[a]] = (*sol)[a];
      consider(x);
    }
  }
  ne.Dp2 = *best;

  ne.c2 = ne.D2 * ne.D2 / ne.Dp2;
  ne.D = std::sqrt(to_double(ne.D2));
  ne.Dp = std::sqrt(to_double(ne.Dp2));
  ne.c = to_double(ne.D2) / ne.Dp;
  return ne;
}

struct EpsilonDecomposition {
  ChamberVector H_eps, J_eps;
  std::vector<int> F;  // simple indices dropped into J_eps
  double c;            // D^2/D'
  Rational c2;         // c squared, exact
};

/// Splits H in the closed chamber as H = H_eps + J_eps with H_eps
/// eps-regular and J_eps in the closed chamber, following the recipe
/// delta = D eps |H|_inf, F = {j : alpha_j(H) < delta}.  All comparisons are
/// exact (squared).  The norm guarantee |H_eps| >= (1 - c eps)|H| is
/// meaningful for eps < 1/(2c); the decomposition itself is defined for all
/// eps in (0,1).
inline EpsilonDecomposition epsilon_decompose(const RestrictedRootSystem& rs,
                                              const ChamberVector& H, const Rational& eps,
                                              const NormEquivalence& ne) {
  if (!(eps > 0 && eps < 1)) throw argument_error("epsilon_decompose: eps must be in (0,1)");
  if (!in_closed_chamber(rs, H))
    throw argument_error("epsilon_decompose: H outside the closed chamber");

  EpsilonDecomposition out;
  out.c = ne.c;
  out.c2 = ne.c2;
  if (in_eps_chamber(rs, H, eps)) {
    out.H_eps = H;
    out.J_eps = ChamberVector{qvec_zero(H.diag.size())};
    return out;
  }

  const int r = rs.rank();
  QVec x(r);
  for (int j = 0; j < r; ++j) x[j] = simple_value(rs, j, H);
  Rational hinf = 0;
  for (const auto& v : x)
    if (v > hinf) hinf = v;

  // x_j < delta = D eps |H|_inf, compared as x_j^2 < D^2 eps^2 |H|_inf^2
  Rational rhs = ne.D2 * eps * eps * hinf * hinf;
  QVec dh = qvec_zero(H.diag.size()), dj = qvec_zero(H.diag.size());
  for (int j = 0; j < r; ++j) {
    if (x[j] * x[j] < rhs) {
      out.F.push_back(j);
      dj = dj + x[j] * ne.dual_basis_diag[j];
    } else {
      dh = dh + x[j] * ne.dual_basis_diag[j];
    }
  }
  out.H_eps = ChamberVector{std::move(dh)};
  out.J_eps = ChamberVector{std::move(dj)};
  return out;
}

/// Exact certificate for the three conclusions:
///   (a) H = H_eps + J_eps, H_eps eps-regular, J_eps in the closed chamber;
///   (b) Q(J) <= c^2 eps^2 Q(H)            (so |J| <= c eps |H|);
///   (c) B(H_eps,J)^2 <= Q(H_eps) Q(J)     (Cauchy-Schwarz, so the reverse
///       triangle step |H_eps| >= |H| - |J| is certified).
/// Together these give |H_eps| >= (1 - c eps)|H| whenever c eps <= 1.
inline bool verify_epsilon_decomposition(const RestrictedRootSystem& rs, const ChamberVector& H,
                                         const Rational& eps, const EpsilonDecomposition& d) {
  QVec sum = d.H_eps.diag + d.J_eps.diag;
  if (!(sum == H.diag)) return false;
  if (!in_eps_chamber(rs, d.H_eps, eps) && !d.H_eps.is_zero()) return false;
  if (!in_closed_chamber(rs, d.J_eps)) return false;

  Rational qh = killing_q(rs, H);
  Rational qj = killing_q(rs, d.J_eps);
  Rational qe = killing_q(rs, d.H_eps);
  if (qj > d.c2 * eps * eps * qh) return false;
  Rational b = rs.alg.killing_diag(d.H_eps.diag, d.J_eps.diag);
  if (b > 0 && b * b > qe * qj) return false;
  return true;
}

}  // namespace horokit
