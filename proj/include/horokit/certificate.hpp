#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "horokit/center.hpp"
#include "horokit/chamber.hpp"
#include "horokit/pbw.hpp"

namespace horokit {

/// Coefficients of p_H: the monic polynomial with the shifted Weyl orbit of
/// H as roots.  J[i] multiplies x^i; the leading coefficient is 1.
struct HPoly {
  int W_H = 0;
  std::vector<PbwElement> J;  // size W_H
};

inline std::vector<QVec> weyl_orbit_diags(const QVec& diag) {
  std::set<QVec> orbit;
  QVec d = diag;
  std::sort(d.begin(), d.end());
  do {
    orbit.insert(d);
  } while (std::next_permutation(d.begin(), d.end()));
  return {orbit.begin(), orbit.end()};
}

inline HPoly hpoly_coefficients(const PbwContext& ctx, const ChamberVector& H) {
  auto orbit = weyl_orbit_diags(H.diag);
  Rational shift = ctx.rho_at(H.diag);

  // multiply out prod (x - (wH + rho(H)))
  std::vector<PbwElement> coeffs{ctx.one()};  // constant polynomial 1
  for (const auto& w : orbit) {
    PbwElement root = ctx.cartan_element(w) + ctx.scalar(shift);
    std::vector<PbwElement> next(coeffs.size() + 1, ctx.zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= ctx.multiply(coeffs[i], root);
    }
    coeffs = std::move(next);
  }

  HPoly out;
  out.W_H = static_cast<int>(orbit.size());
  out.J.assign(coeffs.begin(), coeffs.end() - 1);

  for (const auto& j : out.J)
    if (!ctx.is_weyl_invariant(j))
      throw invariant_error("hpoly-weyl", "coefficient is not Weyl invariant");
  // p_H(sigma(H)) = 0
  PbwElement sigmaH = ctx.cartan_element(H.diag) + ctx.scalar(shift);
  PbwElement acc = ctx.zero(), p = ctx.one();
  for (int i = 0; i < out.W_H; ++i) {
    acc += ctx.multiply(out.J[i], p);
    p = ctx.multiply(p, sigmaH);
  }
  acc += p;  // leading term
  if (!acc.is_zero()) throw invariant_error("hpoly-root", "p_H(sigma(H)) != 0");
  return out;
}

/// Exact witness of the identity  sum_i Z_i H^i = sum_j X_j U_j  with the
/// Z_i central and the right side in n U(g).
struct LieIdentityCertificate {
  int n = 0;
  ChamberVector H;
  int W_H = 0;
  int weyl_order = 0;  // global bound n!
  std::vector<int> wall_set;
  std::vector<PbwElement> J;  // size W_H
  std::vector<PbwElement> Z;  // size W_H + 1, Z[W_H] = 1
  std::vector<std::vector<Rational>> z_center_coords;
  std::vector<std::vector<int>> casimir_exponents;  // meaning of the coords
  PbwElement P;
  std::vector<PbwElement> U;  // per positive-root generator
  bool verified = false;
};

/// Writes P = sum_j X_j U_j, factoring from each monomial its leading
/// generator among the allowed positive-root generators.  Throws when a
/// monomial has no allowed n+ factor (membership failure).
inline std::vector<PbwElement> extract_nu_factors(const PbwContext& ctx, const PbwElement& P,
                                                  const std::vector<bool>& allowed) {
  const auto& g = ctx.algebra();
  std::vector<PbwElement> U(g.num_pos, ctx.zero());
  PbwElement work = P;
  while (!work.is_zero()) {
    // max (degree, lex) monomial
    auto best = work.terms.begin();
    int best_deg = monomial_degree(best->first);
    for (auto it = work.terms.begin(); it != work.terms.end(); ++it) {
      int d = monomial_degree(it->first);
      if (d > best_deg || (d == best_deg && it->first > best->first)) {
        best = it;
        best_deg = d;
      }
    }
    Monomial m = best->first;
    Rational c = best->second;
    int j = -1;
    for (int k = 0; k < g.num_pos; ++k)
      if (allowed[k] && m[k] > 0) {
        j = k;
        break;
      }
    if (j < 0)
      throw invariant_error("pbw-membership", "monomial without allowed n+ factor");
    Monomial w = m;
    w[j] -= 1;
    PbwElement welem{g.dim, {}};
    welem.add_term(w, 1);
    U[j].add_term(w, c);
    PbwElement back = ctx.multiply(ctx.generator(j), welem);
    back *= c;
    work -= back;
  }
  return U;
}

inline LieIdentityCertificate lie_identity_certificate(const PbwContext& ctx,
                                                       const ChamberVector& H,
                                                       int nullspace_column_limit = 2000) {
  const auto& rs = ctx.root_system();
  const auto& g = ctx.algebra();
  if (!in_closed_chamber(rs, H))
    throw argument_error("lie_identity_certificate: H outside the closed chamber");

  LieIdentityCertificate cert;
  cert.n = g.n;
  cert.H = H;
  cert.weyl_order = 1;
  for (int i = 2; i <= g.n; ++i) cert.weyl_order *= i;
  cert.wall_set = wall_set(rs, H);

  HPoly hp = hpoly_coefficients(ctx, H);
  cert.W_H = hp.W_H;
  cert.J = hp.J;

  CenterBasis cb = center_basis(ctx, cert.W_H, nullspace_column_limit);
  cert.casimir_exponents = cb.casimir_exponents;

  // gamma(Z_i) = J_i solved over the center basis; columns are ordered by
  // degree so the zero-free-variable solution is the minimal-degree one.
  std::set<Monomial> support;
  for (const auto& gi : cb.gamma_images)
    for (const auto& [mo, c] : gi.terms) support.insert(mo);
  for (const auto& j : cert.J)
    for (const auto& [mo, c] : j.terms) support.insert(mo);
  std::map<Monomial, int> row_of;
  int nrows = 0;
  for (const auto& mo : support) row_of[mo] = nrows++;

  SparseMatrixQ A(nrows, static_cast<int>(cb.elements.size()));
  for (std::size_t k = 0; k < cb.elements.size(); ++k)
    for (const auto& [mo, c] : cb.gamma_images[k].terms)
      A.set(row_of.at(mo), static_cast<int>(k), c);

  cert.Z.assign(cert.W_H + 1, ctx.zero());
  cert.Z[cert.W_H] = ctx.one();
  for (int i = 0; i < cert.W_H; ++i) {
    QVec b = qvec_zero(nrows);
    for (const auto& [mo, c] : cert.J[i].terms) b[row_of.at(mo)] = c;
    auto x = solve_sparse(A, b);
    if (!x)
      throw resource_error(
          "gamma preimage not found in the available center degrees (raise m)");
    cert.z_center_coords.push_back(*x);
    PbwElement z = ctx.zero();
    for (std::size_t k = 0; k < cb.elements.size(); ++k)
      if ((*x)[k] != 0) z += (*x)[k] * cb.elements[k];
    cert.Z[i] = z;
    if (z.degree() > cert.W_H - i)
      throw invariant_error("z-filtration", "Z_i outside U^{W_H - i}");
  }
  cert.z_center_coords.push_back(
      [&] {  // coordinates of Z_{W_H} = 1
        QVec v = qvec_zero(cb.elements.size());
        v[0] = 1;
        return v;
      }());

  PbwElement Hu = ctx.cartan_element(H.diag);
  PbwElement p = ctx.one();
  cert.P = ctx.zero();
  for (int i = 0; i <= cert.W_H; ++i) {
    cert.P += ctx.multiply(cert.Z[i], p);
    p = ctx.multiply(p, Hu);
  }

  if (!ctx.hc_project(cert.P).is_zero())
    throw invariant_error("hc-projection", "Proj_h(P) != 0");
  for (const auto& [mo, c] : cert.P.terms)
    if (ctx.nplus_degree(mo) == 0)
      throw invariant_error("pbw-membership", "P has a monomial of zero n+ degree");

  std::vector<bool> allowed(g.num_pos, false);
  for (int rp : rs.positive) {
    const auto& root = rs.roots[rp];
    allowed[root.space_index] = rs.root_value(root, H.diag) != 0;
  }
  cert.U = extract_nu_factors(ctx, cert.P, allowed);

  PbwElement rebuilt = ctx.zero();
  for (int j = 0; j < g.num_pos; ++j)
    if (!cert.U[j].is_zero()) rebuilt += ctx.multiply(ctx.generator(j), cert.U[j]);
  if (!(rebuilt == cert.P))
    throw invariant_error("xu-decomposition", "sum X_j U_j != P");

  cert.verified = true;
  return cert;
}

struct CertificateReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(const std::string& s) {
    ok = false;
    failures.push_back(s);
  }
};

/// Full from-scratch re-check of an (imported) certificate.
inline CertificateReport verify_certificate(const PbwContext& ctx,
                                            const LieIdentityCertificate& cert) {
  const auto& rs = ctx.root_system();
  const auto& g = ctx.algebra();
  CertificateReport rep;

  if (!in_closed_chamber(rs, cert.H)) {
    rep.fail("H outside the closed chamber");
    return rep;
  }
  HPoly hp = hpoly_coefficients(ctx, cert.H);
  if (hp.W_H != cert.W_H) rep.fail("W_H mismatch with the Weyl orbit of H");
  if (static_cast<int>(cert.Z.size()) != cert.W_H + 1 ||
      static_cast<int>(cert.J.size()) != cert.W_H) {
    rep.fail("certificate arrays have inconsistent sizes");
    return rep;
  }
  for (int i = 0; i < cert.W_H; ++i)
    if (!(hp.J[i] == cert.J[i])) rep.fail("J_" + std::to_string(i) + " mismatch");
  if (!(cert.Z[cert.W_H] == ctx.one())) rep.fail("Z_{W_H} != 1");
  for (int i = 0; i <= cert.W_H; ++i) {
    if (!commutes_with_algebra(ctx, cert.Z[i]))
      rep.fail("Z_" + std::to_string(i) + " is not central");
    if (i < cert.W_H && !(ctx.gamma(cert.Z[i]) == hp.J[i]))
      rep.fail("gamma(Z_" + std::to_string(i) + ") != J_" + std::to_string(i));
    if (cert.Z[i].degree() > cert.W_H - i)
      rep.fail("Z_" + std::to_string(i) + " outside U^{W_H-i}");
  }

  PbwElement Hu = ctx.cartan_element(cert.H.diag);
  PbwElement p = ctx.one(), P = ctx.zero();
  for (int i = 0; i <= cert.W_H; ++i) {
    P += ctx.multiply(cert.Z[i], p);
    p = ctx.multiply(p, Hu);
  }
  if (!(P == cert.P)) rep.fail("P does not match sum Z_i H^i");
  if (!ctx.hc_project(cert.P).is_zero()) rep.fail("Proj_h(P) != 0");
  for (const auto& [mo, c] : cert.P.terms)
    if (ctx.nplus_degree(mo) == 0) {
      rep.fail("P has a monomial of zero n+ degree");
      break;
    }

  if (static_cast<int>(cert.U.size()) != g.num_pos) {
    rep.fail("U list has the wrong length");
    return rep;
  }
  PbwElement rebuilt = ctx.zero();
  for (int j = 0; j < g.num_pos; ++j)
    if (!cert.U[j].is_zero()) rebuilt += ctx.multiply(ctx.generator(j), cert.U[j]);
  if (!(rebuilt == cert.P)) rep.fail("sum X_j U_j != P");
  for (int rp : rs.positive) {
    const auto& root = rs.roots[rp];
    if (rs.root_value(root, cert.H.diag) == 0 && !cert.U[root.space_index].is_zero())
      rep.fail("U_j nonzero on a wall generator");
  }
  return rep;
}

struct SpotcheckReport {
  bool coherent = true;
  bool w_constant = true;
  bool dd_checked = false;  // divided-difference test ran (collinear, enough points)
  int W_H = 0;
};

/// Exact polynomial-coherence check of H -> Z_i(H), H -> U_j(H) along a set
/// of samples inside one eps-regular component: the order-(W_H+1) divided
/// differences of every coefficient must vanish identically.
inline SpotcheckReport continuity_spotcheck(const PbwContext& ctx, const std::vector<int>& F,
                                            const Rational& eps,
                                            const std::vector<ChamberVector>& samples) {
  const auto& rs = ctx.root_system();
  if (samples.empty()) throw argument_error("continuity_spotcheck: no samples");
  for (const auto& H : samples) {
    auto cls = chamber_classify(rs, H, eps);
    if (!cls.eps_regular || cls.wall_set != F)
      throw argument_error("continuity_spotcheck: samples straddle components");
  }

  SpotcheckReport rep;
  std::vector<LieIdentityCertificate> certs;
  for (const auto& H : samples) certs.push_back(lie_identity_certificate(ctx, H));
  rep.W_H = certs.front().W_H;
  for (const auto& c : certs) rep.w_constant = rep.w_constant && (c.W_H == rep.W_H);
  rep.coherent = rep.w_constant;
  if (samples.size() < static_cast<std::size_t>(rep.W_H + 2) || !rep.w_constant) return rep;

  // collinearity and parameters
  QVec dir;
  int pivot = -1;
  for (std::size_t s = 1; s < samples.size() && pivot < 0; ++s) {
    QVec d = samples[s].diag - samples[0].diag;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) {
        dir = d;
        pivot = static_cast<int>(i);
        break;
      }
  }
  if (pivot < 0) return rep;  // all samples equal: trivially coherent
  std::vector<Rational> tau;
  for (const auto& H : samples) {
    QVec d = H.diag - samples[0].diag;
    Rational t = d[pivot] / dir[pivot];
    if (!(d == t * dir)) return rep;  // not collinear: only the W check applies
    tau.push_back(t);
  }
  for (std::size_t i = 0; i < tau.size(); ++i)
    for (std::size_t j = i + 1; j < tau.size(); ++j)
      if (tau[i] == tau[j]) throw argument_error("continuity_spotcheck: duplicate samples");
  rep.dd_checked = true;

  // collect every coefficient path
  auto check_paths = [&](auto get_element, int count) {
    for (int idx = 0; idx < count; ++idx) {
      std::set<Monomial> support;
      for (const auto& c : certs)
        for (const auto& [mo, v] : get_element(c, idx).terms) support.insert(mo);
      for (const auto& mo : support) {
        std::vector<Rational> vals;
        for (const auto& c : certs) {
          auto it = get_element(c, idx).terms.find(mo);
          vals.push_back(it == get_element(c, idx).terms.end() ? Rational(0) : it->second);
        }
        // Newton divided differences; orders above W_H must vanish
        std::vector<Rational> dd = vals;
        for (std::size_t order = 1; order < vals.size(); ++order) {
          for (std::size_t i = 0; i + order < vals.size(); ++i)
            dd[i] = (dd[i + 1] - dd[i]) / (tau[i + order] - tau[i]);
          dd.pop_back();
          if (order > static_cast<std::size_t>(rep.W_H))
            for (const auto& v : dd)
              if (v != 0) rep.coherent = false;
        }
      }
    }
  };
  check_paths([](const LieIdentityCertificate& c, int i) -> const PbwElement& { return c.Z[i]; },
              rep.W_H + 1);
  check_paths([](const LieIdentityCertificate& c, int j) -> const PbwElement& { return c.U[j]; },
              ctx.algebra().num_pos);
  return rep;
}

}  // namespace horokit
