#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "horokit/linalg.hpp"
#include "horokit/pbw.hpp"

namespace horokit {

/// Spanning set of Z(g) within the degree-m filtration step, together with
/// the Harish-Chandra images.  Elements are monomials in the primitive
/// Casimirs; each primitive is found as a commutant nullspace vector and
/// every listed element is re-verified to commute with the whole algebra.
struct CenterBasis {
  int m = 0;
  std::vector<PbwElement> primitives;
  std::vector<int> primitive_degrees;
  std::vector<PbwElement> elements;                 // ordered by (degree, exponents)
  std::vector<std::vector<int>> casimir_exponents;  // per element, over primitives
  std::vector<int> degrees;
  std::vector<PbwElement> gamma_images;
};

namespace detail {

inline void enumerate_monomials(int dim, int max_deg, Monomial& cur, int from,
                                std::vector<Monomial>& out) {
  out.push_back(cur);
  for (int k = from; k < dim; ++k) {
    if (monomial_degree(cur) >= max_deg) break;
    cur[k] += 1;
    enumerate_monomials(dim, max_deg, cur, k, out);
    cur[k] -= 1;
  }
}

inline std::vector<Monomial> monomials_up_to(int dim, int max_deg) {
  std::vector<Monomial> out;
  Monomial cur(dim, 0);
  enumerate_monomials(dim, max_deg, cur, 0, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    return da != db ? da < db : a < b;
  });
  return out;
}

// Incremental row echelon over Q; rows keep distinct leading columns.
struct IncrementalEchelon {
  std::vector<QVec> rows;
  std::vector<int> leads;

  QVec reduce(QVec v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (v[leads[r]] == 0) continue;
      Rational f = v[leads[r]] / rows[r][leads[r]];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * rows[r][i];
    }
    return v;
  }
  bool add(QVec v) {
    v = reduce(std::move(v));
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        leads.push_back(static_cast<int>(i));
        rows.push_back(std::move(v));
        return true;
      }
    return false;
  }
};

// All exponent vectors over the given degrees with weighted total <= cap,
// sorted by (degree, exponents).
inline std::vector<std::pair<std::vector<int>, int>> exponents_up_to(
    const std::vector<int>& degrees, int cap) {
  std::vector<std::pair<std::vector<int>, int>> out;
  std::vector<int> cur(degrees.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int deg) {
    if (idx == degrees.size()) {
      out.emplace_back(cur, deg);
      return;
    }
    for (int a = 0; deg + a * degrees[idx] <= cap; ++a) {
      cur[idx] = a;
      rec(idx + 1, deg + a * degrees[idx]);
    }
    cur[idx] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

}  // namespace detail

/// Chevalley generators (simple positive root vectors and their negatives);
/// commuting with these is commuting with all of g.
inline std::vector<int> chevalley_generators(const RestrictedRootSystem& rs) {
  std::vector<int> gens;
  for (int s : rs.simple) {
    int k = rs.roots[s].space_index;
    gens.push_back(k);
    gens.push_back(rs.alg.neg_begin() + k);  // F paired with E at the same offset
  }
  return gens;
}

inline bool commutes_with_algebra(const PbwContext& ctx, const PbwElement& z) {
  for (int k = 0; k < ctx.algebra().dim; ++k)
    if (!ctx.ad(k, z).is_zero()) return false;
  return true;
}

inline CenterBasis center_basis(const PbwContext& ctx, int m,
                                int nullspace_column_limit = 2000) {
  if (m < 0) throw argument_error("center_basis: negative degree bound");
  const auto& g = ctx.algebra();
  CenterBasis cb;
  cb.m = m;

  const int prim_cap = std::min(m, g.n);
  std::vector<Monomial> all_monos = detail::monomials_up_to(g.dim, prim_cap);
  std::map<Monomial, int> mono_index;
  for (std::size_t i = 0; i < all_monos.size(); ++i) mono_index[all_monos[i]] = static_cast<int>(i);
  auto coeff_vector = [&](const PbwElement& e) {
    QVec v = qvec_zero(all_monos.size());
    for (const auto& [mo, c] : e.terms) v[mono_index.at(mo)] = c;
    return v;
  };
  auto product_of = [&](const std::vector<int>& exps) {
    PbwElement prod = ctx.one();
    for (std::size_t p = 0; p < cb.primitives.size(); ++p)
      for (int rep = 0; rep < exps[p]; ++rep) prod = ctx.multiply(prod, cb.primitives[p]);
    return prod;
  };

  auto gens = chevalley_generators(ctx.root_system());

  // Primitive Casimirs live in degrees 2..n for sl(n).
  for (int k = 2; k <= prim_cap; ++k) {
    auto cols = detail::monomials_up_to(g.dim, k);
    if (static_cast<int>(cols.size()) > nullspace_column_limit)
      throw resource_error("center nullspace dimension exceeds the configured limit");
    std::map<Monomial, int> ci;
    for (std::size_t i = 0; i < cols.size(); ++i) ci[cols[i]] = static_cast<int>(i);

    SparseMatrixQ A(static_cast<int>(gens.size() * cols.size()), static_cast<int>(cols.size()));
    for (std::size_t gidx = 0; gidx < gens.size(); ++gidx)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        PbwElement mono{g.dim, {}};
        mono.add_term(cols[j], 1);
        PbwElement img = ctx.ad(gens[gidx], mono);
        for (const auto& [mo, c] : img.terms)
          A.add(static_cast<int>(gidx * cols.size()) + ci.at(mo), static_cast<int>(j), c);
      }
    auto null = nullspace(A);

    // span of products of the primitives found so far
    detail::IncrementalEchelon ech;
    for (const auto& [exps, deg] : detail::exponents_up_to(cb.primitive_degrees, prim_cap))
      ech.add(coeff_vector(product_of(exps)));

    bool found = false;
    for (const auto& cand : null) {
      PbwElement e{g.dim, {}};
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (cand[j] != 0) e.add_term(cols[j], cand[j]);
      detail::IncrementalEchelon probe = ech;
      if (!probe.add(coeff_vector(e))) continue;
      Rational lead = e.terms.rbegin()->second;  // lex-largest monomial
      e *= Rational(1) / lead;
      if (!commutes_with_algebra(ctx, e))
        throw invariant_error("centrality", "nullspace vector fails to commute");
      cb.primitives.push_back(e);
      cb.primitive_degrees.push_back(e.degree());
      found = true;
      break;
    }
    if (!found)
      throw invariant_error("center-rank", "no new Casimir found at degree " + std::to_string(k));
  }

  // Full basis: monomials in the primitives with filtration degree <= m.
  for (const auto& [exps, deg] : detail::exponents_up_to(cb.primitive_degrees, m)) {
    PbwElement prod = product_of(exps);
    if (!commutes_with_algebra(ctx, prod))
      throw invariant_error("centrality", "center basis element fails to commute");
    cb.elements.push_back(prod);
    cb.casimir_exponents.push_back(exps);
    cb.degrees.push_back(deg);
    cb.gamma_images.push_back(ctx.gamma(prod));
  }
  return cb;
}

}  // namespace horokit
