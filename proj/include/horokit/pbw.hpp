#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "horokit/chamber.hpp"
#include "horokit/root_system.hpp"

namespace horokit {

/// Exponent vector over the fixed ordered basis (n+ generators first, then
/// Cartan, then n-).
using Monomial = std::vector<std::uint8_t>;

inline int monomial_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

/// Exact-rational element of the enveloping algebra, kept canonical: no zero
/// coefficients, exponents respect the fixed basis order.
struct PbwElement {
  int dim = 0;
  std::map<Monomial, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, monomial_degree(m));
    return d;
  }
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  PbwElement& operator+=(const PbwElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  PbwElement& operator-=(const PbwElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
  }
  PbwElement& operator*=(const Rational& s) {
    if (s == 0) {
      terms.clear();
      return *this;
    }
    for (auto& [m, c] : terms) c *= s;
    return *this;
  }
  friend PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
  friend PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }
  friend PbwElement operator*(const Rational& s, PbwElement a) { return a *= s; }
  friend bool operator==(const PbwElement& a, const PbwElement& b) { return a.terms == b.terms; }
};

/// Straightening context: owns the root system and memoizes monomial-times-
/// generator products.  Multiplication is pure; the caches are an internal
/// detail.
class PbwContext {
 public:
  explicit PbwContext(RestrictedRootSystem rs, int max_degree = 30)
      : rs_(std::move(rs)), max_degree_(max_degree) {
    const auto& g = rs_.alg;
    rho_diag_ = qvec_zero(g.n);
    for (int rp : rs_.positive) rho_diag_ = rho_diag_ + Rational(1, 2) * rs_.roots[rp].coeff;
    rho_on_cartan_.resize(g.cartan_dim);
    for (int k = 0; k < g.cartan_dim; ++k) {
      QVec d(g.n, Rational(0));
      d[k] = 1;
      d[k + 1] = -1;
      rho_on_cartan_[k] = dot(rho_diag_, d);
    }
  }

  const RestrictedRootSystem& root_system() const { return rs_; }
  const LieAlgebraData& algebra() const { return rs_.alg; }
  int max_degree() const { return max_degree_; }
  const QVec& rho_diag() const { return rho_diag_; }
  Rational rho_at(const QVec& diag) const { return dot(rho_diag_, diag); }

  PbwElement zero() const { return PbwElement{algebra().dim, {}}; }
  PbwElement one() const {
    PbwElement e{algebra().dim, {}};
    e.add_term(Monomial(algebra().dim, 0), 1);
    return e;
  }
  PbwElement scalar(const Rational& c) const {
    PbwElement e = zero();
    e.add_term(Monomial(algebra().dim, 0), c);
    return e;
  }
  PbwElement generator(int k) const {
    PbwElement e = zero();
    Monomial m(algebra().dim, 0);
    m[k] = 1;
    e.add_term(m, 1);
    return e;
  }
  /// The Cartan element with the given traceless diagonal entries.
  PbwElement cartan_element(const QVec& diag_entries) const {
    const auto& g = algebra();
    QVec t = g.cartan_coords(diag_entries);
    PbwElement e = zero();
    for (int k = 0; k < g.cartan_dim; ++k) {
      if (t[k] == 0) continue;
      Monomial m(g.dim, 0);
      m[g.cartan_begin() + k] = 1;
      e.add_term(m, t[k]);
    }
    return e;
  }

  /// Product a*b, straightened into the canonical order.
  PbwElement multiply(const PbwElement& a, const PbwElement& b) const {
    PbwElement out = zero();
    for (const auto& [mb, cb] : b.terms) {
      PbwElement acc = a;
      acc *= cb;
      for (int k = 0; k < algebra().dim; ++k)
        for (int rep = 0; rep < mb[k]; ++rep) acc = times_generator(acc, k);
      out += acc;
    }
    return out;
  }

  PbwElement power(const PbwElement& a, int k) const {
    PbwElement out = one();
    for (int i = 0; i < k; ++i) out = multiply(out, a);
    return out;
  }

  /// ad_X(u) = X u - u X.
  PbwElement ad(int gen, const PbwElement& u) const {
    return multiply(generator(gen), u) - multiply(u, generator(gen));
  }

  PbwElement times_generator(const PbwElement& a, int gen) const {
    PbwElement out = zero();
    for (const auto& [m, c] : a.terms) {
      const PbwElement& prod = mono_times_gen(m, gen);
      for (const auto& [pm, pc] : prod.terms) out.add_term(pm, c * pc);
    }
    return out;
  }

  int nplus_degree(const Monomial& m) const {
    int d = 0;
    for (int k = 0; k < algebra().num_pos; ++k) d += m[k];
    return d;
  }
  int nminus_degree(const Monomial& m) const {
    int d = 0;
    for (int k = algebra().neg_begin(); k < algebra().dim; ++k) d += m[k];
    return d;
  }
  bool in_cartan_subalgebra(const PbwElement& a) const {
    for (const auto& [m, c] : a.terms)
      if (nplus_degree(m) != 0 || nminus_degree(m) != 0) return false;
    return true;
  }

  /// Projection onto U(h) along  g+ U + U g-  (a monomial filter in this
  /// order).
  PbwElement hc_project(const PbwElement& a) const {
    PbwElement out = zero();
    for (const auto& [m, c] : a.terms)
      if (nplus_degree(m) == 0 && nminus_degree(m) == 0) out.add_term(m, c);
    return out;
  }

  /// The shift automorphism of U(h): h_k -> h_k + delta_k.  Inverse is the
  /// shift by -delta.
  PbwElement delta_shift(const PbwElement& p, const QVec& delta_on_cartan) const {
    const auto& g = algebra();
    if (!in_cartan_subalgebra(p)) throw argument_error("delta_shift: element not in U(h)");
    PbwElement out = zero();
    for (const auto& [m, c] : p.terms) {
      PbwElement acc = scalar(c);
      for (int k = 0; k < g.cartan_dim; ++k) {
        for (int rep = 0; rep < m[g.cartan_begin() + k]; ++rep) {
          PbwElement factor = generator(g.cartan_begin() + k);
          factor += scalar(delta_on_cartan[k]);
          acc = multiply_uh(acc, factor);
        }
      }
      out += acc;
    }
    return out;
  }

  /// The Harish-Chandra map restricted to canonical elements:
  /// gamma = (rho-shift) o Proj_h.
  PbwElement gamma(const PbwElement& a) const {
    return delta_shift(hc_project(a), rho_on_cartan_);
  }

  /// Substitutes h_k -> sum_l images[k][l] h_l on an element of U(h).
  PbwElement substitute_cartan(const PbwElement& p, const std::vector<QVec>& images) const {
    const auto& g = algebra();
    if (!in_cartan_subalgebra(p)) throw argument_error("substitute_cartan: element not in U(h)");
    PbwElement out = zero();
    for (const auto& [m, c] : p.terms) {
      PbwElement acc = scalar(c);
      for (int k = 0; k < g.cartan_dim; ++k) {
        for (int rep = 0; rep < m[g.cartan_begin() + k]; ++rep) {
          PbwElement factor = zero();
          for (int l = 0; l < g.cartan_dim; ++l) {
            if (images[k][l] == 0) continue;
            Monomial mm(g.dim, 0);
            mm[g.cartan_begin() + l] = 1;
            factor.add_term(mm, images[k][l]);
          }
          acc = multiply_uh(acc, factor);
        }
      }
      out += acc;
    }
    return out;
  }

  /// Action of the transposition s_i (swapping diagonal entries i, i+1) on
  /// an element of U(h).
  PbwElement weyl_transposition(const PbwElement& p, int i) const {
    const auto& g = algebra();
    std::vector<QVec> images(g.cartan_dim);
    for (int k = 0; k < g.cartan_dim; ++k) {
      QVec d(g.n, Rational(0));
      d[k] = 1;
      d[k + 1] = -1;
      std::swap(d[i], d[i + 1]);
      images[k] = g.cartan_coords(d);
    }
    return substitute_cartan(p, images);
  }

  bool is_weyl_invariant(const PbwElement& p) const {
    for (int i = 0; i + 1 < algebra().n; ++i)
      if (!(weyl_transposition(p, i) == p)) return false;
    return true;
  }

 private:
  // Commutative product inside U(h) (exponent addition, no straightening).
  PbwElement multiply_uh(const PbwElement& a, const PbwElement& b) const {
    PbwElement out = zero();
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        Monomial m = ma;
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
        out.add_term(m, ca * cb);
      }
    return out;
  }

  // m * X_gen, straightened.  Memoized; the recursion is the usual PBW
  // rewriting X_a X_b = X_b X_a + [X_a, X_b] applied from the right.
  const PbwElement& mono_times_gen(const Monomial& m, int gen) const {
    auto key = std::make_pair(m, gen);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    const auto& g = algebra();
    int deg = monomial_degree(m);
    if (deg + 1 > max_degree_)
      throw resource_error("pbw degree overflow beyond the configured bound");
    if (cache_.size() > cache_cap_)
      throw resource_error("pbw straightening cache exceeded its budget");

    int last = -1;
    for (int k = g.dim - 1; k >= 0; --k)
      if (m[k] > 0) {
        last = k;
        break;
      }

    PbwElement result{g.dim, {}};
    if (last <= gen) {
      Monomial mm = m;
      mm[gen] += 1;
      result.add_term(mm, 1);
    } else {
      Monomial m0 = m;
      m0[last] -= 1;
      // m0 * X_gen, then append X_last, plus the bracket correction
      const PbwElement inner = mono_times_gen(m0, gen);  // copy: recursion may grow cache_
      result = times_generator(inner, last);
      for (const auto& [c, v] : g.bracket(last, gen)) {
        const PbwElement& corr = mono_times_gen(m0, c);
        for (const auto& [cm, cc] : corr.terms) result.add_term(cm, v * cc);
      }
    }
    auto [pos, inserted] = cache_.emplace(std::move(key), std::move(result));
    return pos->second;
  }

  RestrictedRootSystem rs_;
  int max_degree_;
  QVec rho_diag_;
  QVec rho_on_cartan_;
  std::size_t cache_cap_ = exact_solver_nonzero_cap();
  mutable std::map<std::pair<Monomial, int>, PbwElement> cache_;
};

}  // namespace horokit
