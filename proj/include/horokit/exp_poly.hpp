#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "horokit/errors.hpp"

namespace horokit {

using Complex = std::complex<double>;

/// One summand c * t^k * e^{mu t}.
struct ExpTerm {
  int k = 0;
  Complex mu{0.0, 0.0};
  Complex c{0.0, 0.0};
};

namespace detail {
inline bool term_key_less(const ExpTerm& a, const ExpTerm& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.mu.real() != b.mu.real()) return a.mu.real() < b.mu.real();
  return a.mu.imag() < b.mu.imag();
}
inline bool term_key_eq(const ExpTerm& a, const ExpTerm& b) {
  return a.k == b.k && a.mu == b.mu;
}
}  // namespace detail

/// Finite sum of terms t^k e^{mu t}; closed under the operations used by the
/// kernel recursions.  Canonical: equal (k, mu) keys merged, zero
/// coefficients dropped.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpTerm> terms) : terms_(std::move(terms)) { normalize(); }
  static ExpPoly constant(Complex c) { return ExpPoly({{0, Complex(0), c}}); }
  static ExpPoly term(Complex c, int k, Complex mu) { return ExpPoly({{k, mu, c}}); }

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExpPoly& operator+=(const ExpPoly& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
  }
  ExpPoly& operator-=(const ExpPoly& o) {
    for (const auto& t : o.terms_) terms_.push_back({t.k, t.mu, -t.c});
    normalize();
    return *this;
  }
  ExpPoly& operator*=(Complex s) {
    for (auto& t : terms_) t.c *= s;
    normalize();
    return *this;
  }
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(Complex s, ExpPoly a) { return a *= s; }

  ExpPoly multiply(const ExpPoly& o) const {
    std::vector<ExpTerm> out;
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) out.push_back({a.k + b.k, a.mu + b.mu, a.c * b.c});
    return ExpPoly(std::move(out));
  }

  ExpPoly derivative() const {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_) {
      if (t.k > 0) out.push_back({t.k - 1, t.mu, t.c * double(t.k)});
      out.push_back({t.k, t.mu, t.c * t.mu});
    }
    return ExpPoly(std::move(out));
  }

  /// (d/dt - lambda) applied symbolically.
  ExpPoly ode_factor(Complex lambda) const {
    ExpPoly d = derivative();
    ExpPoly scaled = *this;
    scaled *= lambda;
    return d - scaled;
  }

  /// Multiplication by e^{nu t}.
  ExpPoly exp_shift(Complex nu) const {
    std::vector<ExpTerm> out = terms_;
    for (auto& t : out) t.mu += nu;
    return ExpPoly(std::move(out));
  }

  Complex eval(double t) const {
    Complex s(0.0);
    for (const auto& term : terms_) s += term.c * std::pow(t, term.k) * std::exp(term.mu * t);
    return s;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
  }

  /// Smallest Re(mu) among terms with |c| above the cutoff; +inf when empty.
  double min_re_exponent(double coeff_cutoff = 0.0) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_)
      if (std::abs(t.c) > coeff_cutoff) m = std::min(m, t.mu.real());
    return m;
  }

  /// Drops terms whose coefficient is below eps (used to clear roundoff dust
  /// after cancellations; never applied implicitly).
  ExpPoly pruned(double eps) const {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_)
      if (std::abs(t.c) > eps) out.push_back(t);
    return ExpPoly(std::move(out));
  }

  /// Merges terms of equal power whose exponents agree to exp_tol.  Distinct
  /// construction paths can leave bitwise-different copies of the same
  /// exponent; normalize() only merges exact keys.
  ExpPoly coalesced(double exp_tol) const {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_) {  // terms_ sorted by (k, re, im)
      if (!out.empty() && out.back().k == t.k && std::abs(out.back().mu - t.mu) <= exp_tol)
        out.back().c += t.c;
      else
        out.push_back(t);
    }
    return ExpPoly(std::move(out));
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), detail::term_key_less);
    std::vector<ExpTerm> merged;
    for (const auto& t : terms_) {
      if (!merged.empty() && detail::term_key_eq(merged.back(), t))
        merged.back().c += t.c;
      else
        merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const ExpTerm& t) { return t.c == Complex(0.0); }),
                 merged.end());
    terms_ = std::move(merged);
  }

  std::vector<ExpTerm> terms_;
};

namespace detail {

// Antiderivative of r^k e^{ar} for a != 0: e^{ar} * sum_j d[j] r^j.
inline std::vector<Complex> antider_coeffs(int k, Complex a) {
  std::vector<Complex> d(k + 1);
  d[k] = 1.0 / a;
  for (int j = k; j >= 1; --j) d[j - 1] = -double(j) * d[j] / a;
  return d;
}

}  // namespace detail

enum class IntegralKind { LowerTail, FiniteToZero };

/// integral of e^{nu s} p(s) ds:
///   LowerTail:     from -infinity to t (every combined exponent must have
///                  positive real part, else domain_error);
///   FiniteToZero:  from t to 0.
inline ExpPoly integrate_exp_poly(const ExpPoly& p, IntegralKind kind, Complex nu = Complex(0)) {
  std::vector<ExpTerm> out;
  for (const auto& term : p.terms()) {
    Complex a = term.mu + nu;
    if (kind == IntegralKind::LowerTail) {
      if (a.real() <= 0.0)
        throw domain_error("integrate_exp_poly: divergent lower tail (Re exponent <= 0)");
      auto d = detail::antider_coeffs(term.k, a);
      for (int j = 0; j <= term.k; ++j) out.push_back({j, a, term.c * d[j]});
    } else {
      if (a == Complex(0.0)) {
        // antiderivative r^{k+1}/(k+1): F(0) - F(t) = -t^{k+1}/(k+1)
        out.push_back({term.k + 1, Complex(0), -term.c / double(term.k + 1)});
      } else {
        auto d = detail::antider_coeffs(term.k, a);
        out.push_back({0, Complex(0), term.c * d[0]});  // F(0)
        for (int j = 0; j <= term.k; ++j) out.push_back({j, a, -term.c * d[j]});
      }
    }
  }
  return ExpPoly(std::move(out));
}

}  // namespace horokit
