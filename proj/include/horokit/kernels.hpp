#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "horokit/exp_poly.hpp"

namespace horokit {

/// Multiset of ODE characteristic values split at the threshold beta:
/// lambda_minus holds Re < beta (descending by Re), lambda_plus holds
/// Re >= beta (descending by Re).  Ties on the threshold go to the plus
/// block.
struct LambdaSpec {
  std::vector<Complex> lambda_minus;
  std::vector<Complex> lambda_plus;
  double beta = 0;

  int m1() const { return static_cast<int>(lambda_minus.size()); }
  int m2() const { return static_cast<int>(lambda_plus.size()); }
  int W() const { return m1() + m2(); }
  double max_abs() const {
    double m = 0;
    for (const auto& l : lambda_minus) m = std::max(m, std::abs(l));
    for (const auto& l : lambda_plus) m = std::max(m, std::abs(l));
    return m;
  }
  std::vector<Complex> all() const {
    std::vector<Complex> v = lambda_minus;
    v.insert(v.end(), lambda_plus.begin(), lambda_plus.end());
    return v;
  }
};

/// Deterministic split of a multiset at the threshold beta; invariant under
/// permutations of the input.
inline LambdaSpec order_lambda(std::vector<Complex> lambda, double beta) {
  if (!(beta > 0)) throw argument_error("order_lambda: beta must be positive");
  LambdaSpec spec;
  spec.beta = beta;
  auto desc = [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  };
  for (const auto& l : lambda)
    (l.real() < beta ? spec.lambda_minus : spec.lambda_plus).push_back(l);
  std::sort(spec.lambda_minus.begin(), spec.lambda_minus.end(), desc);
  std::sort(spec.lambda_plus.begin(), spec.lambda_plus.end(), desc);
  return spec;
}

/// One summand c * t^a s^b e^{mu t + nu s}.
struct ExpTerm2 {
  int a = 0, b = 0;
  Complex mu{0}, nu{0};
  Complex c{0};
};

namespace detail {
inline bool term2_less(const ExpTerm2& x, const ExpTerm2& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  if (x.mu.real() != y.mu.real()) return x.mu.real() < y.mu.real();
  if (x.mu.imag() != y.mu.imag()) return x.mu.imag() < y.mu.imag();
  if (x.nu.real() != y.nu.real()) return x.nu.real() < y.nu.real();
  return x.nu.imag() < y.nu.imag();
}
inline bool term2_keyeq(const ExpTerm2& x, const ExpTerm2& y) {
  return x.a == y.a && x.b == y.b && x.mu == y.mu && x.nu == y.nu;
}
}  // namespace detail

class ExpPoly2 {
 public:
  ExpPoly2() = default;
  explicit ExpPoly2(std::vector<ExpTerm2> terms) : terms_(std::move(terms)) { normalize(); }
  static ExpPoly2 term(Complex c, int a, Complex mu, int b, Complex nu) {
    return ExpPoly2({{a, b, mu, nu, c}});
  }

  const std::vector<ExpTerm2>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExpPoly2& operator+=(const ExpPoly2& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
  }
  ExpPoly2& operator*=(Complex s) {
    for (auto& t : terms_) t.c *= s;
    normalize();
    return *this;
  }
  friend ExpPoly2 operator+(ExpPoly2 a, const ExpPoly2& b) { return a += b; }

  /// Multiplication by e^{mu t} (first slot) or e^{nu s} (second slot).
  ExpPoly2 exp_shift_t(Complex mu) const {
    auto out = terms_;
    for (auto& t : out) t.mu += mu;
    return ExpPoly2(std::move(out));
  }
  ExpPoly2 exp_shift_s(Complex nu) const {
    auto out = terms_;
    for (auto& t : out) t.nu += nu;
    return ExpPoly2(std::move(out));
  }

  Complex eval(double t, double s) const {
    Complex acc(0);
    for (const auto& x : terms_)
      acc += x.c * std::pow(t, x.a) * std::pow(s, x.b) * std::exp(x.mu * t + x.nu * s);
    return acc;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), detail::term2_less);
    std::vector<ExpTerm2> merged;
    for (const auto& t : terms_) {
      if (!merged.empty() && detail::term2_keyeq(merged.back(), t))
        merged.back().c += t.c;
      else
        merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const ExpTerm2& t) { return t.c == Complex(0.0); }),
                 merged.end());
    terms_ = std::move(merged);
  }
  std::vector<ExpTerm2> terms_;
};

/// Two-branch kernel on R_{<=0} x R_{<=0} with breakline s = t.  `lower`
/// applies for s <= t, `upper` for s > t; no continuity across the break is
/// required.
struct PiecewiseKernel2 {
  ExpPoly2 lower, upper;

  Complex eval(double t, double s) const { return s <= t ? lower.eval(t, s) : upper.eval(t, s); }
  bool is_zero() const { return lower.is_zero() && upper.is_zero(); }
  PiecewiseKernel2 exp_shift_t(Complex mu) const {
    return {lower.exp_shift_t(mu), upper.exp_shift_t(mu)};
  }
  PiecewiseKernel2 exp_shift_s(Complex nu) const {
    return {lower.exp_shift_s(nu), upper.exp_shift_s(nu)};
  }
  PiecewiseKernel2 scaled(Complex c) const {
    PiecewiseKernel2 out = *this;
    out.lower *= c;
    out.upper *= c;
    return out;
  }
  double max_abs_coeff() const { return std::max(lower.max_abs_coeff(), upper.max_abs_coeff()); }
};

namespace detail {

// Term with an explicit integration variable r besides t and s.
struct TriTerm {
  Complex c{0};
  int tp = 0, sp = 0, rp = 0;
  Complex te{0}, se{0}, re{0};
};

enum class Bound { MinusInf, S, T, Zero };

// integral of the TriTerms in r between two bounds; evaluation at a bound
// moves the r powers/exponents into the t or s slot.
inline std::vector<ExpTerm2> integrate_r(const std::vector<TriTerm>& terms, Bound lo, Bound hi) {
  std::vector<ExpTerm2> out;
  auto emit_eval = [&out](const TriTerm& t, const std::vector<Complex>& d, Bound at,
                          double sign) {
    // F(r) = e^{re r} sum_j d[j] r^j (re != 0) evaluated at the bound
    switch (at) {
      case Bound::Zero:
        out.push_back({t.tp, t.sp, t.te, t.se, sign * t.c * d[0]});
        break;
      case Bound::T:
        for (std::size_t j = 0; j < d.size(); ++j)
          out.push_back({t.tp + static_cast<int>(j), t.sp, t.te + t.re, t.se, sign * t.c * d[j]});
        break;
      case Bound::S:
        for (std::size_t j = 0; j < d.size(); ++j)
          out.push_back({t.tp, t.sp + static_cast<int>(j), t.te, t.se + t.re, sign * t.c * d[j]});
        break;
      case Bound::MinusInf:
        break;  // contributes zero (validity checked by the caller)
    }
  };
  for (const auto& t : terms) {
    if (t.re == Complex(0.0)) {
      // antiderivative r^{rp+1}/(rp+1)
      double inv = 1.0 / double(t.rp + 1);
      auto emit_poly = [&](Bound at, double sign) {
        switch (at) {
          case Bound::Zero:
            break;  // 0^{rp+1} = 0
          case Bound::T:
            out.push_back({t.tp + t.rp + 1, t.sp, t.te, t.se, sign * t.c * inv});
            break;
          case Bound::S:
            out.push_back({t.tp, t.sp + t.rp + 1, t.te, t.se, sign * t.c * inv});
            break;
          case Bound::MinusInf:
            throw domain_error("integrate_r: divergent lower tail (zero exponent)");
        }
      };
      emit_poly(hi, +1.0);
      emit_poly(lo, -1.0);
    } else {
      if (lo == Bound::MinusInf && t.re.real() <= 0.0)
        throw domain_error("integrate_r: divergent lower tail (Re exponent <= 0)");
      auto d = antider_coeffs(t.rp, t.re);
      emit_eval(t, d, hi, +1.0);
      emit_eval(t, d, lo, -1.0);
    }
  }
  return out;
}

// K(t,r): second slot becomes the integration variable.
inline std::vector<TriTerm> as_outer(const ExpPoly2& K, Complex extra_r_exp = Complex(0)) {
  std::vector<TriTerm> out;
  for (const auto& x : K.terms())
    out.push_back({x.c, x.a, 0, x.b, x.mu, Complex(0), x.nu + extra_r_exp});
  return out;
}

// G(r,s): first slot becomes the integration variable.
inline std::vector<TriTerm> as_inner(const ExpPoly2& G, Complex extra_r_exp = Complex(0)) {
  std::vector<TriTerm> out;
  for (const auto& x : G.terms())
    out.push_back({x.c, 0, x.b, x.a, Complex(0), x.nu, x.mu + extra_r_exp});
  return out;
}

inline std::vector<TriTerm> tri_product(const std::vector<TriTerm>& a,
                                        const std::vector<TriTerm>& b) {
  std::vector<TriTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b)
      out.push_back({x.c * y.c, x.tp + y.tp, x.sp + y.sp, x.rp + y.rp, x.te + y.te, x.se + y.se,
                     x.re + y.re});
  return out;
}

}  // namespace detail

/// newK(t,s) = int_{-infty}^t e^{delta r} K(r,s) dr for a kernel whose upper
/// branch vanishes (used by the lower-tail chain; no tail convergence is
/// needed because the integrand vanishes below s).
inline PiecewiseKernel2 kernel_lower_tail_step(const PiecewiseKernel2& K, Complex delta) {
  if (!K.upper.is_zero())
    throw argument_error("kernel_lower_tail_step: kernel must vanish for s > t");
  using namespace detail;
  PiecewiseKernel2 out;
  out.lower = ExpPoly2(integrate_r(as_inner(K.lower, delta), Bound::S, Bound::T));
  return out;
}

/// newK(t,s) = -int_t^0 e^{delta r} K(r,s) dr.
inline PiecewiseKernel2 kernel_finite_step(const PiecewiseKernel2& K, Complex delta) {
  using namespace detail;
  PiecewiseKernel2 out;
  // s <= t: the whole range [t,0] sees the lower branch of K
  {
    auto v = integrate_r(as_inner(K.lower, delta), Bound::T, Bound::Zero);
    ExpPoly2 val(std::move(v));
    val *= Complex(-1.0);
    out.lower = val;
  }
  // s > t: [t,s] sees the upper branch, [s,0] the lower branch
  {
    auto v1 = integrate_r(as_inner(K.upper, delta), Bound::T, Bound::S);
    auto v2 = integrate_r(as_inner(K.lower, delta), Bound::S, Bound::Zero);
    ExpPoly2 val(std::move(v1));
    val += ExpPoly2(std::move(v2));
    val *= Complex(-1.0);
    out.upper = val;
  }
  return out;
}

/// R(t,s) = int_{-infty}^0 K(t,r) G(r,s) dr.
inline PiecewiseKernel2 kernel_compose(const PiecewiseKernel2& K, const PiecewiseKernel2& G) {
  using namespace detail;
  PiecewiseKernel2 out;
  {  // t >= s: (-inf,s] K_lo G_up ; [s,t] K_lo G_lo ; [t,0] K_up G_lo
    std::vector<ExpTerm2> acc;
    auto add = [&acc](std::vector<ExpTerm2> v) {
      acc.insert(acc.end(), v.begin(), v.end());
    };
    add(integrate_r(tri_product(as_outer(K.lower), as_inner(G.upper)), Bound::MinusInf, Bound::S));
    add(integrate_r(tri_product(as_outer(K.lower), as_inner(G.lower)), Bound::S, Bound::T));
    add(integrate_r(tri_product(as_outer(K.upper), as_inner(G.lower)), Bound::T, Bound::Zero));
    out.lower = ExpPoly2(std::move(acc));
  }
  {  // t < s: (-inf,t] K_lo G_up ; [t,s] K_up G_up ; [s,0] K_up G_lo
    std::vector<ExpTerm2> acc;
    auto add = [&acc](std::vector<ExpTerm2> v) {
      acc.insert(acc.end(), v.begin(), v.end());
    };
    add(integrate_r(tri_product(as_outer(K.lower), as_inner(G.upper)), Bound::MinusInf, Bound::T));
    add(integrate_r(tri_product(as_outer(K.upper), as_inner(G.upper)), Bound::T, Bound::S));
    add(integrate_r(tri_product(as_outer(K.upper), as_inner(G.lower)), Bound::S, Bound::Zero));
    out.upper = ExpPoly2(std::move(acc));
  }
  return out;
}

/// g(t) = int_{-infty}^0 K(t,s) f(s) ds.
inline ExpPoly kernel_apply(const PiecewiseKernel2& K, const ExpPoly& f) {
  using namespace detail;
  std::vector<TriTerm> fterms;
  for (const auto& x : f.terms()) fterms.push_back({x.c, 0, 0, x.k, Complex(0), Complex(0), x.mu});
  auto collect = [](std::vector<ExpTerm2> v) {
    std::vector<ExpTerm> out;
    for (const auto& x : v) {
      if (x.b != 0 || x.nu != Complex(0.0))
        throw invariant_error("kernel-apply", "left-over s dependence after s integration");
      out.push_back({x.a, x.mu, x.c});
    }
    return out;
  };
  std::vector<ExpTerm> acc;
  auto lo = collect(integrate_r(tri_product(as_outer(K.lower), fterms), Bound::MinusInf, Bound::T));
  auto up = collect(integrate_r(tri_product(as_outer(K.upper), fterms), Bound::T, Bound::Zero));
  acc.insert(acc.end(), lo.begin(), lo.end());
  acc.insert(acc.end(), up.begin(), up.end());
  return ExpPoly(std::move(acc));
}

/// The explicit flow kernels F(t,s) and F_0..F_W(t): the reconstruction of a
/// solution from the forcing term and the boundary data at 0 is
///   I(t) = int_{-infty}^0 F(t,s) psi(s) ds + sum_i F_i(t) I^{(i)}(0).
struct Burger1Kernels {
  PiecewiseKernel2 F;
  std::vector<ExpPoly> Fi;  // size W+1 (zero beyond index m2)
};

inline Burger1Kernels kernel_F(const LambdaSpec& spec) {
  const int m1 = spec.m1(), m2 = spec.m2(), W = spec.W();
  if (W == 0) throw argument_error("kernel_F: empty lambda multiset");
  const auto& lm = spec.lambda_minus;
  const auto& lp = spec.lambda_plus;

  // elementary coefficients P_{i,j}: prod_{l=i+1}^{m2} (z - lambda_l^+) = sum_j P[i][j] z^j
  std::vector<std::vector<Complex>> P(m2 + 1);
  for (int i = 0; i <= m2; ++i) {
    std::vector<Complex> poly{1.0};
    for (int l = i + 1; l <= m2; ++l) {
      std::vector<Complex> next(poly.size() + 1, Complex(0));
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d];
        next[d] -= lp[l - 1] * poly[d];
      }
      poly = std::move(next);
    }
    P[i] = std::move(poly);
  }

  PiecewiseKernel2 Phi;
  std::vector<ExpPoly> Pi(m2 + 1);  // boundary coefficient functions, by derivative order
  int i0 = 0;                       // current stage
  if (m1 > 0) {
    // lower-tail chain through the minus block
    Phi.lower = ExpPoly2::term(1.0, 0, Complex(0), 0, -lm[0]);
    for (int i = 2; i <= m1; ++i) Phi = kernel_lower_tail_step(Phi, lm[i - 2] - lm[i - 1]);
    Phi = Phi.exp_shift_t(lm[m1 - 1]);
    i0 = 0;
  } else {
    // phi_1(t,s) = -e^{-lambda_1^+ s} on s >= t
    Phi.upper = ExpPoly2::term(-1.0, 0, Complex(0), 0, -lp[0]);
    for (std::size_t j = 0; j < P[1].size(); ++j)
      Pi[j] += ExpPoly::constant(P[1][j]);
    i0 = 1;
  }

  for (int i = i0; i < m2; ++i) {
    Complex prev = (i == 0) ? Complex(0) : lp[i - 1];
    Complex delta = prev - lp[i];
    Phi = kernel_finite_step(Phi, delta);
    std::vector<ExpPoly> next(m2 + 1);
    for (int j = 0; j <= m2; ++j) {
      ExpPoly integ = integrate_exp_poly(Pi[j], IntegralKind::FiniteToZero, delta);
      next[j] = Complex(-1.0) * integ;
      if (j < static_cast<int>(P[i + 1].size())) next[j] += ExpPoly::constant(P[i + 1][j]);
    }
    Pi = std::move(next);
  }

  Burger1Kernels out;
  Complex top = (m2 > 0) ? lp[m2 - 1] : Complex(0);
  out.F = Phi.exp_shift_t(top);
  out.Fi.assign(W + 1, ExpPoly());
  for (int j = 0; j <= m2; ++j) out.Fi[j] = Pi[j].exp_shift(top);
  return out;
}

/// Right-hand side of the reconstruction for a forcing term psi (decaying
/// strictly faster than beta) and boundary values I^{(i)}(0), i = 0..W.
inline ExpPoly burger1_reconstruct(const LambdaSpec& spec, const ExpPoly& psi,
                                   const std::vector<Complex>& boundary,
                                   const Burger1Kernels* kernels = nullptr) {
  if (static_cast<int>(boundary.size()) != spec.W() + 1)
    throw argument_error("burger1_reconstruct: boundary data must have W+1 entries");
  if (!psi.is_zero() && psi.min_re_exponent() <= spec.beta)
    throw domain_error("burger1_reconstruct: psi does not decay faster than beta");
  Burger1Kernels local;
  if (!kernels) {
    local = kernel_F(spec);
    kernels = &local;
  }
  ExpPoly out = kernel_apply(kernels->F, psi);
  for (int i = 0; i <= spec.W(); ++i) out += boundary[i] * kernels->Fi[i];
  return out;
}

/// prod_i (d/dt - lambda_i) applied symbolically.
inline ExpPoly apply_ode_operator(const ExpPoly& f, const std::vector<Complex>& lambda) {
  ExpPoly out = f;
  for (const auto& l : lambda) out = out.ode_factor(l);
  return out;
}

struct GridSpec {
  double t_min = -20, t_max = 0;
  double s_min = -20, s_max = 0;
  int nt = 50, ns = 50;
};

struct BoundReport {
  double sup_ratio = 0;      // max |value| / envelope over the grid
  double arg_t = 0, arg_s = 0;
  bool divergence_flag = false;
  double boundary_sup = 0, interior_sup = 0;
  bool zero_envelope_violation = false;
};

namespace detail {
inline void bound_tally(BoundReport& rep, double ratio, double t, double s, double frac_t) {
  if (ratio > rep.sup_ratio) {
    rep.sup_ratio = ratio;
    rep.arg_t = t;
    rep.arg_s = s;
  }
  if (frac_t < 0.1)
    rep.boundary_sup = std::max(rep.boundary_sup, ratio);
  else if (frac_t > 0.5)
    rep.interior_sup = std::max(rep.interior_sup, ratio);
}
inline void bound_finalize(BoundReport& rep) {
  rep.divergence_flag =
      rep.boundary_sup > 10.0 * std::max(rep.interior_sup, 1e-12) && rep.boundary_sup > 100.0;
}
}  // namespace detail

/// Measures |F(t,s)| against |t|^{W-1-m0} |s|^{m0} e^{beta (t-s)} on the
/// grid; m0 = max(0, m1-1).  The report carries the empirical constant and a
/// growth flag (boundary band dominating the interior).
inline BoundReport check_F_bound(const LambdaSpec& spec, const PiecewiseKernel2& F,
                                 const GridSpec& grid = {},
                                 const std::function<void(double, double, double, double)>& sink =
                                     nullptr) {
  const int m0 = std::max(0, spec.m1() - 1);
  const int tp = spec.W() - 1 - m0;
  BoundReport rep;
  for (int it = 0; it <= grid.nt; ++it) {
    double t = grid.t_min + (grid.t_max - grid.t_min) * it / grid.nt;
    double frac_t = static_cast<double>(it) / grid.nt;
    for (int is = 0; is <= grid.ns; ++is) {
      double s = grid.s_min + (grid.s_max - grid.s_min) * is / grid.ns;
      double env = std::pow(std::abs(t), tp) * std::pow(std::abs(s), m0) *
                   std::exp(spec.beta * (t - s));
      double val = std::abs(F.eval(t, s));
      if (env < 1e-300) {
        if (val > 1e-9 * (1.0 + F.max_abs_coeff())) rep.zero_envelope_violation = true;
        continue;
      }
      double ratio = val / env;
      detail::bound_tally(rep, ratio, t, s, std::min(frac_t, static_cast<double>(is) / grid.ns));
      if (sink) sink(t, s, val, env);
    }
  }
  detail::bound_finalize(rep);
  return rep;
}

/// Measures |F_i(t)| against (1 + |lambda|_inf^W)(1 + |t|^W) e^{beta t}.
inline BoundReport check_Fi_bound(const LambdaSpec& spec, const std::vector<ExpPoly>& Fi,
                                  const GridSpec& grid = {},
                                  const std::function<void(int, double, double, double)>& sink =
                                      nullptr) {
  BoundReport rep;
  double lam = 1.0 + std::pow(spec.max_abs(), spec.W());
  for (int i = 0; i < static_cast<int>(Fi.size()); ++i) {
    for (int it = 0; it <= grid.nt; ++it) {
      double t = grid.t_min + (grid.t_max - grid.t_min) * it / grid.nt;
      double env = lam * (1.0 + std::pow(std::abs(t), spec.W())) * std::exp(spec.beta * t);
      double val = std::abs(Fi[i].eval(t));
      double ratio = val / env;
      detail::bound_tally(rep, ratio, t, 0.0, static_cast<double>(it) / grid.nt);
      if (sink) sink(i, t, val, env);
    }
  }
  detail::bound_finalize(rep);
  return rep;
}

}  // namespace horokit
