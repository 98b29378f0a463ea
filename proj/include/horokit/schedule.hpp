#pragma once

#include <vector>

#include "horokit/kernels.hpp"
#include "horokit/rational.hpp"

namespace horokit {

/// Iteration schedule for the composed kernels: the case split on alpha
/// against eta, the iteration depth k0, and (in the deep case) the inner
/// epsilon and the ladder delta_l = l(alpha/2 - eps_inner).  All entries are
/// exact rationals.
struct BurgerSchedule {
  Rational alpha, eta;
  int case_id = 1;  // 1: alpha >= 2 eta, 2: eta < alpha < 2 eta, 3: alpha <= eta
  int k0 = 1;
  Rational eps_inner;           // case 3 only
  std::vector<Rational> delta;  // delta_0..delta_{k0-1}, case 3 only

  static BurgerSchedule make(const Rational& alpha, const Rational& eta) {
    if (!(alpha > 0) || !(eta > 0))
      throw argument_error("BurgerSchedule: alpha and eta must be positive");
    BurgerSchedule s;
    s.alpha = alpha;
    s.eta = eta;
    if (alpha >= 2 * eta) {
      s.case_id = 1;
      s.k0 = 1;
    } else if (alpha > eta) {
      s.case_id = 2;
      s.k0 = 2;
    } else {
      s.case_id = 3;
      s.k0 = static_cast<int>(rational_floor(2 * eta / alpha));
      s.eps_inner = (alpha * (s.k0 + 1) - 2 * eta) / (4 * (s.k0 - 1));
      for (int l = 0; l < s.k0; ++l)
        s.delta.push_back(Rational(l) * (alpha / 2 - s.eps_inner));
    }
    return s;
  }

  /// The threshold used when expanding a word of the given length
  /// (0 = outermost application).
  Rational beta_for_word_length(int l) const {
    if (l < 0 || l > k0 - 1) throw argument_error("beta_for_word_length: out of range");
    if (l == 0) return eta;
    if (case_id == 2) return eta - alpha / 4;
    return delta[k0 - 1 - l] + alpha / 2;
  }

  /// Exact schedule identities.
  bool verify() const {
    if (case_id == 1) return k0 == 1 && alpha >= 2 * eta;
    if (case_id == 2) return k0 == 2 && alpha > eta && alpha < 2 * eta;
    if (k0 != rational_floor(2 * eta / alpha)) return false;
    if (static_cast<int>(delta.size()) != k0) return false;
    if (!(eps_inner > 0) || eps_inner > alpha / 4) return false;
    if (!(delta[k0 - 1] + alpha > eta)) return false;
    for (int l = 0; l <= k0 - 1; ++l)
      if (!(delta[l] + alpha / 2 < eta)) return false;
    return true;
  }
};

/// Composed kernels of the iterated reconstruction:
///   I(t) = sum_{words w, |w| = k0} int C_w(t,s) I_w(s) ds
///        + sum_{words w, |w| < k0} sum_i D_{w,i}(t) I_w^{(i)}(0).
/// Words list the generator chosen at each expansion level, outermost first.
struct Burger2Kernels {
  BurgerSchedule schedule;
  std::vector<Complex> lambda;
  std::vector<double> weights;
  std::vector<std::vector<int>> c_words;
  std::vector<PiecewiseKernel2> C;
  std::vector<std::vector<int>> d_words;
  std::vector<std::vector<ExpPoly>> D;  // per word: W+1 boundary kernels
};

inline Burger2Kernels burger2_coefficients(const std::vector<Complex>& lambda,
                                           const std::vector<double>& weights,
                                           const BurgerSchedule& schedule,
                                           std::size_t word_cap = 100000) {
  if (!schedule.verify()) throw argument_error("burger2_coefficients: inconsistent schedule");
  if (weights.empty()) throw argument_error("burger2_coefficients: no generator weights");
  const double alpha = to_double(schedule.alpha);
  for (double w : weights)
    if (w < alpha - 1e-12)
      throw argument_error("burger2_coefficients: generator weight below alpha");
  const std::size_t d = weights.size();
  double total = std::pow(static_cast<double>(d), schedule.k0);
  if (total > static_cast<double>(word_cap))
    throw resource_error("burger2_coefficients: multi-index count exceeds the cap");

  Burger2Kernels out;
  out.schedule = schedule;
  out.lambda = lambda;
  out.weights = weights;

  // per-level kernels at the level's threshold
  std::vector<LambdaSpec> specs;
  std::vector<Burger1Kernels> level;
  for (int l = 0; l < schedule.k0; ++l) {
    specs.push_back(order_lambda(lambda, to_double(schedule.beta_for_word_length(l))));
    level.push_back(kernel_F(specs.back()));
  }
  const int W = specs[0].W();

  // depth-first over words; chain = composed C-kernel for the current word
  std::function<void(const std::vector<int>&, const PiecewiseKernel2*)> dfs =
      [&](const std::vector<int>& word, const PiecewiseKernel2* chain) {
        int len = static_cast<int>(word.size());
        // boundary kernels for this word
        std::vector<ExpPoly> Dw(W + 1);
        for (int i = 0; i <= W; ++i) {
          const ExpPoly& fi = level[len].Fi[i];
          Dw[i] = chain ? kernel_apply(*chain, fi) : fi;
        }
        out.d_words.push_back(word);
        out.D.push_back(std::move(Dw));
        for (std::size_t j = 0; j < d; ++j) {
          PiecewiseKernel2 G = level[len].F.scaled(-1.0).exp_shift_s(weights[j]);
          PiecewiseKernel2 next = chain ? kernel_compose(*chain, G) : G;
          std::vector<int> w2 = word;
          w2.push_back(static_cast<int>(j));
          if (len + 1 == schedule.k0) {
            out.c_words.push_back(w2);
            out.C.push_back(std::move(next));
          } else {
            dfs(w2, &next);
          }
        }
      };
  dfs({}, nullptr);
  return out;
}

/// |C_w(t,s)| against (1+|t|^W) e^{eta t + (alpha/5) s}.
inline BoundReport check_C_bound(const Burger2Kernels& ker, std::size_t which,
                                 const GridSpec& grid = {},
                                 const std::function<void(double, double, double, double)>& sink =
                                     nullptr) {
  const auto& K = ker.C.at(which);
  int W = static_cast<int>(ker.lambda.size());
  double eta = to_double(ker.schedule.eta), alpha = to_double(ker.schedule.alpha);
  BoundReport rep;
  for (int it = 0; it <= grid.nt; ++it) {
    double t = grid.t_min + (grid.t_max - grid.t_min) * it / grid.nt;
    for (int is = 0; is <= grid.ns; ++is) {
      double s = grid.s_min + (grid.s_max - grid.s_min) * is / grid.ns;
      double env = (1.0 + std::pow(std::abs(t), W)) * std::exp(eta * t + alpha / 5.0 * s);
      double ratio = std::abs(K.eval(t, s)) / env;
      detail::bound_tally(rep, ratio, t, s,
                          std::min(static_cast<double>(it) / grid.nt,
                                   static_cast<double>(is) / grid.ns));
      if (sink) sink(t, s, std::abs(K.eval(t, s)), env);
    }
  }
  detail::bound_finalize(rep);
  return rep;
}

/// |D_{w,i}(t)| against (1+|lambda|_inf^W)(1+|t|^W) e^{eta t}.
inline BoundReport check_D_bound(const Burger2Kernels& ker, std::size_t which,
                                 const GridSpec& grid = {}) {
  const auto& Dw = ker.D.at(which);
  int W = static_cast<int>(ker.lambda.size());
  double eta = to_double(ker.schedule.eta);
  double lam = 0;
  for (const auto& l : ker.lambda) lam = std::max(lam, std::abs(l));
  double lamW = 1.0 + std::pow(lam, W);
  BoundReport rep;
  for (const auto& Di : Dw)
    for (int it = 0; it <= grid.nt; ++it) {
      double t = grid.t_min + (grid.t_max - grid.t_min) * it / grid.nt;
      double env = lamW * (1.0 + std::pow(std::abs(t), W)) * std::exp(eta * t);
      double ratio = std::abs(Di.eval(t)) / env;
      detail::bound_tally(rep, ratio, t, 0.0, static_cast<double>(it) / grid.nt);
    }
  detail::bound_finalize(rep);
  return rep;
}

}  // namespace horokit
