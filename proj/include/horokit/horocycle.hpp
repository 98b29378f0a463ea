#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "horokit/eisenstein.hpp"
#include "horokit/modular.hpp"

namespace horokit {

/// Smooth bump on (0,1), used as the weight on the horocycle parameter.
inline double chi_bump(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(1.0 - 0.25 / (s * (1.0 - s)));
}

inline double chi_bump_mass() {
  static const double mass = adaptive_gauss_legendre(chi_bump, 0.0, 1.0, 1e-13);
  return mass;
}

/// One horocycle-translate experiment: either the full closed horocycle at
/// height e^t, or a weighted piece through the frame of x0.  The flow
/// convention puts the translate of the base horocycle at s + i e^t.
struct HoroExperiment {
  CPoint x0{0.0, 1.0};
  bool closed = true;
  std::vector<double> t_grid;
  double n_factor = 20.0;       // N(t) = ceil(n_factor * e^{|t|}) quadrature points
  long long max_points = 100000000;

  long long points_at(double t) const {
    return static_cast<long long>(std::ceil(n_factor * std::exp(std::abs(t))));
  }
};

struct HoroResult {
  double t = 0;
  double average = 0;
  double mean_target = 0;
  double error = 0;
  double quad_err = 0;
  long long N = 0;
};

namespace detail {

inline double panel_average(const std::function<double(double)>& f, int panels) {
  return composite_gauss_legendre(f, 0.0, 1.0, panels);
}

}  // namespace detail

/// Quadrature of the translate average per grid point, with a refinement
/// error estimate.  The resolution rule N(t) >= 20 e^{|t|} is enforced.
inline std::vector<HoroResult> horocycle_average(const HoroExperiment& exp,
                                                 const EisensteinBump& f) {
  if (exp.t_grid.empty()) throw argument_error("horocycle_average: empty t grid");
  if (exp.n_factor < 20.0)
    throw invariant_error("resolution", "N(t) below the 20 e^{|t|} resolution rule");
  double mean = f.mean();
  std::vector<HoroResult> out;
  for (double t : exp.t_grid) {
    if (t > 0) throw argument_error("horocycle_average: t must be <= 0");
    HoroResult row;
    row.t = t;
    row.N = exp.points_at(t);
    if (row.N > exp.max_points)
      throw resource_error("horocycle_average: N(t) exceeds the configured cap");
    int panels = static_cast<int>((row.N + 7) / 8);

    std::function<double(double)> integrand;
    if (exp.closed) {
      double y = std::exp(t);
      integrand = [&, y](double s) { return eval_test_function(f, {s, y}); };
      row.mean_target = mean;
    } else {
      double x00 = exp.x0.real(), y0 = exp.x0.imag();
      double y = y0 * std::exp(t);
      integrand = [&, x00, y0, y](double s) {
        return chi_bump(s) * eval_test_function(f, {x00 + y0 * s, y});
      };
      row.mean_target = mean * chi_bump_mass();
    }
    row.average = detail::panel_average(integrand, panels);
    // doubled panel count as the reference: the composite rule converges so
    // fast that the difference is a tight estimate of the coarse-run error
    double fine = detail::panel_average(integrand, 2 * panels);
    row.quad_err = std::abs(row.average - fine);
    row.error = std::abs(row.average - row.mean_target);
    out.push_back(row);
  }
  return out;
}

struct HeightRow {
  double t = 0;
  double value = 0;   // int_0^1 height(x0 u(s) g_t) ds
  double ratio = 0;   // value / height(x0)^2
  double quad_err = 0;
  long long N = 0;
};

inline std::vector<HeightRow> height_average(CPoint x0, const std::vector<double>& t_grid,
                                             double n_factor = 20.0) {
  if (t_grid.empty()) throw argument_error("height_average: empty t grid");
  double h0 = invariant_height(x0);
  std::vector<HeightRow> out;
  for (double t : t_grid) {
    if (t > 0) throw argument_error("height_average: t must be <= 0");
    HeightRow row;
    row.t = t;
    row.N = static_cast<long long>(std::ceil(n_factor * std::exp(std::abs(t))));
    int panels = static_cast<int>((row.N + 7) / 8);
    double x00 = x0.real(), y0 = x0.imag();
    double y = y0 * std::exp(t);
    auto integrand = [&](double s) { return invariant_height({x00 + y0 * s, y}); };
    row.value = detail::panel_average(integrand, panels);
    double fine = detail::panel_average(integrand, 2 * panels);
    row.quad_err = std::abs(row.value - fine);
    row.ratio = row.value / (h0 * h0);
    out.push_back(row);
  }
  return out;
}

struct FitResult {
  double slope_q0 = 0, intercept_q0 = 0, resid_q0 = 0;
  double slope_q1 = 0, qcoef_q1 = 0, intercept_q1 = 0, resid_q1 = 0;
  int used = 0;
  bool rejected = false;
};

/// Least squares of log(error) against t (and optionally log(1+|t|)).
/// Samples at the quadrature noise floor (error <= 10 * quad_err) are
/// dropped; fewer than 5 surviving samples rejects the fit.
inline FitResult fit_decay(const std::vector<std::pair<double, double>>& samples,
                           const std::vector<double>& quad_errs = {}) {
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double err = samples[i].second;
    if (err <= 0) continue;
    if (!quad_errs.empty() && err <= 10.0 * quad_errs[i]) continue;
    ts.push_back(samples[i].first);
    ys.push_back(std::log(err));
  }
  FitResult fit;
  fit.used = static_cast<int>(ts.size());
  if (fit.used < 5) {
    fit.rejected = true;
    return fit;
  }

  auto solve = [&](bool with_q) {
    int p = with_q ? 3 : 2;
    std::vector<std::vector<double>> ata(p, std::vector<double>(p, 0.0));
    std::vector<double> atb(p, 0.0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::vector<double> row{1.0, ts[i]};
      if (with_q) row.push_back(std::log1p(std::abs(ts[i])));
      for (int r = 0; r < p; ++r) {
        atb[r] += row[r] * ys[i];
        for (int c = 0; c < p; ++c) ata[r][c] += row[r] * row[c];
      }
    }
    // small dense solve
    for (int col = 0; col < p; ++col) {
      int piv = col;
      for (int r = col; r < p; ++r)
        if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
      std::swap(ata[piv], ata[col]);
      std::swap(atb[piv], atb[col]);
      for (int r = 0; r < p; ++r) {
        if (r == col) continue;
        double fct = ata[r][col] / ata[col][col];
        for (int c = col; c < p; ++c) ata[r][c] -= fct * ata[col][c];
        atb[r] -= fct * atb[col];
      }
    }
    std::vector<double> x(p);
    for (int r = 0; r < p; ++r) x[r] = atb[r] / ata[r][r];
    double rss = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double pred = x[0] + x[1] * ts[i] + (with_q ? x[2] * std::log1p(std::abs(ts[i])) : 0.0);
      rss += (ys[i] - pred) * (ys[i] - pred);
    }
    x.push_back(std::sqrt(rss / ts.size()));
    return x;
  };

  auto q0 = solve(false);
  fit.intercept_q0 = q0[0];
  fit.slope_q0 = q0[1];
  fit.resid_q0 = q0[2];
  auto q1 = solve(true);
  fit.intercept_q1 = q1[0];
  fit.slope_q1 = q1[1];
  fit.qcoef_q1 = q1[2];
  fit.resid_q1 = q1[3];
  return fit;
}

}  // namespace horokit
