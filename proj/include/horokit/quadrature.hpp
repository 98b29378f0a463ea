#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace horokit {

/// 8-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre8 {
  static constexpr std::array<double, 8> nodes = {
      -0.9602898564975362316, -0.7966664774136267395, -0.5255324099163289858,
      -0.1834346424956498049, 0.1834346424956498049,  0.5255324099163289858,
      0.7966664774136267395,  0.9602898564975362316};
  static constexpr std::array<double, 8> weights = {
      0.1012285362903762592, 0.2223810344533744705, 0.3137066458778872873,
      0.3626837833783619830, 0.3626837833783619830, 0.3137066458778872873,
      0.2223810344533744705, 0.1012285362903762592};
};

template <typename F>
double gauss_legendre_panel(F&& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < 8; ++i)
    s += GaussLegendre8::weights[i] * f(mid + half * GaussLegendre8::nodes[i]);
  return s * half;
}

/// Composite 8-point Gauss-Legendre over [a, b] with the given panel count.
template <typename F>
double composite_gauss_legendre(F&& f, double a, double b, int panels) {
  if (panels < 1) panels = 1;
  double s = 0, h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += gauss_legendre_panel(f, a + p * h, a + (p + 1) * h);
  return s;
}

/// Refines the panel count until two successive values agree to rel_tol.
template <typename F>
double adaptive_gauss_legendre(F&& f, double a, double b, double rel_tol = 1e-12,
                               int max_panels = 1 << 16) {
  int panels = 4;
  double prev = composite_gauss_legendre(f, a, b, panels);
  while (panels < max_panels) {
    panels *= 2;
    double cur = composite_gauss_legendre(f, a, b, panels);
    if (std::abs(cur - prev) <= rel_tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace horokit
