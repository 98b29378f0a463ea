#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "horokit/errors.hpp"
#include "horokit/quadrature.hpp"

namespace horokit {

using CPoint = std::complex<double>;

/// A point of the modular surface: the input, its standard-fundamental-domain
/// representative, the reducing word, and the invariant height
/// sqrt(Im reduced) (the maximum of Im over the orbit is attained there).
struct SurfacePoint {
  CPoint z;
  CPoint reduced;
  std::vector<std::pair<char, long long>> reducing_word;  // ('T', n) and ('S', 1) steps
  std::array<long long, 4> gamma = {1, 0, 0, 1};          // reduced = gamma . z
  double height = 0;
};

inline CPoint mobius(const std::array<long long, 4>& m, CPoint z) {
  return (double(m[0]) * z + double(m[1])) / (double(m[2]) * z + double(m[3]));
}

inline SurfacePoint reduce_point(CPoint z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z.imag() <= 0)
    throw argument_error("reduce_point: need a finite point with Im z > 0");
  SurfacePoint p;
  p.z = z;
  CPoint w = z;
  constexpr double tol = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    double n = std::round(w.real());
    if (n != 0) {
      w -= n;
      long long m = static_cast<long long>(-n);  // T^m moves Re into [-1/2, 1/2]
      p.reducing_word.emplace_back('T', m);
      p.gamma = {p.gamma[0] + m * p.gamma[2], p.gamma[1] + m * p.gamma[3], p.gamma[2], p.gamma[3]};
    }
    if (std::norm(w) < 1.0 - tol) {
      w = -1.0 / w;
      p.reducing_word.emplace_back('S', 1);
      p.gamma = {-p.gamma[2], -p.gamma[3], p.gamma[0], p.gamma[1]};
    } else {
      break;
    }
  }
  p.reduced = w;
  if (std::abs(p.reduced.real()) > 0.5 + tol || std::norm(p.reduced) < 1.0 - tol)
    throw invariant_error("reduction", "representative escaped the fundamental domain");
  if (std::abs(mobius(p.gamma, z) - p.reduced) > 1e-10 * (1.0 + std::abs(p.reduced)))
    throw invariant_error("reduction", "reducing word does not reproduce the representative");
  p.height = std::sqrt(p.reduced.imag());
  return p;
}

inline double invariant_height(CPoint z) { return reduce_point(z).height; }

/// (3/pi) integral of the invariant height over the fundamental domain,
/// computed by 2-D quadrature up to y_cut plus the exact cusp tail
/// (the integrand is y^{1/2} * y^{-2} there).
inline double height_l1_integral(int nx = 64, int ny = 64, double y_cut = 40.0) {
  auto inner = [&](double x) {
    double y0 = std::sqrt(std::max(0.0, 1.0 - x * x));
    y0 = std::max(y0, 1e-9);
    auto f = [&](double y) { return invariant_height({x, y}) / (y * y); };
    return composite_gauss_legendre(f, y0, y_cut, ny);
  };
  double bulk = composite_gauss_legendre(inner, -0.5, 0.5, nx);
  double tail = 2.0 / std::sqrt(y_cut);  // width-1 strip above y_cut
  return 3.0 / M_PI * (bulk + tail);
}

}  // namespace horokit
