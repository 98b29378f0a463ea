#pragma once

#include <cmath>
#include <numeric>

#include "horokit/modular.hpp"
#include "horokit/quadrature.hpp"

namespace horokit {

/// Incomplete Eisenstein series built from a smooth bump on [a, b] in
/// (1, infinity):  f(z) = sum over cusp cosets of psi(Im gamma z).  The sum
/// is finite for every z since psi vanishes below a > 1.
struct EisensteinBump {
  double a = 1.2, b = 3.0;
  double amplitude = 1.0;

  EisensteinBump(double a_, double b_, double amplitude_ = 1.0)
      : a(a_), b(b_), amplitude(amplitude_) {
    if (!(a > 1.0)) throw argument_error("EisensteinBump: support must start above 1");
    if (!(b > a)) throw argument_error("EisensteinBump: empty support");
  }

  // peak-normalized C^infinity bump on (a, b)
  double psi(double y) const {
    if (y <= a || y >= b) return 0.0;
    double q = (y - a) * (b - y);
    double w = (b - a) * (b - a) / 4.0;
    return amplitude * std::exp(1.0 - w / q);
  }

  /// Surface mean (3/pi) int psi(y) y^{-2} dy, by unfolding.
  double mean() const {
    auto f = [&](double y) { return psi(y) / (y * y); };
    return 3.0 / M_PI * adaptive_gauss_legendre(f, a, b, 1e-13);
  }
};

/// Exact finite sum over the coset representatives (c, d) coprime, c >= 0.
inline double eval_test_function(const EisensteinBump& spec, CPoint z) {
  double x = z.real(), y = z.imag();
  if (!(y > 0)) throw argument_error("eval_test_function: Im z must be positive");
  double sum = spec.psi(y);  // (c,d) = (0,1)
  double cmax = 1.0 / std::sqrt(spec.a * y);
  for (long long c = 1; c <= static_cast<long long>(cmax); ++c) {
    double w2 = y / spec.a - static_cast<double>(c) * c * y * y;
    if (w2 < 0) break;
    double w = std::sqrt(w2);
    double center = -static_cast<double>(c) * x;
    long long dlo = static_cast<long long>(std::ceil(center - w));
    long long dhi = static_cast<long long>(std::floor(center + w));
    for (long long d = dlo; d <= dhi; ++d) {
      if (std::gcd(c, d < 0 ? -d : d) != 1) continue;
      double cx_d = c * x + static_cast<double>(d);
      double denom = cx_d * cx_d + static_cast<double>(c) * c * y * y;
      sum += spec.psi(y / denom);
    }
  }
  return sum;
}

}  // namespace horokit
