#pragma once

#include <cmath>
#include <vector>

#include "horokit/errors.hpp"

namespace horokit {

/// Count of integer unipotent upper-triangular matrices whose coordinates
/// lie in the unit box scaled by e^{lambda_j(H)} per positive root.  Both
/// coordinate systems are reported: matrix entries, and canonical (exp)
/// coordinates where the top corner reads n13 - n12 n23 / 2.
struct CountResult {
  long long count_entry = 0;
  long long count_exp = 0;
  double e2rho = 0;  // e^{2 rho(H)}, the box-volume scaling
  double ratio_entry = 0;
  double ratio_exp = 0;
};

inline CountResult unipotent_lattice_count(int n, const std::vector<double>& H_diag,
                                           double volume_cap = 1e9) {
  if (n != 2 && n != 3) throw argument_error("unipotent_lattice_count: n must be 2 or 3");
  if (static_cast<int>(H_diag.size()) != n)
    throw argument_error("unipotent_lattice_count: diagonal has wrong length");
  for (int i = 0; i + 1 < n; ++i)
    if (H_diag[i] < H_diag[i + 1])
      throw argument_error("unipotent_lattice_count: H must lie in the closed chamber");

  CountResult out;
  if (n == 2) {
    double B = std::exp(H_diag[0] - H_diag[1]);
    out.e2rho = B;  // 2 rho(H) = alpha(H)
    if (out.e2rho > volume_cap)
      throw resource_error("unipotent_lattice_count: scaled box volume over the cap");
    long long side = 2 * static_cast<long long>(std::floor(B)) + 1;
    out.count_entry = out.count_exp = side;
  } else {
    double B12 = std::exp(H_diag[0] - H_diag[1]);
    double B23 = std::exp(H_diag[1] - H_diag[2]);
    double B13 = std::exp(H_diag[0] - H_diag[2]);
    out.e2rho = std::exp(2.0 * (H_diag[0] - H_diag[2]));
    if (out.e2rho > volume_cap)
      throw resource_error("unipotent_lattice_count: scaled box volume over the cap");
    long long f12 = static_cast<long long>(std::floor(B12));
    long long f23 = static_cast<long long>(std::floor(B23));
    long long f13 = static_cast<long long>(std::floor(B13));
    out.count_entry = (2 * f12 + 1) * (2 * f23 + 1) * (2 * f13 + 1);
    for (long long a = -f12; a <= f12; ++a)
      for (long long b = -f23; b <= f23; ++b) {
        double c = 0.5 * static_cast<double>(a) * static_cast<double>(b);
        long long hi = static_cast<long long>(std::floor(c + B13));
        long long lo = static_cast<long long>(std::ceil(c - B13));
        if (hi >= lo) out.count_exp += hi - lo + 1;
      }
  }
  out.ratio_entry = static_cast<double>(out.count_entry) / out.e2rho;
  out.ratio_exp = static_cast<double>(out.count_exp) / out.e2rho;
  return out;
}

}  // namespace horokit
