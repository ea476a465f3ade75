#include "rankone/gamma.hpp"

#include <cmath>

namespace rankone {

// Lanczos coefficients, g = 7, n = 9.
static const double lanczos_p[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx cgamma(cplx z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return kPi / (std::sin(kPi * z) * cgamma(1.0 - z));
  }
  z -= 1.0;
  cplx x = lanczos_p[0];
  for (int i = 1; i < 9; ++i) x += lanczos_p[i] / (z + cplx(i, 0));
  cplx t = z + 7.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx rgamma(cplx z) {
  if (is_gamma_pole(z)) return 0.0;
  return 1.0 / cgamma(z);
}

cplx inv_pochhammer_gamma(cplx x, int m) {
  cplx num = 1.0;
  for (int l = 0; l < m; ++l) num *= (x + cplx(l, 0));
  return num * rgamma(x + cplx(m + 1, 0));
}

}  // namespace rankone
