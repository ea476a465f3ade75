#include "doctest.h"

#include <random>

#include "rankone/gamma.hpp"

using namespace rankone;

TEST_CASE("cgamma classical values") {
  CHECK(std::abs(cgamma(0.5) - std::sqrt(kPi)) < 1e-13 * std::sqrt(kPi));
  CHECK(std::abs(cgamma(5.0) - 24.0) < 1e-12);
  CHECK(std::abs(cgamma(1.0) - 1.0) < 1e-13);
}

TEST_CASE("cgamma reflection and duplication on random samples") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-20.0, 20.0);
  for (int k = 0; k < 200; ++k) {
    cplx z(uni(rng), uni(rng));
    if (is_gamma_pole(z, 1e-2) || is_gamma_pole(1.0 - z, 1e-2)) continue;
    cplx lhs = cgamma(z) * cgamma(1.0 - z);
    cplx rhs = kPi / std::sin(kPi * z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    if (z.real() > 0.2) {
      // duplication: Gamma(z) Gamma(z+1/2) = 2^{1-2z} sqrt(pi) Gamma(2z)
      cplx l2 = cgamma(z) * cgamma(z + 0.5);
      cplx r2 = std::pow(cplx(2.0), 1.0 - 2.0 * z) * std::sqrt(kPi) * cgamma(2.0 * z);
      CHECK(std::abs(l2 - r2) <= 1e-12 * std::abs(r2));
    }
  }
}

TEST_CASE("cgamma z=1+i against reflection") {
  cplx z(1.0, 1.0);
  cplx lhs = cgamma(z) * cgamma(1.0 - z);
  cplx rhs = kPi / std::sin(kPi * z);
  CHECK(std::abs(lhs - rhs) < 1e-13 * std::abs(rhs));
}

TEST_CASE("inv_pochhammer_gamma is stable at the cancellation points") {
  // 1/((x+m) Gamma(x)) at x = -m has the finite limit (-1)^m m!.
  for (int m = 0; m < 5; ++m) {
    cplx exact = (m % 2 ? -1.0 : 1.0) * cgamma(cplx(m + 1.0));
    cplx v = inv_pochhammer_gamma(cplx(-double(m)), m);
    CHECK(std::abs(v - exact) < 1e-10 * std::abs(exact));
    // and matches the naive product a bit away from the pole
    cplx x(-double(m) + 0.01, 0.02);
    cplx naive = 1.0 / ((x + double(m)) * cgamma(x));
    CHECK(std::abs(inv_pochhammer_gamma(x, m) - naive) < 1e-10 * std::abs(naive));
  }
}
