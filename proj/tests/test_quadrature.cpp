#include "doctest.h"

#include "rankone/gamma.hpp"
#include "rankone/quadrature.hpp"

using namespace rankone;

namespace {
cplx apply(const Rule1D& r, const std::function<cplx(double)>& g) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * g(r.x[i]);
  return acc;
}
}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double s0 = 0, s2 = 0;
  for (int i = 0; i < 8; ++i) {
    s0 += w[i];
    s2 += w[i] * x[i] * x[i];
  }
  CHECK(std::abs(s0 - 2.0) < 1e-14);
  CHECK(std::abs(s2 - 2.0 / 3.0) < 1e-14);
}

TEST_CASE("power_head reproduces Beta-type integrals") {
  // ∫_0^1 t^s (1-t^2)^2 dt = 1/(s+1) - 2/(s+3) + 1/(s+5), continued in s.
  for (cplx s : {cplx(0.3, 0.0), cplx(-0.5, 0.4), cplx(-1.7, 0.0), cplx(-2.5, 1.0)}) {
    auto rule = power_head(s, 0, 1.0, 8, plain_invD(s, 0));
    cplx got = apply(rule, [](double t) { return cplx((1 - t * t) * (1 - t * t)); });
    cplx want = 1.0 / (s + 1.0) - 2.0 / (s + 3.0) + 1.0 / (s + 5.0);
    CHECK(std::abs(got - want) < 1e-12 * std::abs(want));
  }
}

TEST_CASE("radial_scheme evaluates a closed-form power integral") {
  // g(r) = (1+r^2)^{-a}: ∫_0^∞ r^{s} (1+r^2)^{-a} dr = B((s+1)/2, a-(s+1)/2)/2.
  cplx a(2.4, 0.0);
  RadialOpts opts;
  for (cplx s : {cplx(0.5, 0.0), cplx(-0.5, 0.7), cplx(-1.5, 0.2)}) {
    auto rule = radial_scheme(s, 0, 2.0 * a, 0, opts, 1.0);
    cplx got = apply(rule, [&](double r) { return std::pow(cplx(1 + r * r), -a); });
    cplx want =
        0.5 * cgamma((s + 1.0) / 2.0) * cgamma(a - (s + 1.0) / 2.0) / cgamma(a);
    CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
  }
}

TEST_CASE("radial_scheme with gamma-linked head is finite at head poles") {
  // (1/Gamma(x)) ∫_0^∞ r^{2x-1} e^{-r^2} dr = Gamma(x)/2 / Gamma(x), finite
  // also at x -> 0 where the plain moment diverges: value 1/2 in the limit.
  cplx x(0.0, 0.0);
  RadialOpts opts;
  auto rule = radial_scheme(2.0 * x - 1.0, 0, cplx(60.0, 0.0), 0, opts, 0.0,
                            gamma_invD(x));
  // decay parameter is irrelevant here: the Gaussian is below 1e-28 at R=8.
  cplx got = apply(rule, [](double r) { return cplx(std::exp(-r * r)); });
  CHECK(std::abs(got - 0.5) < 1e-9);

  // generic x matches (1/Gamma(x)) * Gamma(x)/2 = 1/2 as well
  cplx x2(0.35, -0.2);
  auto rule2 = radial_scheme(2.0 * x2 - 1.0, 0, cplx(60.0, 0.0), 0, opts, rgamma(x2),
                             gamma_invD(x2));
  cplx got2 = apply(rule2, [](double r) { return cplx(std::exp(-r * r)); });
  cplx want2 = 0.5 * cgamma(x2) * rgamma(x2);
  CHECK(std::abs(got2 - want2) < 1e-9);
}

TEST_CASE("sphere_rule mass") {
  CHECK(std::abs(sphere_rule(1).w[0] + sphere_rule(1).w[1] - 2.0) < 1e-15);
  double m2 = 0;
  for (double w : sphere_rule(2).w) m2 += w;
  CHECK(std::abs(m2 - 2 * kPi) < 1e-12);
  double m3 = 0;
  for (double w : sphere_rule(3).w) m3 += w;
  CHECK(std::abs(m3 - 4 * kPi) < 1e-10);
  double m4 = 0;
  for (double w : sphere_rule(4).w) m4 += w;
  CHECK(std::abs(m4 - 2 * kPi * kPi) < 1e-8);
}

TEST_CASE("equator_rule reproduces sphere moments of |w_m|^beta") {
  // ∫_{S^{m-1}} |w_m|^beta dw = 2 pi^{(m-1)/2} Gamma((beta+1)/2) / Gamma((beta+m)/2)
  for (int m : {2, 3}) {
    for (cplx beta : {cplx(0.7, 0.0), cplx(-0.4, 0.3), cplx(-1.5, 0.0)}) {
      EquatorOpts opts;
      auto rule = equator_rule(m, beta, 0, opts, 1.0);
      cplx got = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) got += rule.w[i];
      cplx want = 2.0 * std::pow(kPi, (m - 1) / 2.0) * cgamma((beta + 1.0) / 2.0) /
                  cgamma((beta + double(m)) / 2.0);
      CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
    }
  }
  // odd weight integrates w_m against sgn: ∫ |w_m|^beta sgn(w_m) * w_m
  cplx beta(-0.3, 0.1);
  EquatorOpts opts;
  auto rule = equator_rule(2, beta, 1, opts, 1.0);
  cplx got = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    got += rule.w[i] * rule.nodes[i](1);
  cplx want = 2.0 * std::sqrt(kPi) * cgamma((beta + 2.0) / 2.0) / cgamma((beta + 3.0) / 2.0);
  CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
}

TEST_CASE("finite part of the pure sphere moment vanishes at beta = -2") {
  // FP ∫_{S^1} |w_2|^{-2} dw = 2 sqrt(pi) Gamma(-1/2)/Gamma(0) = 0.
  EquatorOpts opts;
  auto rule = equator_rule(2, cplx(-2.0, 0.0), 0, opts, 1.0);
  cplx got = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) got += rule.w[i];
  CHECK(std::abs(got) < 1e-9);
}

TEST_CASE("contour_residue of a simple pole") {
  auto f = [](cplx z) { return cgamma(z) * 3.0; };
  // Res_{z=0} Gamma = 1
  cplx r = contour_residue(f, 0.0, 0.1);
  CHECK(std::abs(r - 3.0) < 1e-12);
}
