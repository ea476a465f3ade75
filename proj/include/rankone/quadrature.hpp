#ifndef RANKONE_QUADRATURE_HPP
#define RANKONE_QUADRATURE_HPP

#include "rankone/common.hpp"

// Quadrature machinery for the singular integrals of this library. All rules
// are linear: a node list plus complex weights, so operator kernels can be
// pre-tabulated and contracted over parameter sweeps.
//
// The basic building block is the finite-part power panel: on [0, eps] the
// smooth factor is interpolated at Chebyshev-type nodes and integrated
// against t^s exactly via the moments eps^{s+k+1}/(s+k+1). For Re s <= -1
// this *is* the meromorphic continuation of the integral (the moments are
// the continued values), so the same rule evaluates regularized kernels.
// Poles of the continuation at s+k+1 = 0 are either cancelled by a Gamma
// prefactor (supplied through a stabilized inverse-denominator callback) or
// belong to moments whose coefficient vanishes by parity, which the rule
// drops once the denominator falls below a cutoff.

namespace rankone {

struct Rule1D {
  std::vector<double> x;
  std::vector<cplx> w;
  bool dropped_moment = false;
};

struct SphereRule {
  std::vector<VectorXd> nodes;  // points of S^{m-1} in R^m
  std::vector<double> w;
};

struct EquatorRule {
  std::vector<VectorXd> nodes;
  std::vector<cplx> w;
  bool dropped_moment = false;
};

/// Gauss-Legendre nodes/weights on [-1, 1] (Golub-Welsch, cached).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Gauss-Legendre rule mapped to [a, b].
Rule1D gl_panel(double a, double b, int n);

/// inv-denominator callback: m -> (prefactor) / D_m where D_m = s + k_m + 1
/// and k_m is the m-th fitted power. plain_invD drops |D| < cut to zero.
std::function<cplx(int)> plain_invD(cplx s, int parity, double cut = 1e-7);

/// Stabilized callback for a Gamma-linked direction: returns
/// 1 / (D_m Gamma(x)) with D_m = 2 (x + m), finite at x = -m.
std::function<cplx(int)> gamma_invD(cplx x);

/// Finite-part panel on [0, eps] for ∫ t^s g(t) dt.
///   parity  0/1: g is fitted as t^parity * (even series); -1: full series.
///   ncoef   number of fitted coefficients.
///   invD    inverse-denominator callback (includes any prefactor).
///   corr    optional extra smooth factor folded into the weights.
Rule1D power_head(cplx s, int parity, double eps, int ncoef,
                  const std::function<cplx(int)>& invD,
                  const std::function<double(double)>& corr = nullptr);

struct RadialOpts {
  double eps = 0.5;
  double R = 8.0;
  int ngl = 16;
  int ncoef = 12;
  double scale = 1.0;  // multiplies ngl/ncoef for convergence studies
};

/// Composite rule for ∫_0^∞ r^{s0} g(r) dr where g is smooth on [0, ∞) with
/// parity `parity` at 0 and g(r) = r^{-decay} h(1/r) with h smooth at 0
/// (tail parity `tail_parity`). `prefactor` multiplies the whole rule; when
/// `head_invD` is set it replaces prefactor/D on the head moments (use
/// gamma_invD when a Gamma factor of the operator cancels the head poles).
Rule1D radial_scheme(cplx s0, int parity, cplx decay, int tail_parity,
                     const RadialOpts& opts, cplx prefactor,
                     const std::function<cplx(int)>& head_invD = nullptr,
                     const std::function<cplx(int)>& tail_invD = nullptr);

/// Plain positive product rule on the unit sphere S^{m-1}, m >= 1.
/// `res` scales the per-axis sizes.
SphereRule sphere_rule(int m, double res = 1.0);

struct EquatorOpts {
  double theta0 = 0.6;
  int ngl = 12;
  int ncoef = 10;
  int nazim = 20;
  double scale = 1.0;
};

/// Rule on S^{m-1} (m = 2 or 3) for the weight |w_m|^beta sgn(w_m)^eps,
/// singular on the equator w_m = 0. The sgn factor and the antipodal
/// symmetrization are folded into the weights; `invD` as in power_head.
/// With enforce_parity the smooth factor is assumed to have the parity of
/// the sgn power across the equator (true for the closed-form kernels);
/// without it each side is fitted independently in the full basis.
EquatorRule equator_rule(int m, cplx beta, int eps_sign, const EquatorOpts& opts,
                         cplx prefactor, const std::function<cplx(int)>& invD = nullptr,
                         bool enforce_parity = true);

/// Residue of f at `center` by a trapezoid contour of radius r with n nodes:
/// (1/n) sum f(z_k) (z_k - center).
cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double r, int n = 64);

}  // namespace rankone

#endif
