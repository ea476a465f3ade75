#ifndef RANKONE_SCALARS_HPP
#define RANKONE_SCALARS_HPP

#include "rankone/gamma.hpp"
#include "rankone/params.hpp"

// Scalar spectral functions: the Harish-Chandra c-function and Plancherel
// densities of the bundles over the hyperbolic space of O(1,n), the
// normalization scalars of the intertwining functional equations, the
// composed Plancherel weights c(p,lambda,nu)^±, residue constants, discrete
// constants, zero-set membership, and representation-theoretic predicates.

namespace rankone {

/// Uniform return shape for meromorphic scalars.
struct SpectralConstants {
  cplx value{0.0, 0.0};
  bool pole = false;
};

/// Harish-Chandra c-function of the Lambda^p bundle on O(1,n)/O(n), with p
/// reduced to min(p, n-p):
///   c(p,nu) = 2^{-n+2} Gamma(n/2) (nu + rho' - p) Gamma(nu) / Gamma(nu+rho'+1).
SpectralConstants c_hc(int n, int p, cplx nu);

/// Plancherel density of d mu_{sigma_p} per d nu on the unitary axis:
/// binom(n-1, p) / (c(p,nu) c(p,-nu)), halved for p = n/2.
double plancherel_density(int n, int p, cplx nu);

/// c_{n/2} = 2^{-n} n!/(n/2)! prod_{s=1}^{n/2-1} (2s)!; n must be even.
double discrete_constant(int n);

/// t'(p,q,nu): scalar of T'_{q,nu} o A~_{(p,lambda),(q,nu)} = t' A~_{(q,-nu)}.
SpectralConstants t_prime(int n, int p, int q, cplx nu);

/// t(p,q,lambda): scalar of A~_{(p,-lambda),(q,nu)} o T_{p,lambda} = t A~.
SpectralConstants t_factor(int n, int p, int q, cplx lambda);

/// c_C(p,q,nu): normalization turning A~ into the non-vanishing C-family.
/// lambda is threaded explicitly for the case selection lambda - nu = -1/2.
SpectralConstants c_C_factor(int n, int p, int q, cplx nu, cplx lambda);

/// c(p,lambda,nu)^±: the Plancherel weight denominator; alpha = ±1.
SpectralConstants c_plancherel(int n, int p, cplx lambda, cplx nu, int alpha);

/// c(lambda)_d: coefficient of the two discrete terms at p = n/2 (n even).
SpectralConstants c_d(int n, cplx lambda);

struct ResidueOpts {
  double r = 0.1;
  double r_min = 1e-3;
  int nodes = 64;
};

/// c(p,lambda,q,k)_Res^±: pi * Res_{mu = lambda + 1 -(±1/2) + 2k} of
/// 1/(c(p,lambda,mu)^± t'(p,q,mu) c_C(p,q,mu)^2), computed by contour
/// integration with shrink-and-retry validation across two radii.
SpectralConstants c_res(int n, int p, int q, int k, cplx lambda, int alpha,
                        const ResidueOpts& opts = {});

/// Closed forms for p = 0 (used as cross-checks of the contour values).
cplx c_res_closed_p0(int n, int k, cplx lambda, int alpha);

/// Exact membership in the zero set L(p,q)^± of the normalized family.
bool zero_set_member(int n, int p, int q, cplx lambda, cplx nu, int alpha);

enum class QuotientKind { none, cohomological, quotient_I, one_dimensional };

struct RepPredicates {
  bool reducible = false;
  bool complementary = false;
  QuotientKind quotient_kind = QuotientKind::none;
  int j = 0;  // index of the quotient_I family
};

/// Reducibility / complementary-series / unitarizable-quotient predicates of
/// pi_{p,lambda}^± for O(1,n+1).
RepPredicates rep_predicates(int n, int p, cplx lambda);

}  // namespace rankone

#endif
