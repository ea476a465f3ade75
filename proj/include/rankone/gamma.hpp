#ifndef RANKONE_GAMMA_HPP
#define RANKONE_GAMMA_HPP

#include "rankone/common.hpp"

namespace rankone {

/// Complex Gamma function (Lanczos approximation, reflection for Re z < 1/2).
/// Relative error is below 1e-13 on |z| <= 50 away from the poles.
cplx cgamma(cplx z);

/// 1 / ((x + m) Gamma(x)), written as prod_{l<m}(x+l) / Gamma(x+m+1).
/// Finite for every x where Gamma(x+m+1) is finite, in particular at the
/// points x = -m where the naive product is 0 * inf.
cplx inv_pochhammer_gamma(cplx x, int m);

/// 1 / Gamma(z); zero at the poles of Gamma.
cplx rgamma(cplx z);

}  // namespace rankone

#endif
