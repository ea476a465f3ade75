#ifndef RANKONE_PARAMS_HPP
#define RANKONE_PARAMS_HPP

#include "rankone/common.hpp"

namespace rankone {

/// Joint parameter point of a restriction problem: source bundle (n, p),
/// target bundle q, spectral parameters lambda (source) and nu (target),
/// kernel sign alpha and representation sign.
struct ParamPoint {
  int n = 2;
  int p = 0;
  int q = 0;
  cplx lambda{0.0, 0.0};
  cplx nu{0.0, 0.0};
  int alpha = 1;     // kernel sign (+1 / -1)
  int rep_sign = 1;  // sign of the source representation

  double rho() const { return 0.5 * n; }
  double rho_prime() const { return 0.5 * (n - 1); }
};

}  // namespace rankone

#endif
