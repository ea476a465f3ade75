#include "rankone/scalars.hpp"

#include <cmath>

#include "rankone/quadrature.hpp"
#include "rankone/wedge.hpp"

namespace rankone {

SpectralConstants c_hc(int n, int p, cplx nu) {
  int pm = std::min(p, n - p);
  double rp = 0.5 * (n - 1);
  cplx front = std::pow(2.0, -n + 2) * cgamma(0.5 * n);
  cplx core;
  bool pole = false;
  if (2 * pm == n - 1) {
    // (nu + rho' - p) Gamma(nu) with p = rho': nu Gamma(nu) = Gamma(nu+1).
    core = cgamma(nu + 1.0);
    pole = is_gamma_pole(nu + 1.0);
  } else {
    core = (nu + rp - static_cast<double>(pm)) * (is_gamma_pole(nu) ? 0.0 : cgamma(nu));
    pole = is_gamma_pole(nu);
  }
  return {front * core * rgamma(nu + rp + 1.0), pole};
}

double plancherel_density(int n, int p, cplx nu) {
  if (std::abs(nu.real()) > 1e-9)
    throw std::domain_error("plancherel_density: nu must be on the unitary axis");
  int pm = std::min(p, n - p);
  double factor = static_cast<double>(binom(n - 1, pm));
  if (2 * pm == n) factor *= 0.5;
  SpectralConstants cp = c_hc(n, p, nu), cm = c_hc(n, p, -nu);
  if (cp.pole || cm.pole) return 0.0;  // 1/|c|^2 vanishes at the Gamma poles
  double denom = (cp.value * cm.value).real();
  return factor / denom;
}

double discrete_constant(int n) {
  if (n % 2 != 0) throw std::domain_error("discrete_constant: n must be even");
  double v = std::pow(2.0, -n);
  for (int i = 1; i <= n; ++i) v *= i;           // n!
  for (int i = 1; i <= n / 2; ++i) v /= i;       // / (n/2)!
  for (int s = 1; s <= n / 2 - 1; ++s)
    for (int i = 1; i <= 2 * s; ++i) v *= i;     // prod (2s)!
  return v;
}

SpectralConstants t_prime(int n, int p, int q, cplx nu) {
  double rp = 0.5 * (n - 1);
  cplx base = std::pow(kPi, rp) * rgamma(nu + rp + 1.0);
  if (q == p - 1) {
    bool special = (2 * p == n + 1);
    return {-base * (special ? cplx(1.0) : nu - rp + static_cast<double>(p) - 1.0), false};
  }
  if (q == p) {
    bool special = (2 * p == n - 1);
    return {base * (special ? cplx(1.0) : nu + rp - static_cast<double>(p)), false};
  }
  throw std::domain_error("t_prime: q must be p-1 or p");
}

SpectralConstants t_factor(int n, int p, int q, cplx lambda) {
  double rho = 0.5 * n;
  bool special = (2 * p == n);
  cplx base = std::pow(kPi, rho) * rgamma(-lambda + rho + 1.0);
  if (q == p - 1)
    return {base * (special ? cplx(1.0) : lambda + rho - static_cast<double>(p)), false};
  if (q == p)
    return {-base * (special ? cplx(1.0) : lambda - rho + static_cast<double>(p)), false};
  throw std::domain_error("t_factor: q must be p-1 or p");
}

namespace {

// Case selector of c_C: 0 = plain, 1 = 1/(nu+rho'-p), 2 = 1/(nu-rho'+p-1).
int c_C_case(int n, int p, int q, bool lambda_minus_nu_is_half) {
  if (p == 0) return 1;
  if (p == n) return 2;
  if (lambda_minus_nu_is_half) return q == p ? 1 : 2;
  return 0;
}

SpectralConstants c_C_eval(int n, int p, int which, cplx nu) {
  double rp = 0.5 * (n - 1);
  cplx g = cgamma(nu + rp + 1.0);
  bool pole = is_gamma_pole(nu + rp + 1.0);
  if (which == 1) {
    cplx d = nu + rp - static_cast<double>(p);
    return {g / d, pole || std::abs(d) < 1e-12};
  }
  if (which == 2) {
    cplx d = nu - rp + static_cast<double>(p) - 1.0;
    return {g / d, pole || std::abs(d) < 1e-12};
  }
  return {g, pole};
}

}  // namespace

SpectralConstants c_C_factor(int n, int p, int q, cplx nu, cplx lambda) {
  bool half = std::abs(lambda - nu + 0.5) < 1e-9;
  return c_C_eval(n, p, c_C_case(n, p, q, half), nu);
}

SpectralConstants c_plancherel(int n, int p, cplx lambda, cplx nu, int alpha) {
  double rho = 0.5 * n, rp = 0.5 * (n - 1);
  double shift = alpha > 0 ? 0.0 : 0.5;
  SpectralConstants cp = c_hc(n, p, nu), cm = c_hc(n, p, -nu);
  cplx denom = rgamma((-lambda + rho - nu - rp) / 2.0 + shift) *
               rgamma((-lambda + rho + nu - rp) / 2.0 + shift) *
               rgamma((lambda + rho - nu - rp) / 2.0 + shift) *
               rgamma((lambda + rho + nu - rp) / 2.0 + shift);
  return {cp.value * cm.value * denom, cp.pole || cm.pole};
}

SpectralConstants c_d(int n, cplx lambda) {
  double rho = 0.5 * n;
  cplx v = discrete_constant(n) * cgamma(rho) * cgamma((-lambda + 1.0) / 2.0) *
           cgamma((-lambda + 2.0) / 2.0) * cgamma((lambda + 1.0) / 2.0) *
           cgamma((lambda + 2.0) / 2.0) / (2.0 * std::pow(kPi, 0.5 * (n - 1)));
  bool pole = is_gamma_pole((-lambda + 1.0) / 2.0) || is_gamma_pole((-lambda + 2.0) / 2.0) ||
              is_gamma_pole((lambda + 1.0) / 2.0) || is_gamma_pole((lambda + 2.0) / 2.0);
  return {v, pole};
}

SpectralConstants c_res(int n, int p, int q, int k, cplx lambda, int alpha,
                        const ResidueOpts& opts) {
  cplx mu0 = lambda + 1.0 - 0.5 * alpha + 2.0 * k;
  // The c_C case is fixed by the family at the residue point, then continued
  // meromorphically in mu along the contour.
  bool half = std::abs(lambda - mu0 + 0.5) < 1e-9;
  int which = c_C_case(n, p, q, half);
  auto f = [&](cplx mu) -> cplx {
    cplx cpl = c_plancherel(n, p, lambda, mu, alpha).value;
    cplx tp = t_prime(n, p, q, mu).value;
    cplx cc = c_C_eval(n, p, which, mu).value;
    return 1.0 / (cpl * tp * cc * cc);
  };
  // Orientation fixed so that the p = 0 closed forms and the positivity of
  // the residue constants come out right (the contour winds clockwise).
  // Neighboring poles of the scalar chain can sit close to mu0 (they collide
  // at the endpoints of the holomorphy ranges), so the value is taken from
  // the two smallest admissible radii; their disagreement flags a pole.
  double r = opts.r;
  while (r / 2 >= opts.r_min) r /= 2;
  cplx v1 = -kPi * contour_residue(f, mu0, r, opts.nodes);
  cplx v2 = -kPi * contour_residue(f, mu0, 2 * r, opts.nodes);
  double scale = std::max({std::abs(v1), std::abs(v2), 1e-300});
  if (std::abs(v1 - v2) <= 1e-7 * scale) return {v1, false};
  return {v1, true};
}

cplx c_res_closed_p0(int n, int k, cplx lambda, int alpha) {
  double rho = 0.5 * n;
  cplx front = std::pow(2.0, 2 * n - 3) /
               (std::pow(kPi, 0.5 * (n - 3)) * std::pow(cgamma(0.5 * n), 2) *
                cgamma(k + 1.0));
  if (alpha > 0)
    return front * (-lambda - 0.5 - 2.0 * k) * cgamma(-lambda + rho - 1.0 - 2.0 * k) *
           cgamma(-lambda - static_cast<double>(k)) * cgamma(k + 0.5) /
           cgamma(-lambda - static_cast<double>(k) + 0.5);
  return front * (-lambda - 1.5 - 2.0 * k) * cgamma(-lambda + rho - 2.0 - 2.0 * k) *
         cgamma(-lambda - static_cast<double>(k)) * cgamma(k + 1.5) /
         cgamma(-lambda - static_cast<double>(k) - 0.5);
}

namespace {

bool nonneg_int(cplx x, int& out, double tol = 1e-9) {
  if (std::abs(x.imag()) > tol) return false;
  double r = std::round(x.real());
  if (std::abs(x.real() - r) > tol || r < -tol) return false;
  out = static_cast<int>(r);
  return true;
}

bool in_L(int alpha, double rho, double rp, cplx lambda, cplx nu, bool remove_i0) {
  int j = 0, i = 0;
  if (!nonneg_int(-(lambda + rho), j)) return false;
  if (!nonneg_int(-(nu + rp), i)) return false;
  if (j > i) return false;
  if (remove_i0 && i == 0) return false;
  int par = alpha > 0 ? 0 : 1;
  return (i + par - j) % 2 == 0;
}

bool near_pt(cplx lambda, cplx nu, double a, double b, double tol = 1e-9) {
  return std::abs(lambda - a) < tol && std::abs(nu - b) < tol;
}

}  // namespace

bool zero_set_member(int n, int p, int q, cplx lambda, cplx nu, int alpha) {
  double rho = 0.5 * n, rp = 0.5 * (n - 1);
  if ((p == 0 && q == 0) || (p == n && q == n - 1))
    return in_L(alpha, rho, rp, lambda, nu, false);
  if (p >= 1 && p < n) {
    if (alpha < 0 && (q == p - 1 || q == p)) return in_L(-1, rho, rp, lambda, nu, true);
    if (alpha > 0 && q == p)
      return in_L(1, rho, rp, lambda, nu, true) || near_pt(lambda, nu, p - rho, q - rp);
    if (alpha > 0 && q == p - 1)
      return in_L(1, rho, rp, lambda, nu, true) || near_pt(lambda, nu, rho - p, rp - q);
  }
  return false;
}

RepPredicates rep_predicates(int n, int p, cplx lambda) {
  RepPredicates out;
  double rho = 0.5 * n;
  if (std::abs(lambda.imag()) > 1e-9) return out;
  double x = lambda.real();
  double edge = std::abs(rho - p);
  int j = 0;
  bool neg_series = nonneg_int(cplx(-x - rho - 1.0, 0.0), j);
  int j2 = 0;
  bool pos_series = nonneg_int(cplx(x - rho - 1.0, 0.0), j2);
  out.reducible = neg_series || pos_series || std::abs(std::abs(x) - edge) < 1e-9;
  out.complementary = (2 * p != n) && std::abs(x) < edge - 1e-9;
  if (p == 0 || p == n) {
    if (std::abs(std::abs(x) - rho) < 1e-9) {
      out.quotient_kind = QuotientKind::one_dimensional;
      return out;
    }
    int jj = 0;
    if (nonneg_int(cplx(std::abs(x) - rho, 0.0), jj) && jj >= 1) {
      out.quotient_kind = QuotientKind::quotient_I;
      out.j = jj;
      return out;
    }
  } else if (std::abs(std::abs(x) - edge) < 1e-9) {
    out.quotient_kind = QuotientKind::cohomological;
  }
  return out;
}

}  // namespace rankone
