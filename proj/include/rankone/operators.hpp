#ifndef RANKONE_OPERATORS_HPP
#define RANKONE_OPERATORS_HPP

#include "rankone/scalars.hpp"
#include "rankone/sections.hpp"

// Integral operators: the Knapp-Stein intertwiners on both groups, the
// symmetry breaking families A / A~ / A~~ / C between O(1,n+1) and O(1,n),
// the open-orbit restriction Phi with its even/odd split, the bundle Fourier
// transform on the hyperbolic quotient, spherical functions, and the signed
// quotient pairings. All operators act on SectionFun evaluators and return
// lazy evaluators; every integral is a fixed node/weight rule built once per
// operator instance, so the kernels continue meromorphically in the
// parameters via the finite-part panels.

namespace rankone {

struct OperatorOpts {
  double scale = 1.0;  // scales quadrature sizes of every sub-rule
};

// --- Knapp-Stein -------------------------------------------------------------

/// T_{p,lambda} f with kernel |X|^{2(lambda-rho)} sigma_p(psi(X)) / Gamma(lambda)
/// (Gamma(lambda+1) for p = m/2); the output carries parameter -lambda.
SectionFun knapp_stein(const SectionFun& sec, const OperatorOpts& opts = {});

/// Signed invariant pairing <f, T_{p,lambda} g>_{L2(K)}: + for p < m/2,
/// - for p > m/2; at p = m/2 only lambda = 0 is admitted (plain sign).
cplx pairing_lambda(const SectionFun& f, const SectionFun& g, const OperatorOpts& opts = {});

// --- symmetry breaking families ---------------------------------------------

enum class SboLevel { raw_A, tildeA, tildetildeA, C, quo, tildetriple_quo };

struct SBODescriptor {
  int q = 0;
  int kernel_sign = 1;  // -1 inserts the sgn(X_n) factor
  SboLevel level = SboLevel::tildeA;
};

/// Apply the symmetry breaking operator of the descriptor at target
/// parameter nu to a section over O(1,n+1); the result is a section over
/// O(1,n) with degree q, parameter nu, and sign rep_sign * kernel_sign.
/// The conventional zero families (p=0, q=p-1 and p=n, q=p) return the zero
/// section. raw_A throws at the poles of its Gamma normalization.
SectionFun sbo_apply(const SBODescriptor& desc, cplx nu, const SectionFun& sec,
                     const OperatorOpts& opts = {});

/// Pre-tabulated family sweep: the section and target points are fixed, the
/// kernel is tabulated once, and values of A~^{alpha}_{(p,lambda),(q,nu)} f
/// at all targets are produced per (q, alpha, nu) by reweighting the rule.
class SboSweep {
 public:
  SboSweep(const SectionFun& sec, const std::vector<MatrixXd>& targets,
           const std::vector<int>& qs, const OperatorOpts& opts = {});

  /// Values of tildeA^{alpha}_{(q,nu)} f at every target.
  std::vector<VectorXcd> values(int q, int alpha, cplx nu) const;

  int n() const { return n_; }

 private:
  int n_ = 2, p_ = 0;
  cplx lambda_;
  OperatorOpts opts_;
  std::vector<double> rad_nodes_;
  std::vector<VectorXd> ang_nodes_;
  std::vector<int> qs_;
  // per q, per component: matrices (ang x rad) of projected kernel values
  std::vector<std::vector<std::vector<MatrixXcd>>> tab_;  // [target][qi][comp]
};

/// Batched family evaluation: tabulate the section once per target and
/// contract with per-request rule weights. Requests are (q, alpha, nu).
std::vector<std::vector<VectorXcd>> sbo_batch(
    const SectionFun& sec, const std::vector<MatrixXd>& targets,
    const std::vector<std::tuple<int, int, cplx>>& requests,
    const OperatorOpts& opts = {});

// --- open orbit restriction ---------------------------------------------------

enum class PhiSplit { full, plus, minus };

/// Sampled/evaluable restriction of a section to the open orbit, as a
/// function on O(1,n) with values in Lambda^p(C^n).
struct GKFunction {
  int n = 2, p = 0;
  cplx lambda{0.0, 0.0};
  int sign = 1;
  PhiSplit split = PhiSplit::full;
  int dim = 1;
  std::function<VectorXcd(const MatrixXd&)> eval;  // at (n+1)x(n+1) elements
  Grid grid;                                       // (X', r, omega) rows
  std::vector<VectorXcd> samples;
};

/// Phi f (split = full) or its even/odd parts 2 Phi_± f = f(. nbar_{e_n}) ±
/// rep_sign f(. wtilde_0 nbar_{e_n}); samples are filled on an
/// (X', r, omega) grid when fill_samples is set.
GKFunction phi_restrict(const SectionFun& sec, PhiSplit split, bool fill_samples = false);

/// Squared norm over the open orbit: sum over the two components of
/// int |F(nbar_{X'} e^{rH} Xi_omega)|^2 e^{2 rho' r} dX' dr.
double gk_norm_sq(const GKFunction& F, const OperatorOpts& opts = {});

/// Independent form of the same norm on the dense chart:
/// int_{R^n} |f(nbar_X)|^2 |X_n|^{2 Re lambda} dX.
double orbit_norm_sq_chart(const SectionFun& sec, const OperatorOpts& opts = {});

// --- Fourier transform on the hyperbolic quotient ----------------------------

/// Full Lambda^p-valued transform at the target frame k' of O(1,n):
/// int_{G'} sigma_p^w(pr_{O(n)} kappa(g^{-1}k'))^{-1} e^{-(nu+rho') H(g^{-1}k')}
/// F(g) dg in horospherical coordinates (both components).
VectorXcd fourier_gk_full(const GKFunction& F, const MatrixXd& kprime, cplx nu,
                          const OperatorOpts& opts = {});

/// The delta_q-projected transform as a section over O(1,n).
SectionFun fourier_gk(const GKFunction& F, int q, cplx nu, const OperatorOpts& opts = {});

// --- spherical functions ------------------------------------------------------

/// End(Lambda^p)-valued spherical function phi_{p,nu}(g) on O(1,n),
/// normalized to the identity at g = 1 (probability Haar on K').
MatrixXcd spherical_fn(int n, int p, cplx nu, const MatrixXd& g,
                       const OperatorOpts& opts = {});

// --- quotient pairings ---------------------------------------------------------

/// Signed pairing <f, T'_{q,nu} g> on sections over O(1,n) (m = n-1 ambient
/// rank), descending to the unitarizable quotient at real reducible nu:
/// + for q < (n-1)/2, - for q > (n-1)/2. At q = (n-1)/2, nu = 0 the pairing
/// is taken against the projection to the +-eigenspace of the normalized
/// T'_{q,0}; other nu at that q are rejected.
cplx quotient_pairing(int q, cplx nu, const SectionFun& f, const SectionFun& g,
                      const OperatorOpts& opts = {});

}  // namespace rankone

#endif
