#ifndef RANKONE_LORENTZ_HPP
#define RANKONE_LORENTZ_HPP

#include <random>

#include "rankone/common.hpp"

// Exact linear algebra of the Lorentz groups O(1,m+1): membership test,
// Iwasawa (KAN) and open-cell (NbarMAN) decompositions, the reflection
// psi_m, and the structural subgroup elements. Everything is parameterized
// by the rank m at runtime; matrices are (m+2)x(m+2) and preserve the form
// diag(-1, 1, ..., 1). Points of the abelian nilpotent groups are row
// vectors X in R^m, with matrices acting from the right.

namespace rankone {

struct GroupElement {
  MatrixXd mat;  // (n+2)x(n+2)
  int n = 0;
};

/// diag(-1, 1, ..., 1) of size m+2.
MatrixXd lorentz_form(int m);

/// True iff mat^T J mat = J entrywise within tol. Throws on a shape mismatch.
bool lorentz_check(const MatrixXd& mat, int m, double tol = 1e-12);

GroupElement make_group_element(const MatrixXd& mat, int m, double tol = 1e-12);

/// Inverse via the form: g^{-1} = J g^T J. Exact up to rounding of products.
MatrixXd lorentz_inverse(const MatrixXd& g);

// --- structural elements -------------------------------------------------

/// nbar_X = exp of the lower nilpotent element attached to X (closed form,
/// the exponential terminates at the quadratic term).
MatrixXd nbar(const VectorXd& X);

/// n_Z = exp of the upper nilpotent element attached to Z.
MatrixXd nupper(const VectorXd& Z);

/// exp(t H) with H the standard split generator.
MatrixXd a_exp(int m, double t);

/// diag(a, a, b) with a = ±1 and b in O(m).
MatrixXd m_elem(double a, const MatrixXd& b);

/// wtilde_0 = diag(-1, 1, 1_m): representative of the longest Weyl element.
MatrixXd wtilde0(int m);

/// Xi_omega = diag(omega, omega, 1_m), omega = ±1.
MatrixXd xi_elem(int m, int omega);

/// The O(m) matrix with -1_{m-1} in the upper right block and -1 in the
/// lower left corner; conjugation by it moves the distinguished m-th axis
/// to the first slot.
MatrixXd w_flip(int m);

/// Embed h in O(1,m+1) (size m+2) as an element of O(1,m+2) fixing the last
/// coordinate.
MatrixXd embed_up(const MatrixXd& h);

/// psi_m(X) = 1_m - 2 X^T X / |X|^2, the reflection in the hyperplane X^perp.
/// Throws std::domain_error for X = 0.
MatrixXd psi(const VectorXd& X);

// --- decompositions -------------------------------------------------------

struct IwasawaFactors {
  MatrixXd kappa;  // K-part
  double t = 0;    // exponent of the A-part: a = exp(t H)
  VectorXd nu;     // N-parameter
};

struct BruhatFactors {
  VectorXd nbar_param;  // Nbar-parameter
  double m_a = 1;       // O(1)-part of the M-factor
  MatrixXd m_b;         // O(m)-part of the M-factor
  double t = 0;         // A-part exponent
  VectorXd n_vec;       // N-parameter
};

/// g = kappa exp(tH) n. Global; computed as a QR factorization in the
/// light-cone basis.
IwasawaFactors iwasawa_KAN(const GroupElement& g);

/// g = nbar m a n on the open cell. Throws std::domain_error when the
/// light-cone pivot is below tol (g not in the open cell).
BruhatFactors decompose_nbarman(const GroupElement& g, double tol = 1e-10);

MatrixXd recompose(const IwasawaFactors& f, int m);
MatrixXd recompose(const BruhatFactors& f, int m);

/// exp of a random element of the Lie algebra so(1,m+1), entries scaled by
/// `scale`. Deterministic in the engine state.
GroupElement random_group_element(int m, std::mt19937& rng, double scale = 0.5);

// --- light-cone basis helpers (exposed for tests) -------------------------

/// Orthogonal change of basis mapping e0,e1 to the light-cone pair; in the
/// new basis A is diagonal and N (Nbar) is strictly upper (lower) triangular.
MatrixXd lightcone_basis(int m);

}  // namespace rankone

#endif
