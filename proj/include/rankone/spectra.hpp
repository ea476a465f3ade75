#ifndef RANKONE_SPECTRA_HPP
#define RANKONE_SPECTRA_HPP

#include <string>

#include "rankone/operators.hpp"

// End-to-end verification engines for the restriction identities and the
// symbolic assembler of branching decompositions. Verification records keep
// both sides of each identity plus the measured ratio; the assembler is pure
// case analysis producing deterministic, sortable atom lists.

namespace rankone {

// --- spectrum reports --------------------------------------------------------

enum class AtomKind {
  continuous_band,   // direct integral of tau_{q,nu} over the unitary axis
  comp_series,       // discrete complementary series point tau_{q,nu}
  cohomological,     // Pi'_{q,±}
  quotient_I,        // I'_{q,k,±}
  discrete_Pi_half,  // the pair Pi'_{n/2,±} inside the split-degree series
};

struct SpectrumAtom {
  AtomKind kind = AtomKind::continuous_band;
  int q = 0;
  double nu = 0.0;  // comp_series location
  int k = 0;        // quotient_I index
  int sign = 1;     // the ± of the atom (the alpha channel for bands)
  std::string coefficient = "1";
  int multiplicity = 1;
};

struct SpectrumReport {
  int n = 2, p = 0;
  cplx lambda{0.0, 0.0};
  int sign = 1;
  std::string object;  // classification label of the decomposed representation
  std::vector<SpectrumAtom> atoms;
};

/// Deterministic atom order (kind, q, nu, k, sign).
void sort_atoms(std::vector<SpectrumAtom>& atoms);

/// Symbolic branching decomposition of the unitary object identified by
/// (p, lambda, sign): unitary principal series (lambda on the axis),
/// complementary series, the cohomological quotients at lambda = ±(rho-p),
/// the one-dimensional quotients at p in {0,n}, lambda = ±rho, and the
/// quotients I at lambda = ±(rho+j). Throws std::domain_error with the
/// predicate outcome when no unitary object matches.
SpectrumReport branching_spectrum(int n, int p, cplx lambda, int rep_sign);

/// Discrete atoms of the complementary-range expansion per channel:
/// (alpha, q, k, nu0) with nu0 = lambda + 1 - alpha/2 + 2k.
struct ComplementaryAtom {
  int alpha = 1, q = 0, k = 0;
  double nu0 = 0.0;
};
std::vector<ComplementaryAtom> complementary_atoms(int n, int p, double lambda);

// --- verification records ------------------------------------------------------

struct VerificationRecord {
  std::string name;
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  cplx ratio{0.0, 0.0};
  double tolerance = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
  std::string note;
};

/// Residual of the identity expressing the transform of the split
/// restriction through the unnormalized breaking operators, checked on both
/// splits and both target degrees at a grid of frame points.
VerificationRecord verify_coordinate_change(int n, int p, cplx lambda, int rep_sign,
                                            unsigned seed, cplx nu,
                                            const OperatorOpts& opts = {});

struct PlancherelOpts {
  double nu_max = 30.0;
  double step = 0.05;
  double tol = 5e-3;
  OperatorOpts ops;
};

/// Unitary-axis expansion: || f ||^2 against the four-channel nu-integral
/// (plus the two discrete terms at split degree). The record's ratio is
/// RHS / LHS; `note` reports the truncation tail estimate.
VerificationRecord plancherel_check_unitary(int n, int p, cplx lambda, int rep_sign,
                                            unsigned seed, const PlancherelOpts& popts = {});

/// Complementary-range expansion with its discrete atoms weighted by the
/// residue constants.
VerificationRecord plancherel_check_complementary(int n, int p, double lambda,
                                                  int rep_sign, unsigned seed,
                                                  const PlancherelOpts& popts = {});

/// The ten functional-equation records at a given rank: the four target-side
/// branches, the four source-side branches, the quotient equation at a
/// reducible point, and the annihilation of the renormalized family.
std::vector<VerificationRecord> verify_functional_suite(int n, int npoints = 5,
                                                        const OperatorOpts& opts = {});

}  // namespace rankone

#endif
