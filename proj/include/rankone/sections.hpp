#ifndef RANKONE_SECTIONS_HPP
#define RANKONE_SECTIONS_HPP

#include <optional>
#include <string>

#include "rankone/lorentz.hpp"
#include "rankone/params.hpp"
#include "rankone/quadrature.hpp"
#include "rankone/wedge.hpp"

// Sections of the principal series bundles over O(1,m+1)/P with fiber
// Lambda^p(C^m). A section is represented by a global evaluator at group
// elements; the compact and noncompact pictures are the restrictions of
// that evaluator to sphere representatives resp. to nbar_X. Test sections
// come from Lambda^p(C^{m+1})-valued ambient polynomials paired against
// the tangent frame of the sphere, which produces smooth bundle sections
// for both representation signs.

namespace rankone {

enum class Picture { compact, noncompact };

struct SectionParams {
  int m = 2;  // ambient rank: group O(1,m+1), fiber Lambda^p(C^m)
  int p = 0;
  cplx lambda{0.0, 0.0};
  int sign = 1;
};

struct SectionFun {
  SectionParams par;
  int dim = 1;
  std::function<VectorXcd(const MatrixXd&)> eval;  // at (m+2)x(m+2) elements

  VectorXcd at(const VectorXd& X) const { return eval(nbar(X)); }
};

/// Lambda^p(C^{m+1})-valued polynomial on R^{m+1}: per wedge component a
/// list of (exponent vector, coefficient).
struct AmbientPoly {
  int m = 2;
  int p = 0;
  std::vector<std::vector<std::pair<std::vector<int>, cplx>>> comps;
};

/// Section with polynomial data; sign selects the character twist.
SectionFun section_from_poly(const AmbientPoly& poly, cplx lambda, int sign);

/// Deterministic band-limited test section (polynomial degree <= 4).
/// Seed 0 with p = 0 gives the constant section.
SectionFun make_test_section(int m, int p, cplx lambda, int sign, unsigned seed);

/// pi(g) f = f(g^{-1} .): lazy left-regular action.
SectionFun act(const SectionFun& sec, const MatrixXd& g);

/// a f + b g for sections with identical parameters.
SectionFun section_combine(cplx a, const SectionFun& f, cplx b, const SectionFun& g);

/// Wrap an evaluator so that every request is transported, via the bundle
/// covariance, to a chart point with small coordinate (the dense chart or
/// its Weyl translate). Quadrature-backed evaluators are only accurate for
/// nearby targets; operator outputs should be wrapped with this.
SectionFun stabilize_section(const SectionFun& raw);

/// K-representative of the sphere point omega in S^m: diag(1, u) with
/// u e_1 = omega.
MatrixXd k_rep(const VectorXd& omega);

/// Sphere point of the coset nbar_X P under the Iwasawa map.
VectorXd sphere_point(const VectorXd& X);
/// Chart inverse of sphere_point; throws near the far pole.
VectorXd chart_point(const VectorXd& omega, double tol = 1e-12);

// --- invariant pairings ----------------------------------------------------

struct PairOpts {
  double res = 1.0;  // scales node counts
};

/// Invariant pairing int <f1, f2> (1+|X|^2)^{w} dX over the flag manifold,
/// evaluated on two charts; w = conj(lambda1) + lambda2 (sesquilinear) or
/// lambda1 + lambda2 (bilinear). For parameters adding to zero this is the
/// L2(K)-pairing in the normalization where the unitary axis makes the
/// noncompact picture an honest L2(R^m).
cplx pair_K(const SectionFun& a, const SectionFun& b, bool conjugate_first = true,
            const PairOpts& opts = {});

double norm_K(const SectionFun& a, const PairOpts& opts = {});

// --- sampled sections (serializable form) ----------------------------------

struct Grid {
  std::string kind;  // "sphere_product", "euclidean_radial", "line_jacobi"
  std::vector<VectorXd> nodes;
  std::vector<double> weights;
  std::optional<double> singular_exponent;
};

struct SampledSection {
  Picture picture = Picture::compact;
  SectionParams par;
  Grid grid;
  std::vector<VectorXcd> samples;
};

/// Product grid on the sphere S^m with the measure normalized so that
/// sum w_i f_i equals the L2(K) integral (factor 2^{-m} relative to the
/// round measure).
Grid make_compact_grid(int m, double res = 1.0);

/// Two-chart polar grid on R^m with plain Lebesgue weights.
Grid make_noncompact_grid(int m, double res = 1.0);

SampledSection sample_section(const SectionFun& f, Picture picture, const Grid& grid);

/// Quadrature pairing sum_i w_i <f_i, g_i> of two sampled sections on
/// matching grids. Requires conj(lambda1)+lambda2 = 0 so the grid weights
/// represent the invariant measure.
cplx inner_K(const SampledSection& f, const SampledSection& g);

// --- fitting (resampling engine) -------------------------------------------

struct FitResult {
  SectionFun fun;
  double residual = 0.0;  // relative rms over the sample set
};

/// Least-squares fit of sampled values (at arbitrary group elements) by a
/// section with polynomial data of total degree <= deg. Band-limited
/// sections are reproduced to rounding; the residual reports the quality.
FitResult section_fit(const SectionParams& par,
                      const std::vector<MatrixXd>& points,
                      const std::vector<VectorXcd>& values, int deg);

/// Convenience: sample a SectionFun on the canonical two-chart point set and
/// fit it (used to materialize lazy operator outputs before re-integration).
FitResult resample_section(const SectionFun& f, int deg, double res = 1.0);

/// Change of picture of sampled data via the fit; the inverse direction is
/// the same call with the other picture tag.
SampledSection change_picture(const SampledSection& s, Picture target, const Grid& grid,
                              int deg = 6);

// --- regularized power integrals -------------------------------------------

struct RegPowerOpts {
  double eps = 0.5;
  double R = 12.0;
  int ncoef = 12;
  int ngl = 16;
};

/// Analytic continuation of int |t|^s sgn(t)^eps_sign g(t) dt for smooth g
/// with negligible mass beyond |t| > R. Valid for Re s > -3 (more generally
/// until the fit degree), excluding the continuation poles s = -1, -2, ...
/// where std::domain_error is thrown unless the corresponding Taylor
/// coefficient of g vanishes.
cplx reg_power_integral(cplx s, int eps_sign, const std::function<cplx(double)>& g,
                        const RegPowerOpts& opts = {});

}  // namespace rankone

#endif
