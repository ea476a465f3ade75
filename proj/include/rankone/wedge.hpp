#ifndef RANKONE_WEDGE_HPP
#define RANKONE_WEDGE_HPP

#include "rankone/common.hpp"

// Exterior powers Lambda^p(C^m) in the wedge basis e_I, I a strictly
// increasing p-subset in lexicographic order. Matrix entries of Lambda^p(b)
// are p x p minors of b.

namespace rankone {

struct ExteriorRep {
  int n = 0;  // ambient dimension
  int p = 0;
  int dim = 0;
  std::vector<std::vector<int>> basis;  // 0-based index subsets, lex order
};

ExteriorRep make_exterior_rep(int n, int p);

long binom(int n, int k);

/// Matrix of Lambda^p(b) in the wedge basis: entry (I, J) = det b[I, J].
MatrixXd exterior_matrix(const ExteriorRep& rep, const MatrixXd& b);

/// Lambda^p(b) v for orthogonal b (checked to tol); the action used by the
/// principal series.
VectorXcd exterior_apply(const ExteriorRep& rep, const MatrixXd& b, const VectorXcd& v,
                         double tol = 1e-10);

/// Minor pairing of a rectangular frame: entry (J, I) = det F[J rows, I cols]
/// with J over p-subsets of rows (size rows) and I over p-subsets of columns.
/// Rows index the wedge basis of the larger space, columns the smaller one.
MatrixXd rectangular_minors(int rows, int cols, int p, const MatrixXd& F);

/// Coordinate projection Lambda^p(C^n) -> Lambda^q(C^{n-1}) for q = p-1
/// (subsets containing the last index n-1, with that index dropped) or q = p
/// (subsets avoiding it). Throws std::domain_error for other q.
VectorXcd project_delta(int n, int p, int q, const VectorXcd& v);

/// Transpose of project_delta: embed a Lambda^q(C^{n-1}) vector back.
VectorXcd embed_delta(int n, int p, int q, const VectorXcd& w);

}  // namespace rankone

#endif
