#include "rankone/wedge.hpp"

namespace rankone {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

static void subsets_rec(int n, int p, int start, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_rec(n, p, i + 1, cur, out);
    cur.pop_back();
  }
}

ExteriorRep make_exterior_rep(int n, int p) {
  if (p < 0 || p > n) throw std::domain_error("make_exterior_rep: need 0 <= p <= n");
  ExteriorRep rep;
  rep.n = n;
  rep.p = p;
  std::vector<int> cur;
  subsets_rec(n, p, 0, cur, rep.basis);
  rep.dim = static_cast<int>(rep.basis.size());
  return rep;
}

static double minor_det(const MatrixXd& b, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  int p = static_cast<int>(rows.size());
  if (p == 0) return 1.0;
  if (p == 1) return b(rows[0], cols[0]);
  if (p == 2)
    return b(rows[0], cols[0]) * b(rows[1], cols[1]) -
           b(rows[0], cols[1]) * b(rows[1], cols[0]);
  MatrixXd sub(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) sub(i, j) = b(rows[i], cols[j]);
  return sub.determinant();
}

MatrixXd exterior_matrix(const ExteriorRep& rep, const MatrixXd& b) {
  MatrixXd out(rep.dim, rep.dim);
  for (int i = 0; i < rep.dim; ++i)
    for (int j = 0; j < rep.dim; ++j) out(i, j) = minor_det(b, rep.basis[i], rep.basis[j]);
  return out;
}

VectorXcd exterior_apply(const ExteriorRep& rep, const MatrixXd& b, const VectorXcd& v,
                         double tol) {
  int n = rep.n;
  if (b.rows() != n || b.cols() != n)
    throw std::invalid_argument("exterior_apply: b has wrong shape");
  if ((b.transpose() * b - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("exterior_apply: b is not orthogonal");
  return exterior_matrix(rep, b) * v;
}

MatrixXd rectangular_minors(int rows, int cols, int p, const MatrixXd& F) {
  ExteriorRep row_rep = make_exterior_rep(rows, p);
  ExteriorRep col_rep = make_exterior_rep(cols, p);
  MatrixXd out(row_rep.dim, col_rep.dim);
  for (int i = 0; i < row_rep.dim; ++i)
    for (int j = 0; j < col_rep.dim; ++j)
      out(i, j) = minor_det(F, row_rep.basis[i], col_rep.basis[j]);
  return out;
}

VectorXcd project_delta(int n, int p, int q, const VectorXcd& v) {
  if (!((q == p - 1 || q == p) && q >= 0 && q <= n - 1))
    throw std::domain_error("project_delta: q must be p-1 or p within [0, n-1]");
  ExteriorRep src = make_exterior_rep(n, p);
  ExteriorRep dst = make_exterior_rep(n - 1, q);
  VectorXcd out = VectorXcd::Zero(dst.dim);
  // Subsets containing the last index n-1 carry the Lambda^{p-1} component;
  // the rest carry Lambda^p.
  for (int i = 0; i < src.dim; ++i) {
    const auto& I = src.basis[i];
    bool has_last = !I.empty() && I.back() == n - 1;
    if (has_last != (q == p - 1)) continue;
    std::vector<int> J(I.begin(), has_last ? I.end() - 1 : I.end());
    for (int j = 0; j < dst.dim; ++j)
      if (dst.basis[j] == J) {
        out(j) = v(i);
        break;
      }
  }
  return out;
}

VectorXcd embed_delta(int n, int p, int q, const VectorXcd& w) {
  if (!((q == p - 1 || q == p) && q >= 0 && q <= n - 1))
    throw std::domain_error("embed_delta: q must be p-1 or p within [0, n-1]");
  ExteriorRep src = make_exterior_rep(n, p);
  ExteriorRep dst = make_exterior_rep(n - 1, q);
  VectorXcd out = VectorXcd::Zero(src.dim);
  for (int j = 0; j < dst.dim; ++j) {
    std::vector<int> I = dst.basis[j];
    if (q == p - 1) I.push_back(n - 1);
    for (int i = 0; i < src.dim; ++i)
      if (src.basis[i] == I) {
        out(i) = w(j);
        break;
      }
  }
  return out;
}

}  // namespace rankone
