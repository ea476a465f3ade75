#include "rankone/lorentz.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace rankone {

MatrixXd lorentz_form(int m) {
  MatrixXd J = MatrixXd::Identity(m + 2, m + 2);
  J(0, 0) = -1.0;
  return J;
}

bool lorentz_check(const MatrixXd& mat, int m, double tol) {
  if (mat.rows() != m + 2 || mat.cols() != m + 2)
    throw std::invalid_argument("lorentz_check: matrix must be (m+2)x(m+2)");
  MatrixXd J = lorentz_form(m);
  return (mat.transpose() * J * mat - J).cwiseAbs().maxCoeff() <= tol;
}

GroupElement make_group_element(const MatrixXd& mat, int m, double tol) {
  if (!lorentz_check(mat, m, tol))
    throw std::invalid_argument("make_group_element: matrix does not preserve the form");
  return GroupElement{mat, m};
}

MatrixXd lorentz_inverse(const MatrixXd& g) {
  int m = static_cast<int>(g.rows()) - 2;
  MatrixXd J = lorentz_form(m);
  return J * g.transpose() * J;
}

MatrixXd nbar(const VectorXd& X) {
  int m = static_cast<int>(X.size());
  MatrixXd N = MatrixXd::Zero(m + 2, m + 2);
  N.block(0, 2, 1, m) = X.transpose();
  N.block(1, 2, 1, m) = -X.transpose();
  N.block(2, 0, m, 1) = X;
  N.block(2, 1, m, 1) = X;
  double s = X.squaredNorm();
  MatrixXd out = MatrixXd::Identity(m + 2, m + 2) + N;
  // N^2 is supported on the 2x2 corner block.
  out(0, 0) += 0.5 * s;
  out(0, 1) += 0.5 * s;
  out(1, 0) -= 0.5 * s;
  out(1, 1) -= 0.5 * s;
  return out;
}

MatrixXd nupper(const VectorXd& Z) {
  int m = static_cast<int>(Z.size());
  MatrixXd N = MatrixXd::Zero(m + 2, m + 2);
  N.block(0, 2, 1, m) = Z.transpose();
  N.block(1, 2, 1, m) = Z.transpose();
  N.block(2, 0, m, 1) = Z;
  N.block(2, 1, m, 1) = -Z;
  double s = Z.squaredNorm();
  MatrixXd out = MatrixXd::Identity(m + 2, m + 2) + N;
  out(0, 0) += 0.5 * s;
  out(0, 1) -= 0.5 * s;
  out(1, 0) += 0.5 * s;
  out(1, 1) -= 0.5 * s;
  return out;
}

MatrixXd a_exp(int m, double t) {
  MatrixXd a = MatrixXd::Identity(m + 2, m + 2);
  a(0, 0) = std::cosh(t);
  a(0, 1) = std::sinh(t);
  a(1, 0) = std::sinh(t);
  a(1, 1) = std::cosh(t);
  return a;
}

MatrixXd m_elem(double a, const MatrixXd& b) {
  int m = static_cast<int>(b.rows());
  MatrixXd out = MatrixXd::Identity(m + 2, m + 2);
  out(0, 0) = a;
  out(1, 1) = a;
  out.block(2, 2, m, m) = b;
  return out;
}

MatrixXd wtilde0(int m) {
  MatrixXd w = MatrixXd::Identity(m + 2, m + 2);
  w(0, 0) = -1.0;
  return w;
}

MatrixXd xi_elem(int m, int omega) {
  MatrixXd x = MatrixXd::Identity(m + 2, m + 2);
  x(0, 0) = omega;
  x(1, 1) = omega;
  return x;
}

MatrixXd w_flip(int m) {
  // Conjugator between the stabilizer copy of O(m) (block at coordinates
  // 1..m) and the M-copy (block at 2..m+1): for k in O(m),
  //   diag(1,k,1) nbar_{e_m} = nbar_{e_m} diag(1,1, w k w^{-1}) n
  // with an N-factor n depending on k. It maps the first block axis to the
  // distinguished last one.
  MatrixXd w = MatrixXd::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) w(i, i + 1) = -1.0;
  w(m - 1, 0) = 1.0;
  return w;
}

MatrixXd embed_up(const MatrixXd& h) {
  int d = static_cast<int>(h.rows());
  MatrixXd g = MatrixXd::Identity(d + 1, d + 1);
  g.block(0, 0, d, d) = h;
  return g;
}

MatrixXd psi(const VectorXd& X) {
  double s = X.squaredNorm();
  if (s == 0.0) throw std::domain_error("psi: X must be nonzero");
  int m = static_cast<int>(X.size());
  return MatrixXd::Identity(m, m) - (2.0 / s) * (X * X.transpose());
}

MatrixXd lightcone_basis(int m) {
  // Columns: v0 = (e0+e1)/sqrt2, e2..e_{m+1}, v_{m+1} = (e0-e1)/sqrt2.
  int d = m + 2;
  MatrixXd S = MatrixXd::Zero(d, d);
  const double r = 1.0 / std::sqrt(2.0);
  S(0, 0) = r;
  S(1, 0) = r;
  for (int j = 0; j < m; ++j) S(2 + j, 1 + j) = 1.0;
  S(0, d - 1) = r;
  S(1, d - 1) = -r;
  return S;
}

IwasawaFactors iwasawa_KAN(const GroupElement& g) {
  int m = g.n, d = m + 2;
  MatrixXd S = lightcone_basis(m);
  MatrixXd gt = S.transpose() * g.mat * S;
  // In the light-cone basis AN is upper triangular with diagonal
  // (e^t, 1, ..., 1, e^{-t}) and K stays orthogonal, so KAN is the QR
  // factorization with positive diagonal.
  Eigen::HouseholderQR<MatrixXd> qr(gt);
  MatrixXd Q = qr.householderQ();
  MatrixXd R = Q.transpose() * gt;
  for (int j = 0; j < d; ++j) {
    if (R(j, j) < 0) {
      R.row(j) = -R.row(j);
      Q.col(j) = -Q.col(j);
    }
  }
  IwasawaFactors f;
  f.kappa = S * Q * S.transpose();
  f.t = std::log(R(0, 0));
  // R = a(t) * n(Z); the N-parameter sits in the first row of a^{-1} R.
  f.nu = VectorXd(m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < m; ++j) f.nu(j) = R(0, 1 + j) / R(0, 0) * inv_sqrt2;
  return f;
}

MatrixXd recompose(const IwasawaFactors& f, int m) {
  return f.kappa * a_exp(m, f.t) * nupper(f.nu);
}

BruhatFactors decompose_nbarman(const GroupElement& g, double tol) {
  int m = g.n, d = m + 2;
  MatrixXd S = lightcone_basis(m);
  MatrixXd gt = S.transpose() * g.mat * S;
  double pivot = gt(0, 0);
  double scale = gt.cwiseAbs().maxCoeff();
  if (std::abs(pivot) <= tol * scale)
    throw std::domain_error("decompose_nbarman: element not in the open cell");
  const double sqrt2 = std::sqrt(2.0);
  BruhatFactors f;
  f.nbar_param = gt.block(1, 0, m, 1) / (sqrt2 * pivot);
  f.n_vec = gt.block(0, 1, 1, m).transpose() / (sqrt2 * pivot);
  MatrixXd B = S.transpose() * nbar(-f.nbar_param) * S * gt *
               (S.transpose() * nupper(-f.n_vec) * S);
  // B should now be block-diagonal diag(m_a e^t, m_b, m_a e^{-t}).
  f.m_a = B(0, 0) > 0 ? 1.0 : -1.0;
  f.t = 0.5 * std::log(B(0, 0) / B(d - 1, d - 1));
  f.m_b = B.block(1, 1, m, m);
  double offdiag = std::max({B.block(1, 0, m, 1).cwiseAbs().maxCoeff(),
                             B.block(0, 1, 1, m).cwiseAbs().maxCoeff(),
                             std::abs(B(d - 1, 0)), std::abs(B(0, d - 1))});
  if (offdiag > 1e-6 * std::max(1.0, scale))
    throw std::domain_error("decompose_nbarman: factorization residual too large");
  return f;
}

MatrixXd recompose(const BruhatFactors& f, int m) {
  return nbar(f.nbar_param) * m_elem(f.m_a, f.m_b) * a_exp(m, f.t) * nupper(f.n_vec);
}

GroupElement random_group_element(int m, std::mt19937& rng, double scale) {
  int d = m + 2;
  // A = J W with W antisymmetric solves A^T J + J A = 0.
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd W = MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double v = scale * gauss(rng);
      W(i, j) = v;
      W(j, i) = -v;
    }
  MatrixXd A = lorentz_form(m) * W;
  MatrixXd g = A.exp();
  return GroupElement{g, m};
}

}  // namespace rankone
