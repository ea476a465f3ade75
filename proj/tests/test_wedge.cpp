#include "doctest.h"

#include <random>

#include "rankone/lorentz.hpp"
#include "rankone/wedge.hpp"

using namespace rankone;

static MatrixXd random_orthogonal(int n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = g(rng);
  Eigen::HouseholderQR<MatrixXd> qr(A);
  MatrixXd Q = qr.householderQ();
  return Q;
}

TEST_CASE("exterior rep basics") {
  auto rep = make_exterior_rep(4, 2);
  CHECK(rep.dim == 6);
  CHECK(rep.dim == static_cast<int>(rep.basis.size()));
  CHECK(rep.basis.front() == std::vector<int>({0, 1}));
  CHECK(rep.basis.back() == std::vector<int>({2, 3}));
  CHECK((exterior_matrix(rep, MatrixXd::Identity(4, 4)) - MatrixXd::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("exterior_apply special powers") {
  std::mt19937 rng(2);
  int n = 3;
  MatrixXd b = random_orthogonal(n, rng);

  auto rep0 = make_exterior_rep(n, 0);
  VectorXcd v0(1);
  v0 << cplx(1.2, -0.5);
  CHECK(std::abs(exterior_apply(rep0, b, v0)(0) - v0(0)) < 1e-15);

  auto repn = make_exterior_rep(n, n);
  VectorXcd vn(1);
  vn << cplx(0.3, 0.7);
  CHECK(std::abs(exterior_apply(repn, b, vn)(0) - b.determinant() * vn(0)) < 1e-12);

  auto rep1 = make_exterior_rep(n, 1);
  VectorXcd v1(3);
  v1 << 1.0, cplx(0, 2), -0.5;
  CHECK((exterior_apply(rep1, b, v1) - (b * v1)).cwiseAbs().maxCoeff() < 1e-12);

  MatrixXd bad = 2.0 * b;
  CHECK_THROWS_AS(exterior_apply(rep1, bad, v1), std::invalid_argument);
}

TEST_CASE("exterior_apply is a homomorphism") {
  std::mt19937 rng(4);
  for (int n : {3, 4}) {
    for (int p = 0; p <= n; ++p) {
      auto rep = make_exterior_rep(n, p);
      MatrixXd b1 = random_orthogonal(n, rng), b2 = random_orthogonal(n, rng);
      MatrixXd lhs = exterior_matrix(rep, b1 * b2);
      MatrixXd rhs = exterior_matrix(rep, b1) * exterior_matrix(rep, b2);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("project_delta splits by membership of the last index") {
  VectorXcd v0(1);
  v0 << 2.0;
  CHECK(std::abs(project_delta(2, 0, 0, v0)(0) - 2.0) < 1e-15);

  // n=2, p=1, basis {0},{1}: q=1 keeps component 0, q=0 keeps component 1.
  VectorXcd v(2);
  v << cplx(1, 1), cplx(3, -2);
  CHECK(std::abs(project_delta(2, 1, 1, v)(0) - v(0)) < 1e-15);
  CHECK(std::abs(project_delta(2, 1, 0, v)(0) - v(1)) < 1e-15);

  CHECK_THROWS_AS(project_delta(2, 1, 2, v), std::domain_error);
}

TEST_CASE("project_delta is an isometric splitting") {
  std::mt19937 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n : {3, 4}) {
    for (int p = 1; p < n; ++p) {
      auto rep = make_exterior_rep(n, p);
      VectorXcd v(rep.dim);
      for (int i = 0; i < rep.dim; ++i) v(i) = cplx(g(rng), g(rng));
      double total = v.squaredNorm();
      double split = project_delta(n, p, p - 1, v).squaredNorm() +
                     project_delta(n, p, p, v).squaredNorm();
      CHECK(std::abs(total - split) < 1e-12 * total);
      // embed is a right inverse
      VectorXcd w = project_delta(n, p, p, v);
      CHECK((project_delta(n, p, p, embed_delta(n, p, p, w)) - w).cwiseAbs().maxCoeff() <
            1e-15);
    }
  }
}

TEST_CASE("M'-equivariance of the splitting") {
  // For b' in O(n-1) embedded in the upper-left block of O(n), the wedge
  // action commutes with project_delta.
  std::mt19937 rng(10);
  int n = 4, p = 2;
  MatrixXd bp = random_orthogonal(n - 1, rng);
  MatrixXd b = MatrixXd::Identity(n, n);
  b.block(0, 0, n - 1, n - 1) = bp;
  auto rep = make_exterior_rep(n, p);
  std::normal_distribution<double> g(0.0, 1.0);
  VectorXcd v(rep.dim);
  for (int i = 0; i < rep.dim; ++i) v(i) = cplx(g(rng), g(rng));
  for (int q : {p - 1, p}) {
    auto repq = make_exterior_rep(n - 1, q);
    VectorXcd lhs = project_delta(n, p, q, exterior_apply(rep, b, v));
    VectorXcd rhs = exterior_apply(repq, bp, project_delta(n, p, q, v));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}
