#include "doctest.h"

#include <random>

#include "rankone/lorentz.hpp"

using namespace rankone;

TEST_CASE("lorentz_check examples") {
  CHECK(lorentz_check(MatrixXd::Identity(4, 4), 2));
  MatrixXd w = MatrixXd::Identity(4, 4);
  w(0, 0) = -1.0;
  CHECK(lorentz_check(w, 2));
  MatrixXd s = MatrixXd::Identity(4, 4);
  s(0, 0) = 2.0;
  CHECK(!lorentz_check(s, 2));
  CHECK_THROWS_AS(lorentz_check(MatrixXd::Identity(3, 3), 2), std::invalid_argument);
}

TEST_CASE("nbar group law and membership") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n : {2, 3, 5}) {
    VectorXd X(n), Y(n);
    for (int i = 0; i < n; ++i) {
      X(i) = g(rng);
      Y(i) = g(rng);
    }
    CHECK(lorentz_check(nbar(X), n));
    CHECK(lorentz_check(nupper(X), n));
    CHECK((nbar(X) * nbar(Y) - nbar(X + Y)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((nbar(VectorXd::Zero(n)) - MatrixXd::Identity(n + 2, n + 2)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("iwasawa_KAN closed form on nbar") {
  // For g = nbar_X the A-part is log(1 + |X|^2).
  VectorXd X = VectorXd::Zero(2);
  X(1) = 1.0;  // e_n at n=2
  auto f = iwasawa_KAN(GroupElement{nbar(X), 2});
  CHECK(std::abs(f.t - std::log(2.0)) < 1e-12);
  // kappa first column matches ((1-|X|^2)/(1+|X|^2), 2X/(1+|X|^2)) shape
  CHECK(std::abs(f.kappa(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(f.kappa(1, 1) - 0.0) < 1e-12);
  CHECK(std::abs(f.kappa(2, 1) - 0.0) < 1e-12);
  CHECK(std::abs(f.kappa(3, 1) - 1.0) < 1e-12);

  auto id = iwasawa_KAN(GroupElement{MatrixXd::Identity(4, 4), 2});
  CHECK(std::abs(id.t) < 1e-14);
  CHECK(id.nu.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("decompositions recompose on random elements") {
  std::mt19937 rng(11);
  for (int n : {2, 3, 4, 5}) {
    for (int k = 0; k < 50; ++k) {
      GroupElement g = random_group_element(n, rng);
      auto kan = iwasawa_KAN(g);
      CHECK((recompose(kan, n) - g.mat).cwiseAbs().maxCoeff() < 1e-12);
      auto bru = decompose_nbarman(g);
      CHECK((recompose(bru, n) - g.mat).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((bru.m_b.transpose() * bru.m_b - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("decompose_nbarman closed forms") {
  int n = 2;
  auto idf = decompose_nbarman(GroupElement{MatrixXd::Identity(4, 4), 2});
  CHECK(idf.nbar_param.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(idf.m_a == 1.0);
  CHECK(std::abs(idf.t) < 1e-14);

  VectorXd en = VectorXd::Zero(n);
  en(n - 1) = 1.0;
  auto f = decompose_nbarman(GroupElement{wtilde0(n) * nbar(en), n});
  CHECK((f.nbar_param + en).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(f.t) < 1e-12);
  CHECK(f.m_a == -1.0);
  CHECK((f.m_b - psi(en)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(decompose_nbarman(GroupElement{wtilde0(n), n}), std::domain_error);
}

TEST_CASE("conjugation identities") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n : {2, 3}) {
    VectorXd X(n);
    for (int i = 0; i < n; ++i) X(i) = g(rng);
    // a nbar_X a^{-1} = nbar_{e^{-t} X}
    double t = 0.7;
    MatrixXd lhs = a_exp(n, t) * nbar(X) * a_exp(n, -t);
    CHECK((lhs - nbar(std::exp(-t) * X)).cwiseAbs().maxCoeff() < 1e-13);
    // m nbar_X m^{-1} = nbar_{a X b} for m = diag(a, a, b^{-1})
    MatrixXd b = iwasawa_KAN(random_group_element(n - 1, rng)).kappa.block(1, 1, n, n);
    for (double a : {1.0, -1.0}) {
      MatrixXd melt = m_elem(a, b.transpose());
      MatrixXd left = melt * nbar(X) * lorentz_inverse(melt);
      VectorXd aXb = a * (b.transpose() * X);  // row-vector convention: (aX) b
      CHECK((left - nbar(aXb)).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("psi is the expected reflection") {
  VectorXd e1 = VectorXd::Zero(2);
  e1(0) = 1.0;
  MatrixXd r = psi(e1);
  CHECK(std::abs(r(0, 0) + 1.0) < 1e-15);
  CHECK(std::abs(r(1, 1) - 1.0) < 1e-15);

  std::mt19937 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  VectorXd X(3);
  for (int i = 0; i < 3; ++i) X(i) = g(rng);
  MatrixXd m = psi(X);
  CHECK((m.transpose() * m - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((X.transpose() * m + X.transpose()).cwiseAbs().maxCoeff() < 1e-13);

  VectorXd v(3);
  v << 1.0, 1.0, 0.0;
  v /= std::sqrt(2.0);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(psi(v));
  CHECK(std::abs(es.eigenvalues()(0) + 1.0) < 1e-12);
  CHECK(std::abs(es.eigenvalues()(1) - 1.0) < 1e-12);
  CHECK(std::abs(es.eigenvalues()(2) - 1.0) < 1e-12);

  CHECK_THROWS_AS(psi(VectorXd::Zero(2)), std::domain_error);
}

TEST_CASE("stabilizer of the base coset") {
  // k in O(n), embedded as diag(1, k, 1), fixes nbar_{e_n} P: the
  // translated element has no Nbar- or A-part.
  std::mt19937 rng(21);
  for (int n : {2, 3}) {
    VectorXd en = VectorXd::Zero(n);
    en(n - 1) = 1.0;
    MatrixXd k = iwasawa_KAN(random_group_element(n - 1, rng)).kappa.block(1, 1, n, n);
    MatrixXd kg = MatrixXd::Identity(n + 2, n + 2);
    kg.block(1, 1, n, n) = k;
    auto f = decompose_nbarman(GroupElement{nbar(-en) * kg * nbar(en), n});
    CHECK(f.nbar_param.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(f.t) < 1e-10);
  }
}

TEST_CASE("w_flip conjugation moves the stabilizer inside M") {
  // diag(1,k,1) nbar_{e_n} = nbar_{e_n} diag(1,1, w k w^{-1}) n for some
  // N-factor n, i.e. the M-part of the translated element is w k w^{-1}.
  std::mt19937 rng(23);
  for (int n : {2, 3}) {
    VectorXd en = VectorXd::Zero(n);
    en(n - 1) = 1.0;
    MatrixXd k = iwasawa_KAN(random_group_element(n - 1, rng)).kappa.block(1, 1, n, n);
    MatrixXd kg = MatrixXd::Identity(n + 2, n + 2);
    kg.block(1, 1, n, n) = k;
    auto f = decompose_nbarman(GroupElement{nbar(-en) * kg * nbar(en), n});
    CHECK(f.nbar_param.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(f.t) < 1e-12);
    CHECK(f.m_a == 1.0);
    MatrixXd w = w_flip(n);
    CHECK((f.m_b - w * k * w.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    // w moves the first block axis to the last one
    CHECK(std::abs(w(n - 1, 0) - 1.0) < 1e-15);
  }
}

TEST_CASE("Xi commutation with nbar_{e_n}") {
  for (int n : {2, 3}) {
    VectorXd en = VectorXd::Zero(n);
    en(n - 1) = 1.0;
    for (int om : {1, -1}) {
      MatrixXd lhs = xi_elem(n, om) * nbar(en);
      MatrixXd rhs = nbar(om * en) * xi_elem(n, om);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}
