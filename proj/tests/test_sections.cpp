#include "doctest.h"

#include <random>

#include "rankone/gamma.hpp"
#include "rankone/sections.hpp"

using namespace rankone;

TEST_CASE("test sections are deterministic and the base case is constant") {
  auto f1 = make_test_section(2, 1, cplx(0.1, 0.3), 1, 5);
  auto f2 = make_test_section(2, 1, cplx(0.1, 0.3), 1, 5);
  VectorXd X(2);
  X << 0.3, -0.7;
  CHECK((f1.at(X) - f2.at(X)).cwiseAbs().maxCoeff() == 0.0);

  // p=0, seed 0: u(X) = (1+|X|^2)^{-(lambda+rho)}
  cplx lambda(0.7, -0.2);
  auto c = make_test_section(2, 0, lambda, 1, 0);
  for (double r : {0.0, 1.0, 2.5}) {
    VectorXd Y(2);
    Y << r, 0.0;
    cplx want = std::exp(-(lambda + 1.0) * std::log(1.0 + r * r));
    CHECK(std::abs(c.at(Y)(0) - want) < 1e-12 * std::abs(want));
  }
  // norm positivity over seeds
  for (unsigned s : {1u, 2u, 3u}) {
    auto g = make_test_section(2, 1, cplx(0, 0.4), -1, s);
    CHECK(norm_K(g) > 0.0);
  }
}

TEST_CASE("sections satisfy the bundle covariance") {
  std::mt19937 rng(31);
  std::normal_distribution<double> gau(0.0, 1.0);
  for (int m : {2, 3}) {
    for (int p = 0; p <= m; ++p) {
      for (int sign : {1, -1}) {
        cplx lambda(0.23, 0.51);
        auto sec = make_test_section(m, p, lambda, sign, 3);
        auto rep = make_exterior_rep(m, p);
        GroupElement g = random_group_element(m, rng);
        MatrixXd b = iwasawa_KAN(random_group_element(m - 1, rng)).kappa.block(1, 1, m, m);
        double t = 0.4;
        VectorXd Z(m);
        for (int i = 0; i < m; ++i) Z(i) = gau(rng);
        for (double a : {1.0, -1.0}) {
          MatrixXd man = m_elem(a, b) * a_exp(m, t) * nupper(Z);
          VectorXcd lhs = sec.eval(g.mat * man);
          double alpha = sign < 0 ? a : 1.0;
          VectorXcd rhs = alpha * std::exp(-t * (lambda + 0.5 * m)) *
                          (exterior_matrix(rep, b).transpose() * sec.eval(g.mat));
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10 * (1 + rhs.cwiseAbs().maxCoeff()));
        }
      }
    }
  }
}

TEST_CASE("group action closed forms") {
  std::mt19937 rng(17);
  std::normal_distribution<double> gau(0.0, 1.0);
  int m = 2, p = 1;
  cplx lambda(0.2, 0.6);
  auto f = make_test_section(m, p, lambda, 1, 4);
  auto rep = make_exterior_rep(m, p);
  VectorXd X(m), Y(m);
  X << 0.4, -0.2;
  Y << -1.1, 0.8;

  // identity
  CHECK((act(f, MatrixXd::Identity(m + 2, m + 2)).at(X) - f.at(X)).cwiseAbs().maxCoeff() <
        1e-14);
  // nbar translation
  CHECK((act(f, nbar(Y)).at(X) - f.at(X - Y)).cwiseAbs().maxCoeff() < 1e-12);
  // dilation (p = 0 version for the clean scalar statement)
  auto f0 = make_test_section(m, 0, lambda, 1, 2);
  double t = 0.35;
  cplx want = std::exp((lambda + 1.0) * t) * f0.at(std::exp(t) * X)(0);
  CHECK(std::abs(act(f0, a_exp(m, t)).at(X)(0) - want) < 1e-12 * std::abs(want));
  // longest Weyl element
  VectorXcd lhs = act(f, wtilde0(m)).at(X);
  double r2 = X.squaredNorm();
  VectorXcd rhs = std::exp(-(lambda + 1.0) * std::log(r2)) *
                  (exterior_matrix(rep, psi(X)) * f.at(-X / r2));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11 * (1 + rhs.cwiseAbs().maxCoeff()));

  // representation property against the product, at sample points
  GroupElement g1 = random_group_element(m, rng, 0.3), g2 = random_group_element(m, rng, 0.3);
  auto ab = act(act(f, g1.mat), g2.mat);
  auto prod = act(f, g2.mat * g1.mat);
  for (int k = 0; k < 5; ++k) {
    VectorXd W(m);
    for (int i = 0; i < m; ++i) W(i) = gau(rng);
    CHECK((ab.at(W) - prod.at(W)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("pair_K: mass of the constant section and Cauchy-Schwarz") {
  // lambda on the unitary axis: |const|^2 integrates to 2^{-m} vol(S^m).
  int m = 2;
  auto c = make_test_section(m, 0, cplx(0.0, 0.37), 1, 0);
  double want = 0.25 * 4.0 * kPi;  // 2^{-2} vol(S^2)
  CHECK(std::abs(pair_K(c, c).real() - want) < 1e-10 * want);

  auto f = make_test_section(m, 1, cplx(0.0, 0.37), 1, 1);
  auto g = make_test_section(m, 1, cplx(0.0, 0.37), 1, 2);
  cplx fg = pair_K(f, g);
  CHECK(std::abs(fg) * std::abs(fg) <=
        pair_K(f, f).real() * pair_K(g, g).real() * (1 + 1e-12));
  CHECK(std::abs(pair_K(f, g) - std::conj(pair_K(g, f))) < 1e-10);
}

TEST_CASE("sampled sections and inner_K") {
  int m = 2;
  cplx lambda(0.0, 0.41);
  auto f = make_test_section(m, 1, lambda, 1, 3);
  Grid cg = make_compact_grid(m);
  auto sf = sample_section(f, Picture::compact, cg);
  CHECK(sf.samples.size() == cg.nodes.size());
  cplx n1 = inner_K(sf, sf);
  cplx n2 = pair_K(f, f);
  CHECK(std::abs(n1 - n2) < 1e-8 * std::abs(n2));

  // zero sections pair to zero
  SampledSection zero = sf;
  for (auto& v : zero.samples) v.setZero();
  CHECK(std::abs(inner_K(zero, sf)) == 0.0);

  Grid ng = make_noncompact_grid(m);
  auto snf = sample_section(f, Picture::noncompact, ng);
  cplx n3 = inner_K(snf, snf);
  CHECK(std::abs(n3 - n2) < 1e-7 * std::abs(n2));
}

TEST_CASE("compact grid mass and sphere chart") {
  Grid g2 = make_compact_grid(2);
  double mass = 0;
  for (double w : g2.weights) mass += w;
  CHECK(std::abs(mass - kPi) < 1e-10);  // 2^{-2} * 4 pi

  VectorXd zero2 = VectorXd::Zero(2);
  VectorXd np = sphere_point(zero2);
  CHECK(std::abs(np(0) - 1.0) < 1e-15);
  CHECK(np.tail(2).cwiseAbs().maxCoeff() < 1e-15);
  VectorXd X(2);
  X << 0.3, -1.2;
  CHECK((chart_point(sphere_point(X)) - X).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("section_fit reproduces band-limited sections") {
  int m = 2;
  auto f = make_test_section(m, 1, cplx(-0.3, 0.2), -1, 6);
  auto fit = resample_section(f, 6);
  CHECK(fit.residual < 1e-9);
  std::mt19937 rng(2);
  std::normal_distribution<double> gau(0.0, 1.0);
  for (int k = 0; k < 6; ++k) {
    VectorXd X(m);
    for (int i = 0; i < m; ++i) X(i) = 2.0 * gau(rng);
    VectorXcd a = f.at(X), b = fit.fun.at(X);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8 * (1 + a.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("change_picture round trip") {
  int m = 2;
  auto f = make_test_section(m, 1, cplx(0.15, -0.4), 1, 7);
  Grid ng = make_noncompact_grid(m);
  Grid cg = make_compact_grid(m);
  auto nc = sample_section(f, Picture::noncompact, ng);
  auto c = change_picture(nc, Picture::compact, cg);
  auto nc2 = change_picture(c, Picture::noncompact, ng);
  double emax = 0, scale = 0;
  for (std::size_t i = 0; i < nc.samples.size(); ++i) {
    emax = std::max(emax, (nc.samples[i] - nc2.samples[i]).cwiseAbs().maxCoeff());
    scale = std::max(scale, nc.samples[i].cwiseAbs().maxCoeff());
  }
  CHECK(emax < 1e-9 * scale);
}

TEST_CASE("reg_power_integral examples") {
  // Convergent regime agreement with direct quadrature: s = 1, smooth bump.
  auto bump = [](double t) {
    double u = t / 1.5;
    return std::abs(u) < 1.0 ? cplx(std::exp(-1.0 / (1.0 - u * u))) : cplx(0.0);
  };
  cplx reg = reg_power_integral(cplx(1.0, 0.0), 0, bump);
  cplx direct = 0.0;
  int N = 40000;
  for (int i = -N; i <= N; ++i) {
    double t = 2.0 * i / N;
    direct += std::abs(t) * bump(t) * (2.0 / N);
  }
  CHECK(std::abs(reg - direct) < 1e-6 * std::abs(direct));

  // parity: even g against the sign kernel gives zero
  auto gauss = [](double t) { return cplx(std::exp(-t * t)); };
  CHECK(std::abs(reg_power_integral(cplx(0.5, 0.0), 1, gauss)) < 1e-12);

  // Gaussian closed form: ∫ |t|^s e^{-t^2} dt = Gamma((s+1)/2)
  cplx s(-1.5, 0.0);
  cplx got = reg_power_integral(s, 0, gauss);
  cplx want = cgamma((s + 1.0) / 2.0);
  CHECK(std::abs(got - want) < 5e-9 * std::abs(want));

  CHECK_THROWS_AS(reg_power_integral(cplx(-1.0, 0.0), 0, gauss), std::domain_error);
  CHECK_THROWS_AS(reg_power_integral(cplx(-2.0, 0.0), 0, gauss), std::domain_error);
}
