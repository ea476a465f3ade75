#include "rankone/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "rankone/gamma.hpp"

namespace rankone {

static cplx cpow(double t, cplx s) { return std::exp(s * std::log(t)); }

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) {
      x = it->second.first;
      w = it->second.second;
      return;
    }
  }
  // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
  MatrixXd T = MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    T(k - 1, k) = b;
    T(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(T);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[n] = {x, w};
}

Rule1D gl_panel(double a, double b, int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (a + b) + 0.5 * (b - a) * x[i];
    r.w[i] = 0.5 * (b - a) * w[i];
  }
  return r;
}

std::function<cplx(int)> plain_invD(cplx s, int parity, double cut) {
  return [=](int m) -> cplx {
    double k = parity < 0 ? m : parity + 2 * m;
    cplx D = s + k + 1.0;
    if (std::abs(D) < cut) return 0.0;
    return 1.0 / D;
  };
}

std::function<cplx(int)> gamma_invD(cplx x) {
  return [=](int m) { return 0.5 * inv_pochhammer_gamma(x, m); };
}

Rule1D power_head(cplx s, int parity, double eps, int ncoef,
                  const std::function<cplx(int)>& invD,
                  const std::function<double(double)>& corr) {
  int N = ncoef + 2;
  Rule1D rule;
  rule.x.resize(N);
  MatrixXd A(N, ncoef);
  for (int i = 0; i < N; ++i) {
    double xi = 0.5 * (1.0 + std::cos((2.0 * i + 1.0) * kPi / (2.0 * N)));
    double t = parity < 0 ? eps * xi : eps * std::sqrt(xi);
    rule.x[i] = t;
    double base = parity < 0 ? (t / eps) : (t / eps) * (t / eps);
    double v = 1.0;
    for (int m = 0; m < ncoef; ++m) {
      A(i, m) = v;
      v *= base;
    }
  }
  MatrixXd pinv = A.completeOrthogonalDecomposition().pseudoInverse();
  VectorXcd mw(ncoef);
  // Moments of the scaled basis (t/eps)^{k_m} against t^s on [0, eps]:
  // eps^{s + par + 1} / (s + k_m + 1), with par = parity for the enforced
  // t^parity factor (0 when the full series is fitted).
  double par = parity < 0 ? 0.0 : parity;
  for (int m = 0; m < ncoef; ++m) {
    cplx iD = invD(m);
    if (iD == cplx(0.0, 0.0)) rule.dropped_moment = true;
    mw(m) = cpow(eps, s + par + 1.0) * iD;
  }
  rule.w.resize(N);
  for (int i = 0; i < N; ++i) {
    cplx wi = 0.0;
    for (int m = 0; m < ncoef; ++m) wi += mw(m) * pinv(m, i);
    if (parity == 1) wi /= rule.x[i];
    if (corr) wi *= corr(rule.x[i]);
    rule.w[i] = wi;
  }
  return rule;
}

Rule1D radial_scheme(cplx s0, int parity, cplx decay, int tail_parity,
                     const RadialOpts& opts, cplx prefactor,
                     const std::function<cplx(int)>& head_invD,
                     const std::function<cplx(int)>& tail_invD) {
  // The monomial fits degrade above ~13 coefficients; extra resolution comes
  // from shrinking the head panels (the dyadic ladder fills the gap).
  int ncoef = std::min(13, std::max(4, static_cast<int>(std::lround(opts.ncoef * opts.scale))));
  int ngl = std::max(6, static_cast<int>(std::lround(opts.ngl * opts.scale)));
  double shrink = opts.scale > 1.0 ? std::pow(2.0, -std::floor(opts.scale)) : 1.0;
  Rule1D out;
  auto append = [&out](const Rule1D& r) {
    out.x.insert(out.x.end(), r.x.begin(), r.x.end());
    out.w.insert(out.w.end(), r.w.begin(), r.w.end());
    out.dropped_moment = out.dropped_moment || r.dropped_moment;
  };

  std::function<cplx(int)> hid = head_invD;
  if (!hid) {
    auto plain = plain_invD(s0, parity);
    hid = [=](int m) { return prefactor * plain(m); };
  }
  double eps_eff = opts.eps * shrink;
  append(power_head(s0, parity, eps_eff, ncoef, hid));

  for (double a = eps_eff; a < opts.R * (1 - 1e-12); a *= 2) {
    double b = std::min(2 * a, opts.R);
    Rule1D p = gl_panel(a, b, ngl);
    for (std::size_t i = 0; i < p.x.size(); ++i) p.w[i] *= prefactor * cpow(p.x[i], s0);
    append(p);
  }

  // extend the dyadic ladder when the tail head was shrunk
  for (double a = opts.R; a < opts.R / shrink * (1 - 1e-12); a *= 2) {
    double b = std::min(2 * a, opts.R / shrink);
    Rule1D p = gl_panel(a, b, ngl);
    for (std::size_t i = 0; i < p.x.size(); ++i) p.w[i] *= prefactor * cpow(p.x[i], s0);
    append(p);
  }

  // Tail: r = 1/u, integrand u^{s_t} h(u) with h(u) = u^{-decay} g(1/u).
  cplx s_t = -s0 - 2.0 + decay;
  std::function<cplx(int)> tid = tail_invD;
  if (!tid) {
    auto plain = plain_invD(s_t, tail_parity);
    tid = [=](int m) { return prefactor * plain(m); };
  }
  Rule1D tail = power_head(s_t, tail_parity, shrink / opts.R, ncoef, tid);
  for (std::size_t i = 0; i < tail.x.size(); ++i) {
    double u = tail.x[i];
    tail.w[i] *= cpow(u, -decay);
    tail.x[i] = 1.0 / u;
  }
  append(tail);
  return out;
}

SphereRule sphere_rule(int m, double res) {
  SphereRule out;
  if (m < 1) throw std::domain_error("sphere_rule: m >= 1 required");
  if (m == 1) {
    VectorXd plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    out.nodes = {plus, minus};
    out.w = {1.0, 1.0};
    return out;
  }
  if (m == 2) {
    int N = std::max(8, static_cast<int>(std::lround(24 * res)));
    for (int j = 0; j < N; ++j) {
      double th = 2.0 * kPi * j / N;
      VectorXd v(2);
      v << std::cos(th), std::sin(th);
      out.nodes.push_back(v);
      out.w.push_back(2.0 * kPi / N);
    }
    return out;
  }
  // Recursive product: omega = (u, sqrt(1-u^2) * omega'), measure
  // (1-u^2)^{(m-3)/2} du domega'. For m = 3 the polar rule in u = cos th is
  // exact on polynomials.
  SphereRule inner = sphere_rule(m - 1, res);
  int Nth = std::max(6, static_cast<int>(std::lround(12 * res)));
  std::vector<double> gx, gw;
  gauss_legendre(Nth, gx, gw);
  for (int i = 0; i < Nth; ++i) {
    double u, s, wth;
    if (m == 3) {
      u = gx[i];
      s = std::sqrt(1.0 - u * u);
      wth = gw[i];
    } else {
      // (1-u^2)^{(m-3)/2} has endpoint branch points for even m; the
      // theta-form keeps the integrand smooth.
      double th = 0.5 * kPi * (gx[i] + 1.0);
      u = std::cos(th);
      s = std::sin(th);
      wth = 0.5 * kPi * gw[i] * std::pow(s, m - 2);
    }
    for (std::size_t k = 0; k < inner.nodes.size(); ++k) {
      VectorXd v(m);
      v(0) = u;
      v.tail(m - 1) = s * inner.nodes[k];
      out.nodes.push_back(v);
      out.w.push_back(wth * inner.w[k]);
    }
  }
  return out;
}

EquatorRule equator_rule(int m, cplx beta, int eps_sign, const EquatorOpts& opts,
                         cplx prefactor, const std::function<cplx(int)>& invD,
                         bool enforce_parity) {
  if (m != 2 && m != 3)
    throw std::domain_error("equator_rule: implemented for S^1 and S^2");
  int par = enforce_parity ? (eps_sign ? 1 : 0) : -1;
  int ncoef = std::min(13, std::max(4, static_cast<int>(std::lround(opts.ncoef * opts.scale))));
  int ngl = std::max(6, static_cast<int>(std::lround(opts.ngl * opts.scale)));
  double theta0 = opts.theta0 * (opts.scale > 1.0 ? std::pow(2.0, -std::floor(opts.scale)) : 1.0);
  std::function<cplx(int)> id = invD;
  if (!id) {
    auto plain = plain_invD(beta, par);
    id = [=](int m_) { return prefactor * plain(m_); };
  }

  EquatorRule out;
  // 1D latitude rule for ∫_0^{pi/2} |sin t|^beta * corr(t) * y(t) dt where
  // y has parity `par` in t. |sin t|^beta = t^beta (sin t / t)^beta with the
  // sinc power folded into the weights.
  auto make_lat = [&](const std::function<double(double)>& smooth_corr) {
    Rule1D lat;
    Rule1D head = power_head(beta, par, theta0, ncoef, id);
    for (std::size_t i = 0; i < head.x.size(); ++i) {
      double t = head.x[i];
      head.w[i] *= std::exp(beta * std::log(std::sin(t) / t)) * smooth_corr(t);
    }
    lat = head;
    for (double a = theta0; a < 0.5 * kPi - 1e-12; a *= 2) {
      Rule1D p = gl_panel(a, std::min(2 * a, 0.5 * kPi), ngl);
      for (std::size_t i = 0; i < p.x.size(); ++i) {
        double t = p.x[i];
        p.w[i] *= prefactor * std::exp(beta * std::log(std::sin(t))) * smooth_corr(t);
      }
      lat.x.insert(lat.x.end(), p.x.begin(), p.x.end());
      lat.w.insert(lat.w.end(), p.w.begin(), p.w.end());
    }
    lat.dropped_moment = head.dropped_moment;
    return lat;
  };

  double sgn = eps_sign ? -1.0 : 1.0;
  if (m == 2) {
    Rule1D lat = make_lat([](double) { return 1.0; });
    out.dropped_moment = lat.dropped_moment;
    for (std::size_t i = 0; i < lat.x.size(); ++i) {
      double t = lat.x[i], c = std::cos(t), s = std::sin(t);
      const double xs[4] = {c, -c, -c, c};
      const double ys[4] = {s, s, -s, -s};
      for (int q = 0; q < 4; ++q) {
        VectorXd v(2);
        v << xs[q], ys[q];
        out.nodes.push_back(v);
        out.w.push_back(lat.w[i] * (q < 2 ? 1.0 : sgn));
      }
    }
    return out;
  }
  // m == 3: omega = (cos t * u(a), sin t), measure cos t dt da.
  Rule1D lat = make_lat([](double t) { return std::cos(t); });
  out.dropped_moment = lat.dropped_moment;
  int Naz = std::max(8, static_cast<int>(std::lround(opts.nazim * opts.scale)));
  for (int j = 0; j < Naz; ++j) {
    double a = 2.0 * kPi * j / Naz;
    double ca = std::cos(a), sa = std::sin(a);
    for (std::size_t i = 0; i < lat.x.size(); ++i) {
      double t = lat.x[i], c = std::cos(t), s = std::sin(t);
      for (int q = 0; q < 2; ++q) {
        VectorXd v(3);
        v << c * ca, c * sa, (q == 0 ? s : -s);
        out.nodes.push_back(v);
        out.w.push_back(lat.w[i] * (2.0 * kPi / Naz) * (q == 0 ? 1.0 : sgn));
      }
    }
  }
  return out;
}

cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double r, int n) {
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * kPi * k / n;
    cplx dz = r * std::exp(cplx(0.0, th));
    acc += f(center + dz) * dz;
  }
  return acc / static_cast<double>(n);
}

}  // namespace rankone
