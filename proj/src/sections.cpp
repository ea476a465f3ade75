#include "rankone/sections.hpp"

#include <cmath>
#include <numeric>

namespace rankone {

static cplx cpow(double t, cplx s) { return std::exp(s * std::log(t)); }

namespace {

struct FrameData {
  double eps = 1.0;
  double t = 0.0;
  VectorXd omega;
  MatrixXd frame;  // (m+1) x m
};

FrameData frame_at(const MatrixXd& g, int m) {
  FrameData fd;
  IwasawaFactors f = iwasawa_KAN(GroupElement{g, m});
  fd.t = f.t;
  fd.eps = f.kappa(0, 0) > 0 ? 1.0 : -1.0;
  MatrixXd u = f.kappa.block(1, 1, m + 1, m + 1) / fd.eps;
  fd.omega = u.col(0);
  fd.frame = u.rightCols(m);
  return fd;
}

cplx eval_monomial(const std::vector<int>& expo, const VectorXd& omega) {
  double v = 1.0;
  for (std::size_t i = 0; i < expo.size(); ++i)
    for (int k = 0; k < expo[i]; ++k) v *= omega(static_cast<int>(i));
  return v;
}

void monomials_rec(int nvars, int deg, int slot, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (slot == nvars) {
    out.push_back(cur);
    return;
  }
  int used = std::accumulate(cur.begin(), cur.begin() + slot, 0);
  for (int d = 0; d <= deg - used; ++d) {
    cur[slot] = d;
    monomials_rec(nvars, deg, slot + 1, cur, out);
  }
  cur[slot] = 0;
}

std::vector<std::vector<int>> monomials_up_to(int nvars, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  monomials_rec(nvars, deg, 0, cur, out);
  return out;
}

}  // namespace

SectionFun section_from_poly(const AmbientPoly& poly, cplx lambda, int sign) {
  const int m = poly.m, p = poly.p;
  const int delta = (p + (sign < 0 ? 1 : 0)) % 2;
  const auto big = make_exterior_rep(m + 1, p);
  const auto small = make_exterior_rep(m, p);
  const double rho = 0.5 * m;
  if (static_cast<int>(poly.comps.size()) != big.dim)
    throw std::invalid_argument("section_from_poly: component count mismatch");
  SectionFun out;
  out.par = SectionParams{m, p, lambda, sign};
  out.dim = small.dim;
  AmbientPoly data = poly;
  out.eval = [=](const MatrixXd& g) -> VectorXcd {
    FrameData fd = frame_at(g, m);
    MatrixXd minors = rectangular_minors(m + 1, m, p, fd.frame);
    VectorXcd F(big.dim);
    for (int J = 0; J < big.dim; ++J) {
      cplx acc = 0.0;
      for (const auto& mono : data.comps[J])
        acc += mono.second * eval_monomial(mono.first, fd.omega);
      F(J) = acc;
    }
    cplx scale = std::exp(-fd.t * (lambda + rho));
    if (delta == 1) scale *= fd.eps;
    return scale * (minors.transpose() * F);
  };
  return out;
}

SectionFun make_test_section(int m, int p, cplx lambda, int sign, unsigned seed) {
  AmbientPoly poly;
  poly.m = m;
  poly.p = p;
  int dimL = static_cast<int>(binom(m + 1, p));
  poly.comps.resize(dimL);
  if (seed == 0 && p == 0) {
    poly.comps[0].push_back({std::vector<int>(m + 1, 0), cplx(1.0, 0.0)});
    return section_from_poly(poly, lambda, sign);
  }
  std::mt19937 rng(seed * 2654435761u + 1000003u * m + 7919u * p +
                   (sign < 0 ? 101u : 0u));
  auto uni = [&rng]() { return (rng() >> 8) * (1.0 / 16777216.0); };
  for (int J = 0; J < dimL; ++J) {
    poly.comps[J].push_back(
        {std::vector<int>(m + 1, 0), cplx(2 * uni() - 1, 2 * uni() - 1)});
    for (int k = 0; k < 4; ++k) {
      int deg = 1 + static_cast<int>(rng() % 4u);
      std::vector<int> expo(m + 1, 0);
      for (int d = 0; d < deg; ++d) expo[rng() % (m + 1)] += 1;
      poly.comps[J].push_back({expo, cplx(2 * uni() - 1, 2 * uni() - 1)});
    }
  }
  return section_from_poly(poly, lambda, sign);
}

SectionFun act(const SectionFun& sec, const MatrixXd& g) {
  MatrixXd gi = lorentz_inverse(g);
  SectionFun out = sec;
  auto base = sec.eval;
  out.eval = [gi, base](const MatrixXd& h) { return base(gi * h); };
  return out;
}

SectionFun section_combine(cplx a, const SectionFun& f, cplx b, const SectionFun& g) {
  if (f.par.m != g.par.m || f.dim != g.dim ||
      std::abs(f.par.lambda - g.par.lambda) > 1e-12)
    throw std::invalid_argument("section_combine: incompatible sections");
  SectionFun out = f;
  auto fe = f.eval, ge = g.eval;
  out.eval = [=](const MatrixXd& h) -> VectorXcd { return a * fe(h) + b * ge(h); };
  return out;
}

SectionFun stabilize_section(const SectionFun& raw) {
  const int m = raw.par.m, p = raw.par.p;
  const cplx lambda = raw.par.lambda;
  const int sign = raw.par.sign;
  const double rho = 0.5 * m;
  auto rep = make_exterior_rep(m, p);
  MatrixXd w0 = wtilde0(m);
  auto base = raw.eval;
  SectionFun out = raw;
  out.eval = [=](const MatrixXd& g) -> VectorXcd {
    // Try both cells and keep the representative with the smaller chart
    // coordinate; transport the value back through the covariance.
    auto transported = [&](const MatrixXd& gg, bool weyl) -> std::pair<double, VectorXcd> {
      BruhatFactors f;
      try {
        f = decompose_nbarman(GroupElement{gg, m});
      } catch (const std::domain_error&) {
        return {1e300, VectorXcd()};
      }
      double size = f.nbar_param.norm();
      if (size > 1.6) return {size, VectorXcd()};
      MatrixXd pt = nbar(f.nbar_param);
      if (weyl) pt = w0 * pt;
      VectorXcd v = base(pt);
      cplx scale = std::exp(-f.t * (lambda + rho));
      if (sign < 0 && f.m_a < 0) scale = -scale;
      return {size, scale * (exterior_matrix(rep, f.m_b).transpose() * v)};
    };
    auto direct = transported(g, false);
    if (direct.first <= 1.0) return direct.second;
    auto flipped = transported(w0 * g, true);
    if (flipped.first <= direct.first) {
      if (flipped.second.size() > 0) return flipped.second;
    }
    if (direct.second.size() > 0) return direct.second;
    if (flipped.second.size() > 0) return flipped.second;
    return base(g);  // measure-zero fallback
  };
  return out;
}

MatrixXd k_rep(const VectorXd& omega) {
  int d = static_cast<int>(omega.size());
  MatrixXd u;
  if (omega(0) > 1.0 - 1e-12) {
    u = MatrixXd::Identity(d, d);
  } else {
    VectorXd v = -omega;
    v(0) += 1.0;
    v.normalize();
    u = MatrixXd::Identity(d, d) - 2.0 * (v * v.transpose());
  }
  MatrixXd k = MatrixXd::Identity(d + 1, d + 1);
  k.block(1, 1, d, d) = u;
  return k;
}

VectorXd sphere_point(const VectorXd& X) {
  int m = static_cast<int>(X.size());
  double s = X.squaredNorm();
  VectorXd w(m + 1);
  w(0) = (1.0 - s) / (1.0 + s);
  w.tail(m) = 2.0 * X / (1.0 + s);
  return w;
}

VectorXd chart_point(const VectorXd& omega, double tol) {
  int m = static_cast<int>(omega.size()) - 1;
  if (omega(0) < -1.0 + tol)
    throw std::domain_error("chart_point: point at infinity of the chart");
  return omega.tail(m) / (1.0 + omega(0));
}

cplx pair_K(const SectionFun& a, const SectionFun& b, bool conjugate_first,
            const PairOpts& opts) {
  if (a.par.m != b.par.m || a.dim != b.dim)
    throw std::invalid_argument("pair_K: incompatible sections");
  const int m = a.par.m;
  cplx w = (conjugate_first ? std::conj(a.par.lambda) : a.par.lambda) + b.par.lambda;
  int nr = std::max(6, static_cast<int>(std::lround(10 * opts.res)));
  Rule1D rad = gl_panel(0.0, 1.0, nr);
  SphereRule sph = sphere_rule(m, opts.res);
  MatrixXd w0 = wtilde0(m);
  std::vector<cplx> partial(rad.x.size());
  parallel_for(rad.x.size(), [&](std::size_t i) {
    double r = rad.x[i];
    double wr = rad.w[i].real() * std::pow(r, m - 1);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
      VectorXd X = r * sph.nodes[k];
      cplx ww = wr * sph.w[k] * cpow(1.0 + r * r, w);
      MatrixXd g1 = nbar(X);
      MatrixXd g2 = w0 * g1;
      VectorXcd va = a.eval(g1), vb = b.eval(g1);
      VectorXcd va2 = a.eval(g2), vb2 = b.eval(g2);
      if (conjugate_first)
        acc += ww * (va.dot(vb) + va2.dot(vb2));
      else
        acc += ww * ((va.transpose() * vb).value() + (va2.transpose() * vb2).value());
    }
    partial[i] = acc;
  });
  cplx acc = 0.0;
  for (cplx v : partial) acc += v;
  return acc;
}

double norm_K(const SectionFun& a, const PairOpts& opts) {
  return std::sqrt(std::max(0.0, pair_K(a, a, true, opts).real()));
}

Grid make_compact_grid(int m, double res) {
  Grid g;
  g.kind = "sphere_product";
  SphereRule sph = sphere_rule(m + 1, res);
  double scale = std::pow(0.5, m);
  g.nodes = sph.nodes;
  g.weights.reserve(sph.w.size());
  for (double w : sph.w) g.weights.push_back(scale * w);
  return g;
}

Grid make_noncompact_grid(int m, double res) {
  Grid g;
  g.kind = "euclidean_radial";
  int nr = std::max(6, static_cast<int>(std::lround(8 * res)));
  Rule1D rad = gl_panel(0.0, 1.0, nr);
  SphereRule sph = sphere_rule(m, res);
  for (std::size_t i = 0; i < rad.x.size(); ++i) {
    double r = rad.x[i];
    for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
      g.nodes.push_back(r * sph.nodes[k]);
      g.weights.push_back(rad.w[i].real() * std::pow(r, m - 1) * sph.w[k]);
      // inverted chart: X = omega / r with dX = r^{-m-1} dr domega
      g.nodes.push_back(sph.nodes[k] / r);
      g.weights.push_back(rad.w[i].real() * std::pow(r, -m - 1) * sph.w[k]);
    }
  }
  return g;
}

SampledSection sample_section(const SectionFun& f, Picture picture, const Grid& grid) {
  SampledSection out;
  out.picture = picture;
  out.par = f.par;
  out.grid = grid;
  out.samples.resize(grid.nodes.size());
  parallel_for(grid.nodes.size(), [&](std::size_t i) {
    if (picture == Picture::compact)
      out.samples[i] = f.eval(k_rep(grid.nodes[i]));
    else
      out.samples[i] = f.at(grid.nodes[i]);
  });
  return out;
}

cplx inner_K(const SampledSection& f, const SampledSection& g) {
  if (f.picture != g.picture || f.grid.kind != g.grid.kind ||
      f.grid.nodes.size() != g.grid.nodes.size() || f.par.m != g.par.m)
    throw std::invalid_argument("inner_K: grids or bundles do not match");
  if (std::abs(std::conj(f.par.lambda) + g.par.lambda) > 1e-9)
    throw std::invalid_argument("inner_K: parameters are not L2-dual");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    acc += f.grid.weights[i] * f.samples[i].dot(g.samples[i]);
  return acc;
}

FitResult section_fit(const SectionParams& par, const std::vector<MatrixXd>& points,
                      const std::vector<VectorXcd>& values, int deg) {
  const int m = par.m, p = par.p;
  const int delta = (p + (par.sign < 0 ? 1 : 0)) % 2;
  const auto big = make_exterior_rep(m + 1, p);
  const auto small = make_exterior_rep(m, p);
  const double rho = 0.5 * m;
  auto monos = monomials_up_to(m + 1, deg);
  const int nmon = static_cast<int>(monos.size());
  const int ncols = big.dim * nmon;
  const int nrows = static_cast<int>(points.size()) * small.dim;
  MatrixXcd A(nrows, ncols);
  VectorXcd rhs(nrows);
  for (std::size_t k = 0; k < points.size(); ++k) {
    FrameData fd = frame_at(points[k], m);
    MatrixXd minors = rectangular_minors(m + 1, m, p, fd.frame);
    cplx scale = std::exp(-fd.t * (par.lambda + rho));
    if (delta == 1) scale *= fd.eps;
    for (int I = 0; I < small.dim; ++I) {
      int row = static_cast<int>(k) * small.dim + I;
      rhs(row) = values[k](I);
      for (int J = 0; J < big.dim; ++J)
        for (int mu = 0; mu < nmon; ++mu)
          A(row, J * nmon + mu) =
              scale * minors(J, I) * eval_monomial(monos[mu], fd.omega);
    }
  }
  // minimum-norm least squares: the monomial basis is rank-deficient on the
  // sphere and basic solutions can blow up off the sample set
  Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(A);
  VectorXcd c = cod.solve(rhs);
  double resid = (A * c - rhs).norm() / std::max(1e-300, rhs.norm());
  AmbientPoly poly;
  poly.m = m;
  poly.p = p;
  poly.comps.resize(big.dim);
  double cmax = std::max(1e-300, c.cwiseAbs().maxCoeff());
  for (int J = 0; J < big.dim; ++J)
    for (int mu = 0; mu < nmon; ++mu)
      if (std::abs(c(J * nmon + mu)) > 1e-14 * cmax)
        poly.comps[J].push_back({monos[mu], c(J * nmon + mu)});
  return FitResult{section_from_poly(poly, par.lambda, par.sign), resid};
}

FitResult resample_section(const SectionFun& f, int deg, double res) {
  const int m = f.par.m;
  int nr = std::max(3, static_cast<int>(std::lround(4 * res)));
  Rule1D rad = gl_panel(0.05, 0.95, nr);
  SphereRule sph = sphere_rule(m, res);
  MatrixXd w0 = wtilde0(m);
  std::vector<MatrixXd> pts;
  for (std::size_t i = 0; i < rad.x.size(); ++i)
    for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
      VectorXd X = rad.x[i] * sph.nodes[k];
      pts.push_back(nbar(X));
      pts.push_back(w0 * nbar(X));
    }
  std::vector<VectorXcd> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = f.eval(pts[i]); });
  return section_fit(f.par, pts, vals, deg);
}

SampledSection change_picture(const SampledSection& s, Picture target, const Grid& grid,
                              int deg) {
  std::vector<MatrixXd> pts;
  pts.reserve(s.grid.nodes.size());
  for (const auto& node : s.grid.nodes)
    pts.push_back(s.picture == Picture::compact ? k_rep(node) : nbar(node));
  FitResult fit = section_fit(s.par, pts, s.samples, deg);
  return sample_section(fit.fun, target, grid);
}

cplx reg_power_integral(cplx s, int eps_sign, const std::function<cplx(double)>& g,
                        const RegPowerOpts& opts) {
  if (near_integer(s) && s.real() < -0.5)
    throw std::domain_error("reg_power_integral: pole of the continuation");
  auto B = [&](double t) { return g(t) + (eps_sign ? -1.0 : 1.0) * g(-t); };
  Rule1D head = power_head(s, -1, opts.eps, opts.ncoef, plain_invD(s, -1));
  cplx acc = 0.0;
  for (std::size_t i = 0; i < head.x.size(); ++i) acc += head.w[i] * B(head.x[i]);
  for (double a = opts.eps; a < opts.R * (1 - 1e-12); a *= 2) {
    Rule1D pan = gl_panel(a, std::min(2 * a, opts.R), opts.ngl);
    for (std::size_t i = 0; i < pan.x.size(); ++i)
      acc += pan.w[i] * cpow(pan.x[i], s) * B(pan.x[i]);
  }
  return acc;
}

}  // namespace rankone
