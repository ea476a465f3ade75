#include "rankone/operators.hpp"

#include <algorithm>
#include <cmath>

namespace rankone {

static cplx cpow(double t, cplx s) { return std::exp(s * std::log(t)); }

namespace {

// Radial rule of the symmetry breaking kernel: in polar coordinates the
// kernel contributes r^{lambda+rho-nu-rho'-1}; the matching Gamma factor of
// the A~ normalization stabilizes the head moments.
Rule1D sbo_radial_rule(int n, cplx lambda, cplx nu, int alpha, double scale) {
  double rho = 0.5 * n, rp = 0.5 * (n - 1);
  int eps = alpha < 0 ? 1 : 0;
  cplx s0 = lambda + rho - nu - rp - 1.0;
  cplx x2 = (lambda + rho - nu - rp + static_cast<double>(eps)) / 2.0;
  cplx decay = 2.0 * (lambda + rho);
  RadialOpts ro;
  ro.scale = scale;
  return radial_scheme(s0, eps, decay, eps, ro, rgamma(x2), gamma_invD(x2));
}

EquatorRule sbo_angular_rule(int n, cplx lambda, cplx nu, int alpha, double scale) {
  double rho = 0.5 * n, rp = 0.5 * (n - 1);
  int eps = alpha < 0 ? 1 : 0;
  cplx beta = lambda - rho + nu + rp;
  cplx x1 = (lambda + rho + nu - rp + static_cast<double>(eps)) / 2.0;
  EquatorOpts eo;
  eo.scale = scale;
  return equator_rule(n, beta, eps, eo, rgamma(x1), gamma_invD(x1));
}

// Level-dependent scalar multiplying the holomorphically normalized family.
cplx sbo_level_factor(SboLevel level, int n, int p, int q, cplx lambda, cplx nu,
                      int alpha) {
  double rho = 0.5 * n, rp = 0.5 * (n - 1);
  int eps = alpha < 0 ? 1 : 0;
  cplx x1 = (lambda + rho + nu - rp + static_cast<double>(eps)) / 2.0;
  cplx x2 = (lambda + rho - nu - rp + static_cast<double>(eps)) / 2.0;
  switch (level) {
    case SboLevel::tildeA:
    case SboLevel::quo:
      return 1.0;
    case SboLevel::raw_A: {
      if (is_gamma_pole(x1) || is_gamma_pole(x2))
        throw std::domain_error("sbo_apply: raw family at a normalization pole");
      return cgamma(x1) * cgamma(x2);
    }
    case SboLevel::tildetildeA:
      if (is_gamma_pole(x2))
        throw std::domain_error("sbo_apply: renormalized family needs the limit value");
      return cgamma(x2);
    case SboLevel::C: {
      auto cc = c_C_factor(n, p, q, nu, lambda);
      if (cc.pole) throw std::domain_error("sbo_apply: c_C pole at this nu");
      return cc.value;
    }
    case SboLevel::tildetriple_quo:
      if (is_gamma_pole(x1))
        throw std::domain_error(
            "sbo_apply: triple renormalization at a pole; evaluate the limit "
            "at an offset lambda");
      return cgamma(x1);
  }
  return 1.0;
}

}  // namespace

SectionFun knapp_stein(const SectionFun& sec, const OperatorOpts& opts) {
  const int m = sec.par.m, p = sec.par.p;
  const cplx lambda = sec.par.lambda;
  const double rho = 0.5 * m;
  SectionFun out;
  out.par = SectionParams{m, p, -lambda, sec.par.sign};
  out.dim = sec.dim;

  bool middle = (2 * p == m);
  cplx prefactor = rgamma(middle ? lambda + 1.0 : lambda);
  RadialOpts ro;
  ro.scale = opts.scale;
  Rule1D rad;
  if (middle) {
    rad = radial_scheme(2.0 * lambda - 1.0, 0, 2.0 * (lambda + rho), 0, ro, prefactor);
  } else {
    rad = radial_scheme(2.0 * lambda - 1.0, 0, 2.0 * (lambda + rho), 0, ro, prefactor,
                        gamma_invD(lambda));
  }
  SphereRule sph = sphere_rule(m, opts.scale);
  auto rep = make_exterior_rep(m, p);
  std::vector<MatrixXd> sig(sph.nodes.size());
  for (std::size_t k = 0; k < sph.nodes.size(); ++k)
    sig[k] = exterior_matrix(rep, psi(sph.nodes[k]));

  auto base = sec.eval;
  out.eval = [=](const MatrixXd& h) -> VectorXcd {
    VectorXcd acc = VectorXcd::Zero(rep.dim);
    for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
      VectorXcd inner = VectorXcd::Zero(rep.dim);
      for (std::size_t i = 0; i < rad.x.size(); ++i)
        inner += rad.w[i] * base(h * nbar(rad.x[i] * sph.nodes[k]));
      acc += sph.w[k] * (sig[k] * inner);
    }
    return acc;
  };
  return stabilize_section(out);
}

cplx pairing_lambda(const SectionFun& f, const SectionFun& g, const OperatorOpts& opts) {
  const int m = f.par.m, p = f.par.p;
  if (std::abs(f.par.lambda.imag()) > 1e-9 || std::abs(g.par.lambda - f.par.lambda) > 1e-9)
    throw std::domain_error("pairing_lambda: sections must share a real lambda");
  double sign;
  if (2 * p < m)
    sign = 1.0;
  else if (2 * p > m)
    sign = -1.0;
  else if (std::abs(f.par.lambda) < 1e-9)
    sign = 1.0;
  else
    throw std::domain_error("pairing_lambda: p = m/2 admits only lambda = 0");
  PairOpts po;
  po.res = opts.scale;
  return sign * pair_K(f, knapp_stein(g, opts), true, po);
}

SectionFun sbo_apply(const SBODescriptor& desc, cplx nu, const SectionFun& sec,
                     const OperatorOpts& opts) {
  const int n = sec.par.m, p = sec.par.p, q = desc.q;
  const cplx lambda = sec.par.lambda;
  const int alpha = desc.kernel_sign;
  SectionFun out;
  out.par = SectionParams{n - 1, std::max(q, 0), nu, sec.par.sign * alpha};
  out.dim = std::max<long>(1, binom(n - 1, q));
  bool zero_by_convention = (p == 0 && q == p - 1) || (p == n && q == p) ||
                            q < 0 || q > n - 1 || (q != p - 1 && q != p);
  if (zero_by_convention) {
    int dim = out.dim;
    out.eval = [dim](const MatrixXd&) { return VectorXcd::Zero(dim); };
    return out;
  }

  cplx level = sbo_level_factor(desc.level, n, p, q, lambda, nu, alpha);
  Rule1D rad = sbo_radial_rule(n, lambda, nu, alpha, opts.scale);
  EquatorRule ang = sbo_angular_rule(n, lambda, nu, alpha, opts.scale);
  auto rep = make_exterior_rep(n, p);
  auto repq = make_exterior_rep(n - 1, q);
  // projected kernel matrices pr_q sigma_p(psi(omega)) per angular node
  std::vector<MatrixXcd> proj(ang.nodes.size());
  for (std::size_t k = 0; k < ang.nodes.size(); ++k) {
    MatrixXd s = exterior_matrix(rep, psi(ang.nodes[k]));
    MatrixXcd pr(repq.dim, rep.dim);
    for (int c = 0; c < rep.dim; ++c)
      pr.col(c) = project_delta(n, p, q, VectorXcd(s.col(c).cast<cplx>()));
    proj[k] = pr;
  }
  auto base = sec.eval;
  out.eval = [=](const MatrixXd& hprime) -> VectorXcd {
    MatrixXd h = embed_up(hprime);
    VectorXcd acc = VectorXcd::Zero(repq.dim);
    for (std::size_t k = 0; k < ang.nodes.size(); ++k) {
      VectorXcd inner = VectorXcd::Zero(rep.dim);
      for (std::size_t i = 0; i < rad.x.size(); ++i)
        inner += rad.w[i] * base(h * nbar(rad.x[i] * ang.nodes[k]));
      acc += ang.w[k] * (proj[k] * inner);
    }
    return level * acc;
  };
  return stabilize_section(out);
}

SboSweep::SboSweep(const SectionFun& sec, const std::vector<MatrixXd>& targets,
                   const std::vector<int>& qs, const OperatorOpts& opts)
    : n_(sec.par.m), p_(sec.par.p), lambda_(sec.par.lambda), opts_(opts), qs_(qs) {
  // Node skeletons are nu-independent; tabulate the projected kernel times
  // section values once, then values() contracts with rule weights.
  Rule1D rad = sbo_radial_rule(n_, lambda_, cplx(0.3, 0.4), 1, opts.scale);
  EquatorRule ang = sbo_angular_rule(n_, lambda_, cplx(0.3, 0.4), 1, opts.scale);
  rad_nodes_ = rad.x;
  for (const auto& v : ang.nodes) ang_nodes_.push_back(v);
  auto rep = make_exterior_rep(n_, p_);
  std::vector<std::vector<MatrixXcd>> proj(qs.size());
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    auto repq = make_exterior_rep(n_ - 1, qs[qi]);
    proj[qi].resize(ang_nodes_.size());
    for (std::size_t k = 0; k < ang_nodes_.size(); ++k) {
      MatrixXd s = exterior_matrix(rep, psi(ang_nodes_[k]));
      MatrixXcd pr(repq.dim, rep.dim);
      for (int c = 0; c < rep.dim; ++c)
        pr.col(c) = project_delta(n_, p_, qs[qi], VectorXcd(s.col(c).cast<cplx>()));
      proj[qi][k] = pr;
    }
  }
  tab_.resize(targets.size());
  parallel_for(targets.size(), [&](std::size_t t) {
    MatrixXd h = embed_up(targets[t]);
    // raw section values per (angular, radial) node
    std::vector<std::vector<VectorXcd>> vals(ang_nodes_.size());
    for (std::size_t k = 0; k < ang_nodes_.size(); ++k) {
      vals[k].resize(rad_nodes_.size());
      for (std::size_t i = 0; i < rad_nodes_.size(); ++i)
        vals[k][i] = sec.eval(h * nbar(rad_nodes_[i] * ang_nodes_[k]));
    }
    tab_[t].resize(qs_.size());
    for (std::size_t qi = 0; qi < qs_.size(); ++qi) {
      int dimq = static_cast<int>(binom(n_ - 1, qs_[qi]));
      tab_[t][qi].assign(dimq, MatrixXcd(ang_nodes_.size(), rad_nodes_.size()));
      for (std::size_t k = 0; k < ang_nodes_.size(); ++k)
        for (std::size_t i = 0; i < rad_nodes_.size(); ++i) {
          VectorXcd pv = proj[qi][k] * vals[k][i];
          for (int c = 0; c < dimq; ++c) tab_[t][qi][c](k, i) = pv(c);
        }
    }
  });
}

std::vector<VectorXcd> SboSweep::values(int q, int alpha, cplx nu) const {
  std::size_t qi = 0;
  while (qi < qs_.size() && qs_[qi] != q) ++qi;
  if (qi == qs_.size()) throw std::invalid_argument("SboSweep::values: q not tabulated");
  Rule1D rad = sbo_radial_rule(n_, lambda_, nu, alpha, opts_.scale);
  EquatorRule ang = sbo_angular_rule(n_, lambda_, nu, alpha, opts_.scale);
  VectorXcd wr = Eigen::Map<const VectorXcd>(rad.w.data(), rad.w.size());
  VectorXcd wa = Eigen::Map<const VectorXcd>(ang.w.data(), ang.w.size());
  int dimq = static_cast<int>(binom(n_ - 1, q));
  std::vector<VectorXcd> out(tab_.size(), VectorXcd(dimq));
  for (std::size_t t = 0; t < tab_.size(); ++t)
    for (int c = 0; c < dimq; ++c)
      out[t](c) = wa.transpose() * (tab_[t][qi][c] * wr);
  return out;
}

std::vector<std::vector<VectorXcd>> sbo_batch(
    const SectionFun& sec, const std::vector<MatrixXd>& targets,
    const std::vector<std::tuple<int, int, cplx>>& requests,
    const OperatorOpts& opts) {
  const int n = sec.par.m, p = sec.par.p;
  const cplx lambda = sec.par.lambda;
  // node skeletons (nu- and alpha-independent)
  Rule1D rad0 = sbo_radial_rule(n, lambda, cplx(0.3, 0.4), 1, opts.scale);
  EquatorRule ang0 = sbo_angular_rule(n, lambda, cplx(0.3, 0.4), 1, opts.scale);
  auto rep = make_exterior_rep(n, p);
  std::vector<int> qs;
  for (const auto& r : requests) {
    int q = std::get<0>(r);
    if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
  }
  std::vector<std::vector<MatrixXcd>> proj(qs.size());
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    auto repq = make_exterior_rep(n - 1, qs[qi]);
    proj[qi].resize(ang0.nodes.size());
    for (std::size_t k = 0; k < ang0.nodes.size(); ++k) {
      MatrixXd s = exterior_matrix(rep, psi(ang0.nodes[k]));
      MatrixXcd pr(repq.dim, rep.dim);
      for (int c = 0; c < rep.dim; ++c)
        pr.col(c) = project_delta(n, p, qs[qi], VectorXcd(s.col(c).cast<cplx>()));
      proj[qi][k] = pr;
    }
  }
  // weight vectors per request
  std::vector<VectorXcd> wrads(requests.size()), wangs(requests.size());
  for (std::size_t r = 0; r < requests.size(); ++r) {
    auto [q, alpha, nu] = requests[r];
    Rule1D rad = sbo_radial_rule(n, lambda, nu, alpha, opts.scale);
    EquatorRule ang = sbo_angular_rule(n, lambda, nu, alpha, opts.scale);
    wrads[r] = Eigen::Map<const VectorXcd>(rad.w.data(), rad.w.size());
    wangs[r] = Eigen::Map<const VectorXcd>(ang.w.data(), ang.w.size());
  }
  std::vector<std::vector<VectorXcd>> out(requests.size());
  for (auto& v : out) v.resize(targets.size());
  parallel_for(targets.size(), [&](std::size_t t) {
    MatrixXd h = embed_up(targets[t]);
    std::vector<std::vector<VectorXcd>> vals(ang0.nodes.size());
    for (std::size_t k = 0; k < ang0.nodes.size(); ++k) {
      vals[k].resize(rad0.x.size());
      for (std::size_t i = 0; i < rad0.x.size(); ++i)
        vals[k][i] = sec.eval(h * nbar(rad0.x[i] * ang0.nodes[k]));
    }
    for (std::size_t r = 0; r < requests.size(); ++r) {
      int q = std::get<0>(requests[r]);
      std::size_t qi = 0;
      while (qs[qi] != q) ++qi;
      int dimq = static_cast<int>(binom(n - 1, q));
      VectorXcd acc = VectorXcd::Zero(dimq);
      for (std::size_t k = 0; k < ang0.nodes.size(); ++k) {
        VectorXcd inner = VectorXcd::Zero(rep.dim);
        for (std::size_t i = 0; i < rad0.x.size(); ++i)
          inner += wrads[r](i) * vals[k][i];
        acc += wangs[r](k) * (proj[qi][k] * inner);
      }
      out[r][t] = acc;
    }
  });
  return out;
}

GKFunction phi_restrict(const SectionFun& sec, PhiSplit split, bool fill_samples) {
  const int n = sec.par.m;
  GKFunction F;
  F.n = n;
  F.p = sec.par.p;
  F.lambda = sec.par.lambda;
  F.sign = sec.par.sign;
  F.split = split;
  F.dim = sec.dim;
  VectorXd en = VectorXd::Zero(n);
  en(n - 1) = 1.0;
  MatrixXd A = nbar(en);
  MatrixXd B = wtilde0(n) * nbar(en);
  double s = sec.par.sign;
  auto base = sec.eval;
  if (split == PhiSplit::full) {
    F.eval = [=](const MatrixXd& g) { return base(embed_up(g) * A); };
  } else {
    double pm = split == PhiSplit::plus ? 1.0 : -1.0;
    F.eval = [=](const MatrixXd& g) -> VectorXcd {
      MatrixXd e = embed_up(g);
      return 0.5 * (base(e * A) + pm * s * base(e * B));
    };
  }
  if (fill_samples) {
    // (X', r, omega) rows over a modest horospherical grid.
    F.grid.kind = "gk_iwasawa";
    Rule1D rr = gl_panel(-3.0, 3.0, 24);
    Grid xg = make_noncompact_grid(n - 1, 0.5);
    for (int omega : {1, -1})
      for (std::size_t i = 0; i < rr.x.size(); ++i)
        for (std::size_t j = 0; j < xg.nodes.size(); ++j) {
          VectorXd row(n + 1);
          row.head(n - 1) = xg.nodes[j];
          row(n - 1) = rr.x[i];
          row(n) = omega;
          F.grid.nodes.push_back(row);
          F.grid.weights.push_back(rr.w[i].real() * xg.weights[j] *
                                   std::exp((n - 1) * rr.x[i]));
        }
    F.samples.resize(F.grid.nodes.size());
    for (std::size_t i = 0; i < F.grid.nodes.size(); ++i) {
      VectorXd row = F.grid.nodes[i];
      VectorXd Xp = row.head(n - 1);
      MatrixXd g = nbar(Xp) * a_exp(n - 1, row(n - 1)) *
                   xi_elem(n - 1, static_cast<int>(row(n)));
      F.samples[i] = F.eval(g);
    }
  }
  return F;
}

namespace {

struct HoroRule {
  // Quadrature for integrals over Nbar' x A in the order g = e^{rH} nbar_V,
  // for which the Haar measure is plainly dV dr. The section features sit at
  // r ~ ±log|(V,1)|, so the r-window is widened per V-node by the shift.
  std::vector<VectorXd> vnodes;
  std::vector<cplx> vweights;
  double rate_plus = 1.0, rate_minus = 1.0;
  int ngl = 10;
  double scale = 1.0;

  template <typename F>
  void integrate(F&& per_node) const {
    for (std::size_t j = 0; j < vnodes.size(); ++j) {
      double shift = 0.5 * std::log(1.0 + vnodes[j].squaredNorm());
      double Rp = std::min(60.0, 38.0 / std::max(rate_plus, 0.2)) + shift;
      double Rm = std::min(60.0, 38.0 / std::max(rate_minus, 0.2)) + shift;
      for (double a = -Rm; a < Rp - 1e-9; a += 2.0) {
        Rule1D pan = gl_panel(a, std::min(a + 2.0, Rp), ngl);
        for (std::size_t i = 0; i < pan.x.size(); ++i)
          per_node(vnodes[j], pan.x[i], vweights[j] * pan.w[i].real());
      }
    }
  }
};

// V-rule over R^{n-1} with a power-fit tail of complex exponent ctail.
HoroRule horo_rule(int n, cplx ctail, double rate_plus, double rate_minus,
                   double scale) {
  HoroRule out;
  out.rate_plus = rate_plus;
  out.rate_minus = rate_minus;
  out.scale = scale;
  out.ngl = std::max(8, static_cast<int>(std::lround(10 * scale)));
  int m = n - 1;
  int nr = std::max(6, static_cast<int>(std::lround(10 * scale)));
  SphereRule sph = sphere_rule(m, scale);
  double Rsplit = 2.0;
  for (const Rule1D& pan :
       {gl_panel(0.0, 0.5 * Rsplit, nr), gl_panel(0.5 * Rsplit, Rsplit, nr)}) {
    for (std::size_t i = 0; i < pan.x.size(); ++i) {
      double r = pan.x[i];
      for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
        out.vnodes.push_back(r * sph.nodes[k]);
        out.vweights.push_back(pan.w[i].real() * std::pow(r, m - 1) * sph.w[k]);
      }
    }
  }
  // tail: int_R^inf t^{m-1} t^{-ctail} h(1/t) dt
  cplx st = ctail - static_cast<double>(m) - 1.0;
  Rule1D tail = power_head(st, -1, 1.0 / Rsplit, std::max(6, (int)std::lround(10 * scale)),
                           plain_invD(st, -1));
  for (std::size_t i = 0; i < tail.x.size(); ++i) {
    double u = tail.x[i];
    for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
      out.vnodes.push_back(sph.nodes[k] / u);
      out.vweights.push_back(tail.w[i] * cpow(u, -ctail) * sph.w[k]);
    }
  }
  return out;
}

}  // namespace

double gk_norm_sq(const GKFunction& F, const OperatorOpts& opts) {
  int n = F.n;
  double relam = F.lambda.real();
  if (relam <= -0.5)
    throw std::domain_error("gk_norm_sq: requires Re lambda > -1/2");
  double rate = 2.0 * (relam + 0.5 * n);
  HoroRule rule = horo_rule(n, cplx(rate, 0.0), rate, rate, opts.scale);
  std::vector<double> partial(rule.vnodes.size(), 0.0);
  std::vector<std::tuple<VectorXd, double, cplx>> nodes;
  rule.integrate([&](const VectorXd& V, double r, cplx w) {
    nodes.emplace_back(V, r, w);
  });
  std::vector<double> acc(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& [V, r, w] = nodes[i];
    double s = 0.0;
    MatrixXd base = a_exp(n - 1, r) * nbar(V);
    for (int omega : {1, -1})
      s += F.eval(base * xi_elem(n - 1, omega)).squaredNorm();
    acc[i] = w.real() * s;
  });
  double total = 0.0;
  for (double v : acc) total += v;
  (void)partial;
  return total;
}

double orbit_norm_sq_chart(const SectionFun& sec, const OperatorOpts& opts) {
  int n = sec.par.m;
  double relam = sec.par.lambda.real();
  RadialOpts ro;
  ro.scale = opts.scale;
  Rule1D rad = radial_scheme(cplx(2.0 * relam + n - 1.0, 0.0), 0,
                             cplx(4.0 * (relam + 0.5 * n), 0.0), 0, ro, 1.0);
  EquatorOpts eo;
  eo.scale = opts.scale;
  EquatorRule ang = equator_rule(n, cplx(2.0 * relam, 0.0), 0, eo, 1.0);
  std::vector<double> partial(ang.nodes.size(), 0.0);
  parallel_for(ang.nodes.size(), [&](std::size_t k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rad.x.size(); ++i) {
      VectorXcd v = sec.at(rad.x[i] * ang.nodes[k]);
      acc += (rad.w[i] * ang.w[k]).real() * v.squaredNorm();
    }
    partial[k] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

VectorXcd fourier_gk_full(const GKFunction& F, const MatrixXd& kprime, cplx nu,
                          const OperatorOpts& opts) {
  const int n = F.n, p = F.p;
  double rho = 0.5 * n, rp = 0.5 * (n - 1);
  cplx lambda = F.lambda;
  // The group integral is pulled to the dense chart of the open orbit after
  // translating the target to the identity: with g(X) = nbar_{X'} e^{rH}
  // Xi_omega, r = -log|X_n|, omega = sgn X_n, the Haar measure is
  // |X_n|^{-n} dX and H(g(X)^{-1}) = log|X_n| exactly, so the kernel
  // contributes the pure power |X_n|^{-(nu+rho')} and the remaining factor
  // is smooth on each side of the equator. The radial exponent matches the
  // breaking kernels; the equator exponent is lambda - rho - nu - rho'.
  cplx beta_eq = lambda - rho - nu - rp;
  cplx s0 = lambda + rho - nu - rp - 1.0;
  RadialOpts ro;
  ro.scale = opts.scale;
  Rule1D rad = radial_scheme(s0, -1, 2.0 * (lambda + rho), -1, ro, 1.0);
  EquatorOpts eo;
  eo.scale = opts.scale;
  EquatorRule ang = equator_rule(n, beta_eq, 0, eo, 1.0, nullptr, false);
  bool chi = F.split == PhiSplit::minus;
  auto rep = make_exterior_rep(n, p);
  MatrixXd w = w_flip(n);
  std::vector<VectorXcd> partial(ang.nodes.size(), VectorXcd::Zero(rep.dim));
  parallel_for(ang.nodes.size(), [&](std::size_t k) {
    VectorXcd acc = VectorXcd::Zero(rep.dim);
    for (std::size_t i = 0; i < rad.x.size(); ++i) {
      VectorXd X = rad.x[i] * ang.nodes[k];
      double xn = X(n - 1);
      if (std::abs(xn) < 1e-300) continue;
      double r = -std::log(std::abs(xn));
      int omega = xn > 0 ? 1 : -1;
      MatrixXd g = nbar(X.head(n - 1)) * a_exp(n - 1, r) * xi_elem(n - 1, omega);
      IwasawaFactors iw = iwasawa_KAN(GroupElement{lorentz_inverse(g), n - 1});
      MatrixXd u = iw.kappa.block(1, 1, n, n);
      MatrixXd arg = w * u.transpose() * w.transpose();
      VectorXcd val = exterior_matrix(rep, arg).cast<cplx>() * F.eval(kprime * g);
      // strip the rule's powers; the Poisson factor |X_n|^{-(nu+rho')} and
      // the measure |X_n|^{-n} combine with it to |X_n|^{-beta_eq} exactly
      cplx strip = cpow(std::abs(xn), -static_cast<double>(n) - (nu + rp) - beta_eq);
      if (chi && omega < 0) strip = -strip;
      acc += (rad.w[i] * ang.w[k]) * (strip * val);
    }
    partial[k] = acc;
  });
  VectorXcd total = VectorXcd::Zero(rep.dim);
  for (const auto& v : partial) total += v;
  return total;
}

SectionFun fourier_gk(const GKFunction& F, int q, cplx nu, const OperatorOpts& opts) {
  const int n = F.n, p = F.p;
  if (!((q == p - 1 || q == p) && q >= 0 && q <= n - 1))
    throw std::domain_error("fourier_gk: q must be p-1 or p within [0, n-1]");
  SectionFun out;
  out.par = SectionParams{n - 1, q, nu, 0};
  out.dim = static_cast<int>(binom(n - 1, q));
  GKFunction Fc = F;
  out.eval = [=](const MatrixXd& gprime) -> VectorXcd {
    return project_delta(n, p, q, fourier_gk_full(Fc, gprime, nu, opts));
  };
  return stabilize_section(out);
}

MatrixXcd spherical_fn(int n, int p, cplx nu, const MatrixXd& g, const OperatorOpts& opts) {
  double rp = 0.5 * (n - 1);
  auto rep = make_exterior_rep(n, p);
  MatrixXcd acc = MatrixXcd::Zero(rep.dim, rep.dim);
  // K' = O(1) x O(n): average over the four components, probability Haar.
  std::vector<std::pair<MatrixXd, double>> kelts;
  if (n == 2) {
    int N = std::max(16, static_cast<int>(std::lround(64 * opts.scale)));
    for (int j = 0; j < N; ++j) {
      double th = 2.0 * kPi * j / N;
      MatrixXd R(2, 2);
      R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      kelts.push_back({R, 1.0 / N});
    }
  } else if (n == 3) {
    // Euler product rule on SO(3), Haar = sin(beta) dalpha dbeta dgamma / 8 pi^2
    int Na = std::max(8, static_cast<int>(std::lround(16 * opts.scale)));
    int Nb = std::max(8, static_cast<int>(std::lround(32 * opts.scale)));
    std::vector<double> bx, bw;
    gauss_legendre(Nb, bx, bw);
    auto rotz = [](double a) {
      MatrixXd R = MatrixXd::Identity(3, 3);
      R(0, 0) = std::cos(a);
      R(0, 1) = -std::sin(a);
      R(1, 0) = std::sin(a);
      R(1, 1) = std::cos(a);
      return R;
    };
    auto roty = [](double b) {
      MatrixXd R = MatrixXd::Identity(3, 3);
      R(0, 0) = std::cos(b);
      R(0, 2) = std::sin(b);
      R(2, 0) = -std::sin(b);
      R(2, 2) = std::cos(b);
      return R;
    };
    for (int ia = 0; ia < Na; ++ia)
      for (int ib = 0; ib < Nb; ++ib)
        for (int ic = 0; ic < Na; ++ic) {
          double a = 2.0 * kPi * ia / Na, c = 2.0 * kPi * ic / Na;
          double beta = std::acos(bx[ib]);
          double wgt = bw[ib] / 2.0 / (Na * Na);
          kelts.push_back({rotz(a) * roty(beta) * rotz(c), wgt});
        }
  } else {
    throw std::domain_error("spherical_fn: implemented for n = 2, 3");
  }
  MatrixXd refl = MatrixXd::Identity(n, n);
  refl(n - 1, n - 1) = -1.0;
  for (const auto& [R, wgt] : kelts) {
    for (int eps : {1, -1}) {
      for (int flip : {0, 1}) {
        MatrixXd un = flip ? MatrixXd(R * refl) : R;
        MatrixXd k = MatrixXd::Identity(n + 1, n + 1);
        k(0, 0) = eps;
        k.block(1, 1, n, n) = un;
        IwasawaFactors iw = iwasawa_KAN(GroupElement{g * k, n - 1});
        MatrixXd arg = iw.kappa.block(1, 1, n, n) * un.transpose();
        acc += (0.25 * wgt) * std::exp((nu - rp) * iw.t) *
               exterior_matrix(rep, arg).cast<cplx>();
      }
    }
  }
  return acc;
}

cplx quotient_pairing(int q, cplx nu, const SectionFun& f, const SectionFun& g,
                      const OperatorOpts& opts) {
  const int m = f.par.m;  // ambient rank of the subgroup side: m = n-1
  if (f.par.p != q || g.par.p != q)
    throw std::invalid_argument("quotient_pairing: sections must have degree q");
  if (std::abs(nu.imag()) > 1e-9)
    throw std::domain_error("quotient_pairing: nu must be real");
  PairOpts po;
  po.res = opts.scale;
  if (2 * q == m) {
    if (std::abs(nu) > 1e-9)
      throw std::domain_error("quotient_pairing: split degree requires nu = 0");
    // Pair against the projection to the +-eigenspace of the normalized
    // intertwiner: <f, (T' + c) g> / (2c) with c = pi^q / q!.
    double c = std::pow(kPi, q) / std::tgamma(q + 1.0);
    SectionFun Tg = knapp_stein(g, opts);
    return (pair_K(f, Tg, true, po) + c * pair_K(f, g, true, po)) / (2.0 * c);
  }
  double sign = 2 * q < m ? 1.0 : -1.0;
  return sign * pair_K(f, knapp_stein(g, opts), true, po);
}

}  // namespace rankone
