#include "kwflow/fields.hpp"

#include <cmath>

#include "kwflow/green.hpp"

namespace kw {

FormField curvature(const FormField& A) {
  FormField F = ext_d(A);
  F += a_wedge_a(A);
  return F;
}

FormField cov_d(const FormField& A, const FormField& q) {
  FormField r = ext_d(q);
  r += lie_wedge(A, q);
  return r;
}

FormField cov_codiff(const FormField& A, const FormField& q) {
  FormField out = codiff(q);
  // Adjoint of the bracket part: <[A_nu, x_I], q_{I u nu}> summed with the
  // insertion sign, with ad(A)^T = -ad(A).
  const Domain& dom = A.dom;
  std::size_t nsites = dom.site_count();
  for (int oc = 0; oc < out.ncomp(); ++oc) {
    unsigned im = out.basis.masks[oc];
    for (int nu = 0; nu < dom.ndim(); ++nu) {
      if (im & (1u << nu)) continue;
      unsigned jm = im | (1u << nu);
      int ic = q.basis.comp_of[jm];
      double sgn = -insert_sign(nu, im);
      for (std::size_t s = 0; s < nsites; ++s)
        out.add_lie(s, oc, sgn * bracket(A.lie(s, nu), q.lie(s, ic)));
    }
  }
  return out;
}

std::vector<FormField> cov_grad(const FormField& A, const FormField& q) {
  const Domain& dom = A.dom;
  int nd = dom.ndim();
  std::vector<FormField> g;
  g.reserve(nd);
  std::size_t nsites = dom.site_count();
  for (int mu = 0; mu < nd; ++mu) {
    FormField gm = axis_deriv(q, mu, false);
    for (std::size_t s = 0; s < nsites; ++s) {
      LieVec am = A.lie(s, mu);
      for (int c = 0; c < q.ncomp(); ++c)
        gm.add_lie(s, c, bracket(am, q.lie(s, c)));
    }
    g.push_back(std::move(gm));
  }
  return g;
}

FormField cov_grad_adjoint(const FormField& A,
                           const std::vector<FormField>& b) {
  const Domain& dom = A.dom;
  int nd = dom.ndim();
  FormField out(dom, b[0].degree, b[0].kind);
  std::size_t nsites = dom.site_count();
  for (int mu = 0; mu < nd; ++mu) {
    FormField t = axis_deriv(b[mu], mu, true);
    out += t;
    for (std::size_t s = 0; s < nsites; ++s) {
      LieVec am = A.lie(s, mu);
      for (int c = 0; c < out.ncomp(); ++c)
        out.add_lie(s, c, -1.0 * bracket(am, b[mu].lie(s, c)));
    }
  }
  return out;
}

KwResiduals residuals_kw(const Configuration& c) {
  FormField w = curvature(c.A);
  w -= (c.r * c.r) * a_wedge_a(c.a);
  FormField da = cov_d(c.A, c.a);
  FormField wp = sd_project(w, +1);
  FormField wm = sd_project(w, -1);
  FormField dap = sd_project(da, +1);
  FormField dam = sd_project(da, -1);
  KwResiduals res{c.tau * wp - ((1.0 - c.tau) * c.r) * dap,
                  (1.0 - c.tau) * wm + (c.tau * c.r) * dam,
                  gauge_constraint(c)};
  return res;
}

AsdResiduals residuals_asd(const Configuration& c) {
  FormField w = curvature(c.A);
  w -= (c.r * c.r) * a_wedge_a(c.a);
  FormField da = cov_d(c.A, c.a);
  return AsdResiduals{sd_project(w, +1), c.r * sd_project(da, -1),
                      gauge_constraint(c)};
}

FormField bochner_residual(const Configuration& c) {
  FormField out = cov_grad_adjoint(c.A, cov_grad(c.A, c.a));
  std::size_t nsites = c.dom().site_count();
  int nd = c.dom().ndim();
  double r2 = c.r * c.r;
  for (std::size_t s = 0; s < nsites; ++s) {
    for (int beta = 0; beta < nd; ++beta) {
      LieVec acc{};
      for (int alpha = 0; alpha < nd; ++alpha)
        acc += double_ad(c.a.lie(s, alpha), c.a.lie(s, beta));
      out.add_lie(s, beta, r2 * acc);
    }
  }
  return out;
}

FormField cov_div_curvature(const Configuration& c) {
  FormField F = curvature(c.A);
  return hodge_star(cov_d(c.A, hodge_star(F)));
}

FormField cov_div_curvature_rhs(const Configuration& c) {
  std::vector<FormField> g = cov_grad(c.A, c.a);
  FormField out(c.dom(), 1, ValueKind::Lie);
  std::size_t nsites = c.dom().site_count();
  int nd = c.dom().ndim();
  double r2 = c.r * c.r;
  for (std::size_t s = 0; s < nsites; ++s)
    for (int beta = 0; beta < nd; ++beta) {
      LieVec acc{};
      for (int alpha = 0; alpha < nd; ++alpha)
        acc += bracket(c.a.lie(s, alpha), g[alpha].lie(s, beta));
      out.set_lie(s, beta, r2 * acc);
    }
  return out;
}

namespace {

inline void qmul(const double* a, const double* b, double* out) {
  out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
}

inline LieVec qrotate(const double* g, const LieVec& v) {
  double p[4] = {0.0, v[0], v[1], v[2]};
  double gc[4] = {g[0], -g[1], -g[2], -g[3]};
  double t[4], o[4];
  qmul(g, p, t);
  qmul(t, gc, o);
  return LieVec{{o[1], o[2], o[3]}};
}

}  // namespace

GaugeField gauge_compose(const GaugeField& g2, const GaugeField& g1) {
  GaugeField out(g2.dom);
  for (std::size_t s = 0; s < g2.dom.site_count(); ++s)
    qmul(g2.at(s), g1.at(s), out.at(s));
  return out;
}

GaugeField gauge_exp(const FormField& phi) {
  GaugeField g(phi.dom);
  for (std::size_t s = 0; s < phi.dom.site_count(); ++s) {
    LieVec v = phi.lie(s, 0);
    double t = norm(v);
    double* q = g.at(s);
    q[0] = std::cos(t);
    double f = t > 1e-300 ? std::sin(t) / t : 1.0;
    q[1] = f * v[0]; q[2] = f * v[1]; q[3] = f * v[2];
  }
  return g;
}

Configuration gauge_apply(const GaugeField& g, const Configuration& c) {
  const Domain& dom = c.dom();
  int nd = dom.ndim();
  std::size_t nsites = dom.site_count();
  Configuration out(dom, c.r, c.tau);
  // Quaternion field derivatives reuse the stencil machinery by viewing the
  // 4 quaternion lanes as a Lie 0-form plus a scalar lane.
  for (int mu = 0; mu < nd; ++mu) {
    // Derivative of the 4 quaternion lanes along mu (same stencils as the
    // form calculus).
    std::vector<double> dg(nsites * 4, 0.0);
    {
      int n = dom.sites[mu];
      double h = dom.spacing(mu);
      std::size_t stride = 1;
      for (int d = mu + 1; d < nd; ++d)
        stride *= static_cast<std::size_t>(dom.sites[d]);
      bool per = dom.periodic(mu);
      for (std::size_t s = 0; s < nsites; ++s) {
        int i = static_cast<int>((s / stride) % static_cast<std::size_t>(n));
        auto acc = [&](int col, double w) {
          const double* ip = g.q.data() + (s + (col - i) * stride) * 4;
          double* op = dg.data() + s * 4;
          for (int b = 0; b < 4; ++b) op[b] += w * ip[b];
        };
        if (per || (i > 0 && i < n - 1)) {
          int im = per ? (i + n - 1) % n : i - 1;
          int ip = per ? (i + 1) % n : i + 1;
          acc(im, -0.5 / h);
          acc(ip, 0.5 / h);
        } else if (i == 0) {
          acc(0, -1.5 / h); acc(1, 2.0 / h); acc(2, -0.5 / h);
        } else {
          acc(n - 1, 1.5 / h); acc(n - 2, -2.0 / h); acc(n - 3, 0.5 / h);
        }
      }
    }
    for (std::size_t s = 0; s < nsites; ++s) {
      const double* gs = g.at(s);
      double gc[4] = {gs[0], -gs[1], -gs[2], -gs[3]};
      double m[4];
      qmul(dg.data() + 4 * s, gc, m);  // (dg) g^-1, vector part is the shift
      LieVec shift{{m[1], m[2], m[3]}};
      out.A.set_lie(s, mu, qrotate(gs, c.A.lie(s, mu)) - shift);
      out.a.set_lie(s, mu, qrotate(gs, c.a.lie(s, mu)));
    }
  }
  return out;
}

CoulombResult coulomb_fix(const Configuration& c, double tol, int max_iter) {
  const Domain& dom = c.dom();
  double norm_in = grid_norm(c.A);
  CoulombResult res{GaugeField(dom), c, 0, 0.0, false};
  if (norm_in == 0.0) {
    res.converged = true;
    return res;
  }
  double lam0 = 0.0;
  for (int d = 0; d < dom.ndim(); ++d) {
    double h = dom.spacing(d);
    lam0 += 1.0 / (h * h);
  }
  double lam = 1.0 / lam0;

  // On periodic domains the flat Laplacian is inverted spectrally, which
  // makes the step near-Newton; the slab falls back to plain descent.
  bool precond = dom.kind != DomainKind::SlabT3;

  Configuration cur = c;
  FormField w = codiff(cur.A);  // negative gradient of 1/2 |A_g|^2
  double obj = 0.5 * grid_norm_sq(cur.A);
  FormField prev_w = w;
  double prev_lam = lam;
  bool have_prev = false;

  for (int it = 0; it < max_iter; ++it) {
    double rnorm = grid_norm(w);
    res.residual = rnorm / norm_in;
    res.iterations = it;
    if (rnorm <= tol * norm_in) {
      res.converged = true;
      break;
    }
    FormField dir = precond ? laplace_invert_zero_mean(w) : w;
    double slope = grid_inner(dir, w);  // > 0 for a descent direction
    if (precond) {
      lam = 1.0;
    } else if (have_prev) {
      // BB1 step from s = prev_lam * prev_w, y = prev_w - w.
      FormField y = prev_w - w;
      double sy = prev_lam * grid_inner(prev_w, y);
      double ss = prev_lam * prev_lam * grid_norm_sq(prev_w);
      lam = (sy > 1e-300) ? ss / sy : 1.0 / lam0;
      lam = std::min(lam, 1e4 / lam0);
    }
    // Backtracking on the objective.
    for (int bt = 0;; ++bt) {
      FormField phi = lam * dir;
      GaugeField gstep = gauge_exp(phi);
      Configuration trial = gauge_apply(gstep, cur);
      double tobj = 0.5 * grid_norm_sq(trial.A);
      if (tobj <= obj - 1e-4 * lam * slope || bt >= 40) {
        prev_w = w;
        prev_lam = lam;
        have_prev = true;
        cur = std::move(trial);
        obj = tobj;
        res.g = gauge_compose(gstep, res.g);
        break;
      }
      lam *= 0.5;
    }
    w = codiff(cur.A);
  }
  res.cfg = std::move(cur);
  return res;
}

}  // namespace kw
