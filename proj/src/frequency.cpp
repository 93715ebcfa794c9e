#include "kwflow/frequency.hpp"

#include <cmath>
#include <memory>

namespace kw {

double smoothstep_cutoff(double t) {
  if (t <= 0.25) return 1.0;
  if (t >= 0.75) return 0.0;
  double u = (t - 0.25) * 2.0;
  return 1.0 - u * u * (3.0 - 2.0 * u);
}

namespace {

// Shared state of a grid-backed sampler.
struct GridDensities {
  Domain dom;
  FormField a;                  // Lie 1-form
  std::vector<FormField> grad;  // cov_grad(A, a)
  FormField F;                  // curvature
  FormField asq, energy, wsq;   // scalar densities
  double r_cfg = 1.0;
  Point base;

  Point offset(const Point& x) const {
    Point d{0, 0, 0, 0};
    for (int k = 0; k < dom.ndim(); ++k) {
      double dd = x[k] - base[k];
      if (dom.periodic(k)) {
        double L = dom.extent[k];
        dd -= L * std::round(dd / L);
      }
      d[k] = dd;
    }
    return d;
  }
};

LieVec interp_lie(const FormField& f, const Point& x, int comp) {
  return LieVec{{interpolate(f, x, comp, 0), interpolate(f, x, comp, 1),
                 interpolate(f, x, comp, 2)}};
}

}  // namespace

DensitySampler make_density_sampler(const Configuration& c,
                                    const Point& base) {
  auto g = std::make_shared<GridDensities>();
  g->dom = c.dom();
  g->a = c.a;
  g->grad = cov_grad(c.A, c.a);
  g->F = curvature(c.A);
  g->asq = density_norm_sq(c.a);
  g->wsq = density_norm_sq(a_wedge_a(c.a));
  g->energy = density_norm_sq(g->grad[0]);
  for (int mu = 1; mu < c.dom().ndim(); ++mu)
    g->energy += density_norm_sq(g->grad[mu]);
  g->energy += (2.0 * c.r * c.r) * g->wsq;
  g->r_cfg = c.r;
  g->base = base;

  int nd = c.dom().ndim();
  auto radial = [g, nd](const Point& x) {
    Point d = g->offset(x);
    double nrm = 0.0;
    for (int k = 0; k < nd; ++k) nrm += d[k] * d[k];
    nrm = std::sqrt(std::max(nrm, 1e-300));
    for (int k = 0; k < nd; ++k) d[k] /= nrm;
    return d;
  };

  DensitySampler s;
  s.base = base;
  s.r_cfg = c.r;
  s.a_sq = [g](const Point& x) { return interpolate(g->asq, x, 0, 0); };
  s.energy = [g](const Point& x) { return interpolate(g->energy, x, 0, 0); };
  s.wedge_sq = [g](const Point& x) { return interpolate(g->wsq, x, 0, 0); };
  s.rad_sq = [g, radial, nd](const Point& x) {
    Point n = radial(x);
    double acc = 0.0;
    for (int comp = 0; comp < nd; ++comp) {
      LieVec v{};
      for (int mu = 0; mu < nd; ++mu)
        v += n[mu] * interp_lie(g->grad[mu], x, comp);
      acc += norm_sq(v);
    }
    return acc;
  };
  s.a_dot_rad = [g, radial, nd](const Point& x) {
    Point n = radial(x);
    double acc = 0.0;
    for (int comp = 0; comp < nd; ++comp) {
      LieVec v{};
      for (int mu = 0; mu < nd; ++mu)
        v += n[mu] * interp_lie(g->grad[mu], x, comp);
      acc += inner(interp_lie(g->a, x, comp), v);
    }
    return acc;
  };
  s.curv_bdry = [g, radial, nd](const Point& x) {
    Point n = radial(x);
    // E_nu = sum_mu n_mu F_{mu nu}; F stored on mu<nu components.
    double esq = 0.0, fsq = 0.0;
    for (int nu = 0; nu < nd; ++nu) {
      LieVec e{};
      for (int mu = 0; mu < nd; ++mu) {
        if (mu == nu) continue;
        int lo = std::min(mu, nu), hi = std::max(mu, nu);
        int comp = g->F.basis.comp_of[(1u << lo) | (1u << hi)];
        double sgn = (mu < nu) ? 1.0 : -1.0;
        e += (sgn * n[mu]) * interp_lie(g->F, x, comp);
      }
      esq += norm_sq(e);
    }
    for (int comp = 0; comp < g->F.ncomp(); ++comp)
      fsq += norm_sq(interp_lie(g->F, x, comp));
    return 2.0 * esq - fsq;
  };
  return s;
}

namespace {

FrequencyPoint eval_point(const ScalarFn& a_sq, const ScalarFn& energy,
                          const Point& base, double r,
                          const QuadratureRule& q) {
  FrequencyPoint p;
  p.r = r;
  p.h = sphere_integrate(a_sq, base, r, q);
  p.vartheta = 0.0;  // flat domains: no metric correction
  p.K = std::sqrt(std::exp(-2.0 * p.vartheta) * p.h / (r * r * r));
  double en = ball_integrate(energy, base, r, q);
  double k2r2 = r * r * p.K * p.K;
  p.N = k2r2 > 0.0 ? en / k2r2 : 0.0;
  return p;
}

}  // namespace

FrequencyProfile profile(const DensitySampler& d,
                         const std::vector<double>& radii,
                         const QuadratureRule& q) {
  FrequencyProfile p;
  for (double r : radii)
    p.pts.push_back(eval_point(d.a_sq, d.energy, d.base, r, q));
  return p;
}

double ode_defect(const FrequencyProfile& p) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < p.pts.size(); ++i) {
    const auto& lo = p.pts[i - 1];
    const auto& hi = p.pts[i + 1];
    const auto& c = p.pts[i];
    double dk = (hi.K - lo.K) / (hi.r - lo.r);
    double want = c.N * c.K / c.r;
    double scale = std::max(c.K / c.r, 1e-300);
    worst = std::max(worst, std::abs(dk - want) / scale);
  }
  return worst;
}

double dn_formula(const DensitySampler& d, double r, const QuadratureRule& q) {
  FrequencyPoint p = eval_point(d.a_sq, d.energy, d.base, r, q);
  double nr = p.N / r;
  ScalarFn defect = [&](const Point& x) {
    return d.rad_sq(x) - 2.0 * nr * d.a_dot_rad(x) +
           nr * nr * d.a_sq(x);
  };
  double k2r2 = r * r * p.K * p.K;
  double rhs = 2.0 / k2r2 * sphere_integrate(defect, d.base, r, q);
  rhs += d.r_cfg * d.r_cfg / k2r2 *
         sphere_integrate(d.wedge_sq, d.base, r, q);
  rhs += 1.0 / (k2r2 * d.r_cfg * d.r_cfg) *
         sphere_integrate(d.curv_bdry, d.base, r, q);
  return rhs;
}

double dn_direct(const DensitySampler& d, double r, double dr,
                 const QuadratureRule& q) {
  FrequencyPoint lo = eval_point(d.a_sq, d.energy, d.base, r - dr, q);
  FrequencyPoint hi = eval_point(d.a_sq, d.energy, d.base, r + dr, q);
  return (hi.N - lo.N) / (2.0 * dr);
}

std::vector<std::vector<FormField>> stress_tensor(const Configuration& c) {
  const Domain& dom = c.dom();
  int nd = dom.ndim();
  std::size_t n = dom.site_count();
  std::vector<FormField> g = cov_grad(c.A, c.a);
  FormField F = curvature(c.A);
  FormField wsq = density_norm_sq(a_wedge_a(c.a));
  FormField fsq = density_norm_sq(F);
  double r2 = c.r * c.r;

  auto f_comp = [&](std::size_t s, int mu, int nu) -> LieVec {
    if (mu == nu) return LieVec{};
    int lo = std::min(mu, nu), hi = std::max(mu, nu);
    LieVec v = F.lie(s, F.basis.comp_of[(1u << lo) | (1u << hi)]);
    if (mu > nu) v = -v;
    return v;
  };

  std::vector<std::vector<FormField>> T(
      nd, std::vector<FormField>(nd, FormField(dom, 0, ValueKind::Real)));
  for (std::size_t s = 0; s < n; ++s) {
    double gsq = grad_norm_sq_site(g, s);
    double tr = gsq + r2 * (*wsq.at(s, 0)) + (*fsq.at(s, 0)) / r2;
    for (int al = 0; al < nd; ++al)
      for (int be = 0; be < nd; ++be) {
        double t = 0.0;
        for (int nu = 0; nu < nd; ++nu) {
          t += inner(g[al].lie(s, nu), g[be].lie(s, nu));
          t += inner(f_comp(s, al, nu), f_comp(s, be, nu)) / r2;
        }
        if (al == be) t -= 0.5 * tr;
        *T[al][be].at(s, 0) = t;
      }
  }
  return T;
}

double stress_divergence_norm(const Configuration& c) {
  auto T = stress_tensor(c);
  int nd = c.dom().ndim();
  double acc = 0.0;
  for (int be = 0; be < nd; ++be) {
    FormField div(c.dom(), 0, ValueKind::Real);
    for (int al = 0; al < nd; ++al) div += axis_deriv(T[al][be], al, false);
    acc += grid_norm_sq(div);
  }
  return std::sqrt(acc);
}

namespace {

// Largest rho in (0, r_max] with mass(rho) <= threshold, for monotone mass.
double largest_radius(const std::function<double(double)>& mass,
                      double threshold, double r_max) {
  if (mass(r_max) <= threshold) return r_max;
  double lo = 0.0, hi = r_max;
  for (int it = 0; it < 50; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mass(mid) <= threshold)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

ScaleDetectors scale_detectors(const DensitySampler& d, const ScalarFn& f_sq,
                               const AnalysisParams& par, double r_max,
                               const QuadratureRule& q) {
  ScaleDetectors out;
  double r4 = std::pow(d.r_cfg, 4);
  auto wedge_mass = [&](double rho) {
    return r4 * ball_integrate(d.wedge_sq, d.base, rho, q);
  };
  auto f_mass = [&](double rho) {
    return ball_integrate(f_sq, d.base, rho, q);
  };
  double c2 = 1.0 / (par.c * par.c);
  out.r_wedge = largest_radius(wedge_mass, c2, r_max);
  out.r_curv = largest_radius(f_mass, c2, r_max);
  out.r_diamond = largest_radius(wedge_mass, c2 * c2, r_max);
  // r K(r) r_cfg is nondecreasing; find where it crosses 1/z_U.
  auto rk = [&](double rho) {
    FrequencyPoint p = eval_point(d.a_sq, d.energy, d.base, rho, q);
    return rho * p.K * d.r_cfg;
  };
  out.r_star = largest_radius(rk, 1.0 / par.z_U(), r_max);
  return out;
}

FrequencyProfile limit_profile(const ScalarFn& nu_sq, const ScalarFn& grad_sq,
                               const Point& base,
                               const std::vector<double>& radii,
                               const QuadratureRule& q) {
  FrequencyProfile p;
  for (double r : radii)
    p.pts.push_back(eval_point(nu_sq, grad_sq, base, r, q));
  return p;
}

}  // namespace kw
