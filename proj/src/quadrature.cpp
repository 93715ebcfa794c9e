#include "kwflow/quadrature.hpp"

#include <cmath>

namespace kw {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

S3Rule::S3Rule(int n_psi, int n_theta, int n_phi) {
  std::vector<double> xp, wp, xt, wt;
  gauss_legendre(n_psi, xp, wp);
  gauss_legendre(n_theta, xt, wt);
  // x = (cos psi, sin psi cos th, sin psi sin th cos ph, sin psi sin th sin ph)
  // measure sin^2(psi) sin(th) dpsi dth dph, psi/th on [0,pi], ph uniform.
  for (int i = 0; i < n_psi; ++i) {
    double psi = 0.5 * M_PI * (xp[i] + 1.0);
    double wpsi = 0.5 * M_PI * wp[i] * std::sin(psi) * std::sin(psi);
    for (int j = 0; j < n_theta; ++j) {
      double th = 0.5 * M_PI * (xt[j] + 1.0);
      double wth = 0.5 * M_PI * wt[j] * std::sin(th);
      for (int k = 0; k < n_phi; ++k) {
        double ph = 2.0 * M_PI * k / n_phi;
        double wph = 2.0 * M_PI / n_phi;
        dirs.push_back(Point{std::cos(psi), std::sin(psi) * std::cos(th),
                             std::sin(psi) * std::sin(th) * std::cos(ph),
                             std::sin(psi) * std::sin(th) * std::sin(ph)});
        weights.push_back(wpsi * wth * wph);
      }
    }
  }
}

double sphere_integrate(const ScalarFn& f, const Point& center, double r,
                        const QuadratureRule& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.s3.dirs.size(); ++i) {
    Point x = center;
    for (int d = 0; d < 4; ++d) x[d] += r * q.s3.dirs[i][d];
    acc += q.s3.weights[i] * f(x);
  }
  return acc * r * r * r;
}

double ball_integrate(const ScalarFn& f, const Point& center, double r,
                      const QuadratureRule& q) {
  std::vector<double> xr, wr;
  gauss_legendre(q.n_r, xr, wr);
  double acc = 0.0;
  for (int i = 0; i < q.n_r; ++i) {
    double rho = 0.5 * r * (xr[i] + 1.0);
    double w = 0.5 * r * wr[i];
    acc += w * sphere_integrate(f, center, rho, q);
  }
  return acc;
}

double interpolate(const FormField& f, const Point& x, int comp, int lane) {
  const Domain& dom = f.dom;
  int nd = dom.ndim();
  int i0[4] = {0, 0, 0, 0};
  double fr[4] = {0, 0, 0, 0};
  for (int d = 0; d < nd; ++d) {
    double h = dom.spacing(d);
    double u = x[d] / h - 0.5;  // cell centers at (i + 1/2) h
    double fl = std::floor(u);
    i0[d] = static_cast<int>(fl);
    fr[d] = u - fl;
    if (!dom.periodic(d)) {
      if (i0[d] < 0) { i0[d] = 0; fr[d] = 0.0; }
      if (i0[d] > dom.sites[d] - 2) { i0[d] = dom.sites[d] - 2; fr[d] = 1.0; }
    }
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << nd); ++corner) {
    double w = 1.0;
    std::array<int, 4> ix{0, 0, 0, 0};
    for (int d = 0; d < nd; ++d) {
      int bit = (corner >> d) & 1;
      w *= bit ? fr[d] : 1.0 - fr[d];
      int i = i0[d] + bit;
      int n = dom.sites[d];
      i %= n;
      if (i < 0) i += n;
      ix[d] = i;
    }
    if (w == 0.0) continue;
    acc += w * f.at(dom.site_index(ix), comp)[lane];
  }
  return acc;
}

ScalarFn grid_scalar_sampler(const FormField& f) {
  return [&f](const Point& x) { return interpolate(f, x, 0, 0); };
}

}  // namespace kw
