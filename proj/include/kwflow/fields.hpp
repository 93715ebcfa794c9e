#pragma once

#include <vector>

#include "kwflow/calculus.hpp"
#include "kwflow/form.hpp"

namespace kw {

// A real connection 1-form A together with the extra Lie-valued 1-form a,
// the coupling scale r and the family parameter tau.
struct Configuration {
  FormField A;  // Lie 1-form
  FormField a;  // Lie 1-form
  double r = 1.0;
  double tau = 1.0;

  Configuration() = default;
  Configuration(const Domain& dom, double r_ = 1.0, double tau_ = 1.0)
      : A(dom, 1, ValueKind::Lie), a(dom, 1, ValueKind::Lie), r(r_),
        tau(tau_) {}

  const Domain& dom() const { return A.dom; }
};

// F = dA + [A_mu, A_nu] on components (i.e. dA + 1/2 [A ^ A]).
FormField curvature(const FormField& A);

// d_A q = dq + [A ^ q].
FormField cov_d(const FormField& A, const FormField& q);

// Exact adjoint of cov_d under grid_inner.
FormField cov_codiff(const FormField& A, const FormField& q);

// Full covariant derivative: one field per direction, every component of q
// differentiated as a scalar plus the fiber bracket.
std::vector<FormField> cov_grad(const FormField& A, const FormField& q);

// Adjoint of cov_grad: <cov_grad(q), b> = <q, cov_grad_adjoint(b)>.
FormField cov_grad_adjoint(const FormField& A,
                           const std::vector<FormField>& b);

inline double grad_norm_sq_site(const std::vector<FormField>& g,
                                std::size_t s) {
  double v = 0.0;
  for (const FormField& f : g) v += site_norm_sq(f, s);
  return v;
}

// Divergence-type gauge constraint d_A* a expressed as the 0-form
// cov_codiff(A, a); used both by the residual systems and the flow ledger.
inline FormField gauge_constraint(const Configuration& c) {
  return cov_codiff(c.A, c.a);
}

struct KwResiduals {
  FormField plus;   // tau (F - r^2 a^a)+ - (1-tau) r (d_A a)+
  FormField minus;  // (1-tau) (F - r^2 a^a)- + tau r (d_A a)-
  FormField gauge;  // cov_codiff(A, a)
};

KwResiduals residuals_kw(const Configuration& c);

struct AsdResiduals {
  FormField plus;   // (F - r^2 a^a)+
  FormField minus;  // r (d_A a)-
  FormField gauge;  // cov_codiff(A, a)
};

AsdResiduals residuals_asd(const Configuration& c);

// nabla_A^* nabla_A a + r^2 [a_alpha, [a, a_alpha]]  (flat metric, Ric = 0).
FormField bochner_residual(const Configuration& c);

// Left side *d_A*F_A (a Lie 1-form) and the companion right side
// r^2 [a_alpha, (nabla_A a)_alpha] for identity probing.
FormField cov_div_curvature(const Configuration& c);
FormField cov_div_curvature_rhs(const Configuration& c);

// Pointwise unit-quaternion gauge field (w,x,y,z per site).
struct GaugeField {
  Domain dom;
  std::vector<double> q;

  explicit GaugeField(const Domain& d)
      : dom(d), q(d.site_count() * 4, 0.0) {
    for (std::size_t s = 0; s < d.site_count(); ++s) q[4 * s] = 1.0;
  }

  double* at(std::size_t s) { return q.data() + 4 * s; }
  const double* at(std::size_t s) const { return q.data() + 4 * s; }
};

// g2 * g1 pointwise (apply g1 first).
GaugeField gauge_compose(const GaugeField& g2, const GaugeField& g1);

// exp of a Lie-valued 0-form, site by site.
GaugeField gauge_exp(const FormField& phi);

// A -> g A g^-1 - (dg) g^-1, a -> g a g^-1.
Configuration gauge_apply(const GaugeField& g, const Configuration& c);

struct CoulombResult {
  GaugeField g;
  Configuration cfg;
  int iterations = 0;
  double residual = 0.0;  // final |d^+ A| over the input |A|
  bool converged = false;
};

// Gradient descent on 1/2 |A_g|^2 over the gauge group with
// Barzilai-Borwein steps and backtracking. Stops when the divergence
// residual drops below tol times the input norm of A.
CoulombResult coulomb_fix(const Configuration& c, double tol = 1e-6,
                          int max_iter = 20000);

}  // namespace kw
