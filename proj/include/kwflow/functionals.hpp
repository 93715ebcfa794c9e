#pragma once

#include <complex>

#include "kwflow/fields.hpp"

namespace kw {

// tau-family phase (tau + i(1-tau))^2 / (tau^2 + (1-tau)^2); unit modulus.
inline std::complex<double> tau_phase(double tau) {
  std::complex<double> z(tau, 1.0 - tau);
  return z * z / std::norm(z);
}

// Complexified connection A + i r a.
FormField make_ahat(const Configuration& c);

// Complex curvature of A + i r a: (F_A - r^2 a^a) + i r d_A a.
struct ComplexCurvature {
  FormField w;   // F_A - r^2 a^a
  FormField v;   // r d_A a
};
ComplexCurvature complex_curvature(const Configuration& c);

// Chern-Simons value of a complexified connection on a 3-torus:
// 1/2 Int tr(ahat ^ d ahat + 2/3 ahat ^ ahat ^ ahat), tr = -2 inner.
std::complex<double> chern_simons(const FormField& ahat);

inline double weighted_real(std::complex<double> cs, double tau) {
  return (tau_phase(tau) * cs).real();
}

// Exact discrete gradient of weighted_real(chern_simons(A + i afrak)) with
// respect to (A, afrak = r a) under grid_inner.
struct CsGradient {
  FormField gA;
  FormField gafrak;
};
CsGradient cs_gradient(const Configuration& c);

// 1/(32 pi^2) Int <F ^ F> of the real connection (4d domain).
double pontrjagin_integral(const FormField& A);

struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
};

inline IdentityReport make_report(double lhs, double rhs) {
  double gap = std::abs(lhs - rhs);
  double den = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return IdentityReport{lhs, rhs, gap, gap / den};
}

// Int |F - r^2 a^a|^2 + r^2 Int |d_A a|^2  vs  the topological right side.
IdentityReport energy_identity_quadratic(const Configuration& c);

// The tau-weighted split: Int of the two residual square densities vs
// (1 - 2 tau) * 32 pi^2 * p1.
IdentityReport energy_identity_weighted(const Configuration& c);

// Max-over-sites gap of the pointwise curvature-square decomposition
// re(phase * <F_Ahat ^ F_Ahat>) =
//   |tau w+ - (1-tau) v+|^2 + |(1-tau) w- + tau v-|^2
// - |(1-tau) w+ + tau v+|^2 - |tau w- - (1-tau) v-|^2,   w,v as above.
double curvature_split_gap(const Configuration& c);

// Global pairing form of the Bochner identity (exact discretely):
// <a, bochner_residual(a)> = Int |nabla_A a|^2 + 2 r^2 Int |a^a|^2.
IdentityReport bochner_pairing(const Configuration& c);

// Representation formula through the Green's function of d^+d + 1 at site p:
// 1/2 |a|^2(p) + Int G_p (|nabla_A a|^2 + 2 r^2 |a^a|^2) = 1/2 Int G_p |a|^2.
IdentityReport green_identity(const Configuration& c, std::size_t p);

// First-order model operator near a rank-one locus: x = (p, q) valued in the
// sigma0-orthogonal subalgebra, mass m, distinguished covector e = dx^axis.
struct ModelBlocks {
  FormField top2, top0;   // ((dq - m e^[s0,p])+, *(d*q + m e^[s0,*p]))
  FormField bot2, bot0;   // ((dp + m e^[s0,q])-, *(d*p - m e^[s0,*q]))
};
ModelBlocks model_apply(const FormField& p, const FormField& q,
                        const LieVec& sigma0, double m, int e_axis);

// Int |Lx|^2 (self-dual blocks counted twice, matching the full double-sum
// norm on 2-forms) vs Int (|grad x|^2 + 4 m^2 |x|^2).
IdentityReport model_weitzenbock(const FormField& p, const FormField& q,
                                 const LieVec& sigma0, double m, int e_axis);

}  // namespace kw
