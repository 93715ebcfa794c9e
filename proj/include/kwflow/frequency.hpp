#pragma once

#include <functional>
#include <vector>

#include "kwflow/fields.hpp"
#include "kwflow/quadrature.hpp"

namespace kw {

// Knobs for the monotonicity / concentration analysis.
struct AnalysisParams {
  double c = 200.0;        // > 100
  double E = 1.0;          // energy bound, >= 1
  double kappa_U = 1.0;    // gauge-fixing constant
  double mu = 0.25;        // in (0, 1/4]
  double z_U() const { return 100.0 * kappa_U; }
};

// C^1 cutoff: 1 on (-inf, 1/4], 0 on [3/4, inf), cubic smoothstep between.
double smoothstep_cutoff(double t);

// Pointwise densities of a configuration about a base point, evaluated at
// physical points by quadrature. Grid configurations interpolate
// multilinearly; closed-form models fill these directly.
struct DensitySampler {
  ScalarFn a_sq;       // |a|^2
  ScalarFn energy;     // |nabla_A a|^2 + 2 r_cfg^2 |a ^ a|^2
  ScalarFn wedge_sq;   // |a ^ a|^2
  ScalarFn rad_sq;     // |nabla_{A,rad} a|^2   (rad = unit vector from base)
  ScalarFn a_dot_rad;  // <a, nabla_{A,rad} a>
  ScalarFn curv_bdry;  // 2|E_A|^2 - |F_A|^2 with E the radial contraction
  Point base{0, 0, 0, 0};
  double r_cfg = 1.0;
};

DensitySampler make_density_sampler(const Configuration& c,
                                    const Point& base);

struct FrequencyPoint {
  double r = 0.0;
  double h = 0.0;         // boundary mass of |a|^2
  double vartheta = 0.0;  // metric correction; identically 0 on flat domains
  double K = 0.0;         // sqrt(exp(-2 vartheta) r^-3 h)
  double N = 0.0;         // energy / (r^2 K^2)
};

struct FrequencyProfile {
  std::vector<FrequencyPoint> pts;
};

FrequencyProfile profile(const DensitySampler& d,
                         const std::vector<double>& radii,
                         const QuadratureRule& q);

// Max relative defect of dK/dr = (N/r) K over interior radii (centered
// differences on the profile's radius grid).
double ode_defect(const FrequencyProfile& p);

// Right side of the monotonicity formula at radius r:
// dN/dr = 2/(r^2 K^2) Int_bdry |nabla_rad a - (N/r) a|^2
//       + r_cfg^2/(r^2 K^2) Int_bdry |a^a|^2
//       + 1/(r^2 K^2 r_cfg^2) Int_bdry (2|E_A|^2 - |F_A|^2).
double dn_formula(const DensitySampler& d, double r, const QuadratureRule& q);

// Centered-difference dN/dr at r computed from two profile evaluations.
double dn_direct(const DensitySampler& d, double r, double dr,
                 const QuadratureRule& q);

// Distortion-free stress tensor of the configuration (flat metric), as an
// ndim x ndim block of Real 0-forms: T[alpha][beta].
std::vector<std::vector<FormField>> stress_tensor(const Configuration& c);

// Row divergence sum_alpha D_alpha T[alpha][beta]; returns the grid norm of
// the divergence 1-form.
double stress_divergence_norm(const Configuration& c);

struct ScaleDetectors {
  double r_wedge = 0.0;    // largest r: r_cfg^4 Int_Br |a^a|^2 <= c^-2
  double r_curv = 0.0;     // largest r: Int_Br |F_A|^2 <= c^-2
  double r_diamond = 0.0;  // largest r: r_cfg^4 Int_Br |a^a|^2 <= c^-4
  double r_star = 0.0;     // r K(r) r_cfg = 1/z_U, or r_max if never reached
};

ScaleDetectors scale_detectors(const DensitySampler& d, const ScalarFn& f_sq,
                               const AnalysisParams& par, double r_max,
                               const QuadratureRule& q);

// Frequency profile of a limit datum: |nu|^2 boundary mass and |grad nu|^2
// energy only (no wedge, no curvature).
FrequencyProfile limit_profile(const ScalarFn& nu_sq, const ScalarFn& grad_sq,
                               const Point& base,
                               const std::vector<double>& radii,
                               const QuadratureRule& q);

}  // namespace kw
