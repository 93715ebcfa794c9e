#pragma once

#include <vector>

#include "kwflow/functionals.hpp"

namespace kw {

// Right side of the tau-family dissipative flow on a 3-torus cross-section:
// the downward gradient flow of weighted_real(chern_simons(A + i r a)) in the
// metric |dA|^2 + r^2 |da|^2, scaled so that
//   dA/ds = c1 *(F - r^2 a^a) - c2 r *d_A a,
//   da/ds = -c1 *d_A a - c2 r^-1 *(F - r^2 a^a),
// with (c1, c2) = tau_phase(tau). Velocity norms satisfy
// |dA/ds|^2 + r^2 |da/ds|^2 = |*(F - r^2 a^a)|^2 + r^2 |*d_A a|^2 pointwise.
struct FlowRhs {
  FormField dA;
  FormField da;
};
FlowRhs flow_rhs(const Configuration& c);

// Integrand of the energy balance along the flow:
// |dA/ds|^2 + r^2|da/ds|^2 + r^2|d_A a|^2 + |F - r^2 a^a|^2, integrated.
double dissipation_integral(const Configuration& c);

struct FlowSample {
  double s = 0.0;
  double cs_re = 0.0, cs_im = 0.0;
  double weighted_real = 0.0;
  double dissipation = 0.0;
  double constraint_norm = 0.0;
  double dt = 0.0;
};

struct FlowLedger {
  std::vector<FlowSample> rows;
  // Time integral of the dissipation accumulated with the same RK4 stages
  // as the state (so it is 4th-order consistent with the trajectory).
  double dissipation_time_integral = 0.0;

  double weighted_drop() const {
    return rows.front().weighted_real - rows.back().weighted_real;
  }
};

// Classical RK4 with fixed step; appends one ledger row per step boundary.
FlowLedger integrate_flow(Configuration& c, double s_end, double dt);

// |constraint(s_end) - constraint(0)| in the grid norm, for drift reporting.
double constraint_drift(const Configuration& start,
                        const Configuration& end);

// Two-time L2 bound on a: ||a(s)||^2 <= (1+delta) ||a(s')||^2
//   + (1+1/delta) r^-2 * c_s * |s - s'|, c_s = dissipation time integral.
struct DriftBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
DriftBound l2_drift_bound(const Configuration& at_s,
                          const Configuration& at_sp, double ds, double cs,
                          double delta);

}  // namespace kw
