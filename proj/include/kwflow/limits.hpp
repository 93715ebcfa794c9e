#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kwflow/fields.hpp"
#include "kwflow/frequency.hpp"
#include "kwflow/quadrature.hpp"

namespace kw {

// Pointwise Gram endomorphism sigma -> sum_alpha a_alpha <a_alpha, sigma>,
// a positive semidefinite symmetric operator on the fiber.
struct Sym3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
};

Sym3 gram_endomorphism(const FormField& a, std::size_t site);
LieVec sym3_apply(const Sym3& t, const LieVec& v);

// Deterministic closed-form eigensolve (trigonometric characteristic roots,
// cross-product eigenvectors). Eigenvalues descending.
struct Eig3 {
  std::array<double, 3> val{0, 0, 0};
  std::array<LieVec, 3> vec;
};
Eig3 sym3_eig(const Sym3& t);

// Rank-one split a = nu sigma + afrak with sigma the unit top eigenvector
// (pointwise sign fixed by making its largest-magnitude coordinate positive),
// nu_mu = <sigma, a_mu>, afrak orthogonal to sigma fiberwise.
struct Decomposition {
  FormField sigma;   // Lie 0-form
  FormField lambda;  // Real 0-form: top eigenvalue
  FormField gap;     // Real 0-form: top minus middle eigenvalue
  FormField nu;      // Real 1-form
  FormField afrak;   // Lie 1-form
};
Decomposition decompose(const FormField& a);

// Z/2 sign data of the sigma section over a cover of metric balls. Within a
// ball, signs propagate from the site nearest the center by breadth-first
// alignment with the already-signed neighbor; iota[i][j] is the relative
// sign on the (i,j) overlap (0 = empty overlap, +-1 otherwise).
struct CocycleResult {
  std::vector<std::vector<std::size_t>> ball_sites;
  std::vector<std::vector<double>> signs;
  std::vector<std::vector<int>> iota;
  bool consistent = true;  // every alignment and every overlap unambiguous
};
CocycleResult sign_cocycle(const FormField& sigma,
                           const std::vector<BallSpec>& cover,
                           const std::vector<char>& masked);

// Product of iota along consecutive pairs of the (closed) chain.
int loop_holonomy(const CocycleResult& c, const std::vector<int>& chain);

// d nu and d^+ nu norms of the signed scalar section nu = <sigma_signed, a>
// over the interior of one ball (sites whose stencil stays inside the signed
// set), normalized by the norm of nu there.
struct HarmonicityReport {
  double dnu = 0.0;
  double dtnu = 0.0;
  double nu_scale = 0.0;
};
HarmonicityReport harmonicity_check(const FormField& a, const FormField& sigma,
                                    const BallSpec& ball,
                                    const std::vector<char>& masked);

// Lattice ball mass of a density (direct site sum, minimal-image metric).
double lattice_ball_mass(const FormField& density, const Point& center,
                         double rho);

// Greedy concentration-set construction: worst-ball bisection for the base
// radius, then rounds of doubled radii with separation constraints.
struct ThetaSet {
  std::vector<std::size_t> points;
  std::vector<double> radii;
  double r0 = 0.0;
  int rounds = 0;
};
ThetaSet theta_construct(const FormField& w_sq, const AnalysisParams& par,
                         double r_max);

// Membership detector over a sequence of densities: flag sites whose
// tail-sup ball mass at the smallest radius stays at or above the threshold.
std::vector<char> theta_detect(const std::vector<FormField>& w_sq_seq,
                               const std::vector<double>& radii,
                               double threshold, double tail_frac = 0.5);

// Pointwise sup of |a| over the tail of a sequence (Real 0-form result).
FormField limsup_abs(const std::vector<FormField>& seq,
                     double tail_frac = 0.5);

std::vector<char> zero_mask(const FormField& abs_field, double eps);

// Distance from a site to the nearest masked site (minimal image).
double dist_to_mask(const Domain& dom, std::size_t site,
                    const std::vector<char>& mask);

// Least-squares slope of log sup_{dist in [delta, 2 delta)} |f| vs
// log delta; returns (exponent, multiplicative constant).
struct HolderFit {
  double exponent = 0.0;
  double constant = 0.0;
};
HolderFit holder_fit(const FormField& abs_field,
                     const std::vector<char>& z_mask,
                     const std::vector<double>& deltas);

}  // namespace kw
