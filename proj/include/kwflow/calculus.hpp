#pragma once

#include "kwflow/form.hpp"

namespace kw {

// Centered second-order derivative along one axis, applied to every
// component lane. Periodic axes use the wrap-around stencil; the slab axis
// uses one-sided second-order stencils at the two walls. With
// transpose = true the exact matrix transpose is applied instead (for
// periodic axes that is just -D).
FormField axis_deriv(const FormField& f, int axis, bool transpose);

// Discrete exterior derivative (collocated, second order; d(d .)) is O(h^2),
// not identically zero).
FormField ext_d(const FormField& f);

// Exact matrix adjoint of ext_d with respect to grid_inner.
FormField codiff(const FormField& f);

// Euclidean Hodge star, orientation dx1^...^dxn.
FormField hodge_star(const FormField& f);

// Self-dual / anti-self-dual projection of a 2-form on a 4d domain.
FormField sd_project(const FormField& f, int sign);

// Graded wedge with the fiber bracket: (a^b)_K = sum sgn(I,J) [a_I, b_J].
// Note lie_wedge(a,a) carries the combinatorial factor 2 on each component.
FormField lie_wedge(const FormField& a, const FormField& b);

// The quadratic term with the conventional 1/2: component [a_mu, a_nu].
FormField a_wedge_a(const FormField& a);

// Graded wedge with the fiber inner product; Real-valued output.
FormField wedge_inner(const FormField& a, const FormField& b);

// Pointwise |.|^2 density as a Real 0-form.
FormField density_norm_sq(const FormField& f);

}  // namespace kw
