#pragma once

#include "kwflow/form.hpp"

namespace kw {

// Discrete Green's function of (d^+ d + 1) on 0-forms of a periodic domain:
// the exact Fourier-space inverse of the centered-difference symbol, with a
// Kronecker source of mass 1 (value 1/cell_volume at site p), so that
// sum(G) * cell_volume = 1 exactly.
FormField green_dtd1(const Domain& dom, std::size_t p);

// Zero-mean solve of the scalar Laplacian d^+ d u = f, lane by lane, via the
// exact Fourier symbol (the k = 0 mode is projected out). Periodic domains
// only; used as the spectral preconditioner for gauge relaxation.
FormField laplace_invert_zero_mean(const FormField& f);

}  // namespace kw
