#include "kwflow/green.hpp"

#include <fftw3.h>

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

namespace kw {

FormField green_dtd1(const Domain& dom, std::size_t p) {
  assert(dom.kind != DomainKind::SlabT3);
  int nd = dom.ndim();
  std::size_t n = dom.site_count();
  std::array<int, 4> pc = dom.site_coords(p);

  std::vector<std::complex<double>> buf(n);
  // Fill \hat G(k) = exp(-i k . x_p) / (lambda(k) + 1), with the exact
  // centered-difference symbol lambda(k) = sum_d sin^2(2 pi k_d / N_d)/h_d^2.
  for (std::size_t s = 0; s < n; ++s) {
    std::array<int, 4> k = dom.site_coords(s);
    double lam = 0.0, phase = 0.0;
    for (int d = 0; d < nd; ++d) {
      double h = dom.spacing(d);
      double sn = std::sin(2.0 * M_PI * k[d] / dom.sites[d]);
      lam += (sn / h) * (sn / h);
      phase -= 2.0 * M_PI * k[d] * pc[d] / dom.sites[d];
    }
    buf[s] = std::polar(1.0, phase) / (lam + 1.0);
  }

  int dims[4];
  for (int d = 0; d < nd; ++d) dims[d] = dom.sites[d];
  fftw_plan plan = fftw_plan_dft(
      nd, dims, reinterpret_cast<fftw_complex*>(buf.data()),
      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
      FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  FormField g(dom, 0, ValueKind::Real);
  double scale = 1.0 / (static_cast<double>(n) * dom.cell_volume());
  for (std::size_t s = 0; s < n; ++s) *g.at(s, 0) = buf[s].real() * scale;
  return g;
}

FormField laplace_invert_zero_mean(const FormField& f) {
  const Domain& dom = f.dom;
  assert(dom.kind != DomainKind::SlabT3);
  assert(f.degree == 0);
  int nd = dom.ndim();
  std::size_t n = dom.site_count();
  int nl = f.ncomp() * fiber_dim(f.kind);

  int dims[4];
  for (int d = 0; d < nd; ++d) dims[d] = dom.sites[d];
  std::vector<std::complex<double>> buf(n);
  auto* fb = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan fwd = fftw_plan_dft(nd, dims, fb, fb, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft(nd, dims, fb, fb, FFTW_BACKWARD, FFTW_ESTIMATE);

  // The centered-difference symbol vanishes on every mode whose indices all
  // sit in {0, N/2} (mean and checkerboards); those are projected out, with
  // a relative cutoff so rounding noise in sin(pi k) cannot blow up.
  double lam_max = 0.0;
  for (int d = 0; d < nd; ++d) {
    double h = dom.spacing(d);
    lam_max += 1.0 / (h * h);
  }
  std::vector<double> inv_lam(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::array<int, 4> k = dom.site_coords(s);
    double lam = 0.0;
    for (int d = 0; d < nd; ++d) {
      double h = dom.spacing(d);
      double sn = std::sin(2.0 * M_PI * k[d] / dom.sites[d]);
      lam += (sn / h) * (sn / h);
    }
    inv_lam[s] = lam > 1e-12 * lam_max ? 1.0 / lam : 0.0;
  }

  FormField out(dom, 0, f.kind);
  for (int l = 0; l < nl; ++l) {
    for (std::size_t s = 0; s < n; ++s) buf[s] = f.data[s * nl + l];
    fftw_execute(fwd);
    for (std::size_t s = 0; s < n; ++s) buf[s] *= inv_lam[s];
    fftw_execute(bwd);
    double scale = 1.0 / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s)
      out.data[s * nl + l] = buf[s].real() * scale;
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  return out;
}

}  // namespace kw
