#include "kwflow/calculus.hpp"

#include <cassert>
#include <utility>
#include <vector>

namespace kw {

namespace {

// Stencil rows of the 1d derivative along an axis: row i holds (col, weight).
std::vector<std::vector<std::pair<int, double>>> deriv_rows(int n, double h,
                                                            bool periodic) {
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  double c = 1.0 / (2.0 * h);
  for (int i = 0; i < n; ++i) {
    if (periodic) {
      rows[i] = {{(i + n - 1) % n, -c}, {(i + 1) % n, c}};
    } else if (i == 0) {
      rows[i] = {{0, -1.5 / h}, {1, 2.0 / h}, {2, -0.5 / h}};
    } else if (i == n - 1) {
      rows[i] = {{n - 1, 1.5 / h}, {n - 2, -2.0 / h}, {n - 3, 0.5 / h}};
    } else {
      rows[i] = {{i - 1, -c}, {i + 1, c}};
    }
  }
  return rows;
}

std::vector<std::vector<std::pair<int, double>>> transpose_rows(
    const std::vector<std::vector<std::pair<int, double>>>& rows) {
  std::vector<std::vector<std::pair<int, double>>> t(rows.size());
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (auto [j, w] : rows[i]) t[j].push_back({i, w});
  return t;
}

}  // namespace

FormField axis_deriv(const FormField& f, int axis, bool transpose) {
  const Domain& dom = f.dom;
  int nd = dom.ndim();
  assert(axis < nd);
  int n = dom.sites[axis];
  auto rows = deriv_rows(n, dom.spacing(axis), dom.periodic(axis));
  if (transpose) rows = transpose_rows(rows);

  std::size_t stride = 1;
  for (int d = axis + 1; d < nd; ++d)
    stride *= static_cast<std::size_t>(dom.sites[d]);
  std::size_t block = static_cast<std::size_t>(f.ncomp() * f.fdim());

  FormField out(dom, f.degree, f.kind);
  std::size_t nsites = dom.site_count();
  for (std::size_t s = 0; s < nsites; ++s) {
    int i = static_cast<int>((s / stride) % static_cast<std::size_t>(n));
    double* op = out.data.data() + s * block;
    for (auto [col, w] : rows[i]) {
      const double* ip =
          f.data.data() + (s + (col - i) * stride) * block;
      for (std::size_t b = 0; b < block; ++b) op[b] += w * ip[b];
    }
  }
  return out;
}

FormField ext_d(const FormField& f) {
  const Domain& dom = f.dom;
  int nd = dom.ndim();
  FormField out(dom, f.degree + 1, f.kind);
  int fd = f.fdim();
  for (int axis = 0; axis < nd; ++axis) {
    FormField df = axis_deriv(f, axis, false);
    for (int oc = 0; oc < out.ncomp(); ++oc) {
      unsigned jm = out.basis.masks[oc];
      if (!(jm & (1u << axis))) continue;
      unsigned im = jm & ~(1u << axis);
      int ic = f.basis.comp_of[im];
      double sgn = insert_sign(axis, im);
      std::size_t nsites = dom.site_count();
      for (std::size_t s = 0; s < nsites; ++s) {
        double* op = out.at(s, oc);
        const double* ip = df.at(s, ic);
        for (int b = 0; b < fd; ++b) op[b] += sgn * ip[b];
      }
    }
  }
  return out;
}

FormField codiff(const FormField& f) {
  const Domain& dom = f.dom;
  int nd = dom.ndim();
  FormField out(dom, f.degree - 1, f.kind);
  int fd = f.fdim();
  for (int axis = 0; axis < nd; ++axis) {
    FormField df = axis_deriv(f, axis, true);
    for (int oc = 0; oc < out.ncomp(); ++oc) {
      unsigned im = out.basis.masks[oc];
      if (im & (1u << axis)) continue;
      unsigned jm = im | (1u << axis);
      int ic = f.basis.comp_of[jm];
      double sgn = insert_sign(axis, im);
      std::size_t nsites = dom.site_count();
      for (std::size_t s = 0; s < nsites; ++s) {
        double* op = out.at(s, oc);
        const double* ip = df.at(s, ic);
        for (int b = 0; b < fd; ++b) op[b] += sgn * ip[b];
      }
    }
  }
  return out;
}

FormField hodge_star(const FormField& f) {
  const Domain& dom = f.dom;
  int nd = dom.ndim();
  unsigned full = (1u << nd) - 1u;
  FormField out(dom, nd - f.degree, f.kind);
  int fd = f.fdim();
  std::size_t nsites = dom.site_count();
  for (int ic = 0; ic < f.ncomp(); ++ic) {
    unsigned im = f.basis.masks[ic];
    unsigned cm = full & ~im;
    int oc = out.basis.comp_of[cm];
    double sgn = shuffle_sign(im, cm);
    for (std::size_t s = 0; s < nsites; ++s) {
      double* op = out.at(s, oc);
      const double* ip = f.at(s, ic);
      for (int b = 0; b < fd; ++b) op[b] = sgn * ip[b];
    }
  }
  return out;
}

FormField sd_project(const FormField& f, int sign) {
  assert(f.degree == 2 && f.dom.ndim() == 4);
  FormField sf = hodge_star(f);
  FormField out = f;
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = 0.5 * (out.data[i] + sign * sf.data[i]);
  return out;
}

FormField lie_wedge(const FormField& a, const FormField& b) {
  assert(a.kind == ValueKind::Lie && b.kind == ValueKind::Lie);
  const Domain& dom = a.dom;
  FormField out(dom, a.degree + b.degree, ValueKind::Lie);
  std::size_t nsites = dom.site_count();
  for (int oc = 0; oc < out.ncomp(); ++oc) {
    unsigned km = out.basis.masks[oc];
    // Enumerate submasks I of K with |I| = deg(a).
    for (unsigned im = km;; im = (im - 1) & km) {
      if (__builtin_popcount(im) == a.degree) {
        unsigned jm = km & ~im;
        int ia = a.basis.comp_of[im];
        int jb = b.basis.comp_of[jm];
        double sgn = shuffle_sign(im, jm);
        for (std::size_t s = 0; s < nsites; ++s)
          out.add_lie(s, oc, sgn * bracket(a.lie(s, ia), b.lie(s, jb)));
      }
      if (im == 0) break;
    }
  }
  return out;
}

FormField a_wedge_a(const FormField& a) {
  FormField w = lie_wedge(a, a);
  w *= 0.5;
  return w;
}

FormField wedge_inner(const FormField& a, const FormField& b) {
  assert(a.kind == ValueKind::Lie && b.kind == ValueKind::Lie);
  const Domain& dom = a.dom;
  FormField out(dom, a.degree + b.degree, ValueKind::Real);
  std::size_t nsites = dom.site_count();
  for (int oc = 0; oc < out.ncomp(); ++oc) {
    unsigned km = out.basis.masks[oc];
    for (unsigned im = km;; im = (im - 1) & km) {
      if (__builtin_popcount(im) == a.degree) {
        unsigned jm = km & ~im;
        int ia = a.basis.comp_of[im];
        int jb = b.basis.comp_of[jm];
        double sgn = shuffle_sign(im, jm);
        for (std::size_t s = 0; s < nsites; ++s)
          *out.at(s, oc) += sgn * inner(a.lie(s, ia), b.lie(s, jb));
      }
      if (im == 0) break;
    }
  }
  return out;
}

FormField density_norm_sq(const FormField& f) {
  FormField out(f.dom, 0, ValueKind::Real);
  std::size_t nsites = f.dom.site_count();
  for (std::size_t s = 0; s < nsites; ++s) *out.at(s, 0) = site_norm_sq(f, s);
  return out;
}

}  // namespace kw
