#pragma once

#include <cstdint>
#include <vector>

#include "kwflow/domain.hpp"
#include "kwflow/liealg.hpp"

namespace kw {

// Per-component fiber of a differential form.
enum class ValueKind : int { Real = 1, Lie = 3, CLie = 6 };

inline int fiber_dim(ValueKind k) { return static_cast<int>(k); }

// Basis bookkeeping for degree-k forms in n dimensions. Components are the
// increasing multi-indices dx^I, stored as bitmasks over the axes.
struct FormBasis {
  int ndim = 4;
  int degree = 0;
  std::vector<std::uint8_t> masks;   // component -> axis bitmask
  std::array<int, 16> comp_of{};     // axis bitmask -> component (or -1)

  FormBasis() = default;
  FormBasis(int n, int k) : ndim(n), degree(k) {
    comp_of.fill(-1);
    for (int m = 0; m < (1 << n); ++m) {
      if (__builtin_popcount(static_cast<unsigned>(m)) == k) {
        comp_of[m] = static_cast<int>(masks.size());
        masks.push_back(static_cast<std::uint8_t>(m));
      }
    }
  }

  int ncomp() const { return static_cast<int>(masks.size()); }
};

// Sign of inserting axis `axis` into the increasing multi-index `mask`
// (axis not in mask): (-1)^{#axes in mask below axis}.
inline int insert_sign(int axis, unsigned mask) {
  unsigned below = mask & ((1u << axis) - 1u);
  return (__builtin_popcount(below) & 1) ? -1 : 1;
}

// Sign of the shuffle (I,J) -> sorted(I|J), for disjoint masks.
inline int shuffle_sign(unsigned i_mask, unsigned j_mask) {
  int s = 1;
  unsigned rest = j_mask;
  // Insert the axes of i_mask from highest to lowest in front of j_mask.
  for (int a = 7; a >= 0; --a) {
    if (i_mask & (1u << a)) {
      s *= insert_sign(a, rest);
      rest |= (1u << a);
    }
  }
  return s;
}

// A degree-k form with Real/Lie/CLie coefficients on a uniform grid.
// Layout: data[(site * ncomp + comp) * fdim + f] -- site-major, C order.
// CLie fibers store (re0,re1,re2,im0,im1,im2).
struct FormField {
  Domain dom;
  int degree = 0;
  ValueKind kind = ValueKind::Real;
  FormBasis basis;
  std::vector<double> data;

  FormField() = default;
  FormField(const Domain& d, int deg, ValueKind k)
      : dom(d), degree(deg), kind(k), basis(d.ndim(), deg),
        data(d.site_count() * static_cast<std::size_t>(basis.ncomp()) *
                 static_cast<std::size_t>(fiber_dim(k)),
             0.0) {}

  int ncomp() const { return basis.ncomp(); }
  int fdim() const { return fiber_dim(kind); }
  std::size_t site_count() const { return dom.site_count(); }

  double* at(std::size_t site, int comp) {
    return data.data() + (site * ncomp() + comp) * fdim();
  }
  const double* at(std::size_t site, int comp) const {
    return data.data() + (site * ncomp() + comp) * fdim();
  }

  LieVec lie(std::size_t site, int comp) const {
    const double* p = at(site, comp);
    return LieVec{{p[0], p[1], p[2]}};
  }
  void set_lie(std::size_t site, int comp, const LieVec& v) {
    double* p = at(site, comp);
    p[0] = v[0]; p[1] = v[1]; p[2] = v[2];
  }
  void add_lie(std::size_t site, int comp, const LieVec& v) {
    double* p = at(site, comp);
    p[0] += v[0]; p[1] += v[1]; p[2] += v[2];
  }

  CLieVec clie(std::size_t site, int comp) const {
    const double* p = at(site, comp);
    return CLieVec{LieVec{{p[0], p[1], p[2]}}, LieVec{{p[3], p[4], p[5]}}};
  }
  void set_clie(std::size_t site, int comp, const CLieVec& v) {
    double* p = at(site, comp);
    p[0] = v.re[0]; p[1] = v.re[1]; p[2] = v.re[2];
    p[3] = v.im[0]; p[4] = v.im[1]; p[5] = v.im[2];
  }

  FormField& operator+=(const FormField& o) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
    return *this;
  }
  FormField& operator-=(const FormField& o) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
    return *this;
  }
  FormField& operator*=(double s) {
    for (double& v : data) v *= s;
    return *this;
  }
};

inline FormField operator+(FormField a, const FormField& b) { return a += b; }
inline FormField operator-(FormField a, const FormField& b) { return a -= b; }
inline FormField operator*(double s, FormField a) { return a *= s; }

// Grid L2 inner product (Hermitian on CLie fields).
inline double grid_inner(const FormField& a, const FormField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s * a.dom.cell_volume();
}

inline double grid_norm_sq(const FormField& a) { return grid_inner(a, a); }
inline double grid_norm(const FormField& a) {
  return std::sqrt(grid_norm_sq(a));
}

// Pointwise |.|^2 at a site, summed over components (mu<nu convention).
inline double site_norm_sq(const FormField& a, std::size_t site) {
  const double* p = a.data.data() + site * a.ncomp() * a.fdim();
  double s = 0.0;
  for (int i = 0; i < a.ncomp() * a.fdim(); ++i) s += p[i] * p[i];
  return s;
}

}  // namespace kw
