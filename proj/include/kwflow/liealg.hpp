#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace kw {

// su(2) in the orthonormal basis sigma_j = -i * pauli_j, j = 1..3.
// In this basis <u,v> = -1/2 tr(uv) is the Euclidean dot product and
// [u,v] = 2 (u x v).
struct LieVec {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  LieVec& operator+=(const LieVec& o) {
    c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
    return *this;
  }
  LieVec& operator-=(const LieVec& o) {
    c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
    return *this;
  }
  LieVec& operator*=(double s) {
    c[0] *= s; c[1] *= s; c[2] *= s;
    return *this;
  }
};

inline LieVec operator+(LieVec a, const LieVec& b) { return a += b; }
inline LieVec operator-(LieVec a, const LieVec& b) { return a -= b; }
inline LieVec operator*(double s, LieVec a) { return a *= s; }
inline LieVec operator-(const LieVec& a) { return -1.0 * a; }

inline double inner(const LieVec& u, const LieVec& v) {
  return u.c[0] * v.c[0] + u.c[1] * v.c[1] + u.c[2] * v.c[2];
}

inline double norm_sq(const LieVec& u) { return inner(u, u); }
inline double norm(const LieVec& u) { return std::sqrt(norm_sq(u)); }

inline LieVec bracket(const LieVec& u, const LieVec& v) {
  return LieVec{{2.0 * (u.c[1] * v.c[2] - u.c[2] * v.c[1]),
                 2.0 * (u.c[2] * v.c[0] - u.c[0] * v.c[2]),
                 2.0 * (u.c[0] * v.c[1] - u.c[1] * v.c[0])}};
}

// [u,[q,u]]; shows up in the Bochner zeroth-order term.
inline LieVec double_ad(const LieVec& u, const LieVec& q) {
  return bracket(u, bracket(q, u));
}

// Complexification. All pairings below are complex-bilinear (no conjugation):
// the functionals built on them (Chern-Simons, Pontrjagin) are holomorphic in
// the connection.
struct CLieVec {
  LieVec re, im;

  CLieVec& operator+=(const CLieVec& o) {
    re += o.re; im += o.im;
    return *this;
  }
  CLieVec& operator-=(const CLieVec& o) {
    re -= o.re; im -= o.im;
    return *this;
  }
};

inline CLieVec operator+(CLieVec a, const CLieVec& b) { return a += b; }
inline CLieVec operator-(CLieVec a, const CLieVec& b) { return a -= b; }
inline CLieVec operator*(double s, const CLieVec& a) {
  return CLieVec{s * a.re, s * a.im};
}
inline CLieVec operator*(std::complex<double> z, const CLieVec& a) {
  return CLieVec{z.real() * a.re - z.imag() * a.im,
                 z.real() * a.im + z.imag() * a.re};
}

inline std::complex<double> inner_c(const CLieVec& u, const CLieVec& v) {
  return {inner(u.re, v.re) - inner(u.im, v.im),
          inner(u.re, v.im) + inner(u.im, v.re)};
}

inline CLieVec bracket_c(const CLieVec& u, const CLieVec& v) {
  return CLieVec{bracket(u.re, v.re) - bracket(u.im, v.im),
                 bracket(u.re, v.im) + bracket(u.im, v.re)};
}

// tr(uvw) in the 2x2 realization equals -<u,[v,w]> (complex-bilinear).
inline std::complex<double> trace3(const CLieVec& u, const CLieVec& v,
                                   const CLieVec& w) {
  return -inner_c(u, bracket_c(v, w));
}

// Hermitian L2-type magnitude of a complexified element.
inline double norm_sq(const CLieVec& u) {
  return norm_sq(u.re) + norm_sq(u.im);
}

}  // namespace kw
