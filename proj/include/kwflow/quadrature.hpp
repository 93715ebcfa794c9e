#pragma once

#include <array>
#include <functional>
#include <vector>

#include "kwflow/form.hpp"

namespace kw {

using Point = std::array<double, 4>;
using ScalarFn = std::function<double(const Point&)>;

struct BallSpec {
  Point center{0, 0, 0, 0};
  double radius = 0.0;
};

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Product rule on the unit 3-sphere: directions and weights with
// sum(w) = 2 pi^2, exact to high order for smooth integrands.
struct S3Rule {
  std::vector<Point> dirs;
  std::vector<double> weights;

  explicit S3Rule(int n_psi = 12, int n_theta = 12, int n_phi = 24);
};

struct QuadratureRule {
  int n_r = 16;
  S3Rule s3;

  explicit QuadratureRule(int nr = 16, int n_psi = 12, int n_theta = 12,
                          int n_phi = 24)
      : n_r(nr), s3(n_psi, n_theta, n_phi) {}
};

// Integral of f over the radius-r sphere / ball about `center`.
double sphere_integrate(const ScalarFn& f, const Point& center, double r,
                        const QuadratureRule& q);
double ball_integrate(const ScalarFn& f, const Point& center, double r,
                      const QuadratureRule& q);

// Multilinear interpolation of one (component, fiber lane) of a grid field
// at a physical point; periodic axes wrap, the slab axis clamps.
double interpolate(const FormField& f, const Point& x, int comp, int lane);

// Scalar sampler view of a Real 0-form.
ScalarFn grid_scalar_sampler(const FormField& f);

}  // namespace kw
