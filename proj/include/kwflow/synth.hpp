#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kwflow/fields.hpp"

namespace kw {

// Band-limited trigonometric test fields: fixed mode data sampled onto any
// grid, so coarse/fine pairs discretize the same smooth field.
struct TrigMode {
  std::array<int, 4> k{0, 0, 0, 0};
  double phase = 0.0;
  LieVec amp;
};

struct SynthLie1Form {
  int ndim = 4;
  std::vector<std::vector<TrigMode>> modes;  // per direction mu

  LieVec eval(const std::array<double, 4>& x,
              const std::array<double, 4>& extent, int mu) const;
};

// Uniform coefficients in [-amp, amp], all modes with |k|_inf <= kmax
// (excluding k = 0 unless with_constant).
SynthLie1Form random_lie_1form(int ndim, int kmax, double amp,
                               std::uint64_t seed, bool with_constant = true);

FormField sample_1form(const SynthLie1Form& f, const Domain& dom);

// Scalar trigonometric function (for gradient gauge tests).
struct SynthScalar {
  std::vector<TrigMode> modes;  // amp[0] used
  double eval(const std::array<double, 4>& x,
              const std::array<double, 4>& extent) const;
  std::array<double, 4> grad(const std::array<double, 4>& x,
                             const std::array<double, 4>& extent) const;
};

SynthScalar random_scalar(int ndim, int kmax, double amp, std::uint64_t seed);

// Deterministic uniform double in [-1, 1) from a seeded engine.
inline double sym_uniform(std::mt19937_64& eng) {
  return std::ldexp(static_cast<double>(eng() >> 11), -52) - 1.0;
}

}  // namespace kw
