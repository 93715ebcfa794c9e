#include "kwflow/synth.hpp"

#include <cmath>

namespace kw {

namespace {

double mode_angle(const TrigMode& m, const std::array<double, 4>& x,
                  const std::array<double, 4>& extent, int ndim) {
  double t = m.phase;
  for (int d = 0; d < ndim; ++d)
    t += 2.0 * M_PI * m.k[d] * x[d] / extent[d];
  return t;
}

std::vector<std::array<int, 4>> wavevectors(int ndim, int kmax,
                                            bool with_constant) {
  std::vector<std::array<int, 4>> ks;
  int n = 2 * kmax + 1;
  int total = 1;
  for (int d = 0; d < ndim; ++d) total *= n;
  for (int i = 0; i < total; ++i) {
    std::array<int, 4> k{0, 0, 0, 0};
    int t = i;
    bool zero = true;
    for (int d = 0; d < ndim; ++d) {
      k[d] = t % n - kmax;
      t /= n;
      if (k[d] != 0) zero = false;
    }
    if (zero && !with_constant) continue;
    ks.push_back(k);
  }
  return ks;
}

}  // namespace

LieVec SynthLie1Form::eval(const std::array<double, 4>& x,
                           const std::array<double, 4>& extent,
                           int mu) const {
  LieVec v{};
  for (const TrigMode& m : modes[mu])
    v += std::cos(mode_angle(m, x, extent, ndim)) * m.amp;
  return v;
}

SynthLie1Form random_lie_1form(int ndim, int kmax, double amp,
                               std::uint64_t seed, bool with_constant) {
  std::mt19937_64 eng(seed);
  SynthLie1Form f;
  f.ndim = ndim;
  f.modes.resize(ndim);
  auto ks = wavevectors(ndim, kmax, with_constant);
  for (int mu = 0; mu < ndim; ++mu)
    for (const auto& k : ks) {
      TrigMode m;
      m.k = k;
      m.phase = M_PI * sym_uniform(eng);
      m.amp = LieVec{{amp * sym_uniform(eng), amp * sym_uniform(eng),
                      amp * sym_uniform(eng)}};
      f.modes[mu].push_back(m);
    }
  return f;
}

FormField sample_1form(const SynthLie1Form& f, const Domain& dom) {
  FormField out(dom, 1, ValueKind::Lie);
  std::size_t n = dom.site_count();
  for (std::size_t s = 0; s < n; ++s) {
    auto x = dom.position(dom.site_coords(s));
    for (int mu = 0; mu < dom.ndim(); ++mu)
      out.set_lie(s, mu, f.eval(x, dom.extent, mu));
  }
  return out;
}

double SynthScalar::eval(const std::array<double, 4>& x,
                         const std::array<double, 4>& extent) const {
  double v = 0.0;
  for (const TrigMode& m : modes)
    v += m.amp[0] * std::cos(mode_angle(m, x, extent, 4));
  return v;
}

std::array<double, 4> SynthScalar::grad(
    const std::array<double, 4>& x, const std::array<double, 4>& extent)
    const {
  std::array<double, 4> g{0, 0, 0, 0};
  for (const TrigMode& m : modes) {
    double sn = -m.amp[0] * std::sin(mode_angle(m, x, extent, 4));
    for (int d = 0; d < 4; ++d)
      g[d] += sn * 2.0 * M_PI * m.k[d] / extent[d];
  }
  return g;
}

SynthScalar random_scalar(int ndim, int kmax, double amp,
                          std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  SynthScalar f;
  for (const auto& k : wavevectors(ndim, kmax, false)) {
    TrigMode m;
    m.k = k;
    m.phase = M_PI * sym_uniform(eng);
    m.amp = LieVec{{amp * sym_uniform(eng), 0.0, 0.0}};
    f.modes.push_back(m);
  }
  return f;
}

}  // namespace kw
