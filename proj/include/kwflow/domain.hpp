#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace kw {

enum class DomainKind { Torus4, SlabT3, Torus3 };

// Flat product domain: a periodic box, except that a slab is non-periodic in
// axis 0. Sites are cell centers of a uniform grid, axis extents in physical
// units. Three-dimensional domains (cross-section tori for the flow) simply
// use ndim = 3 and ignore the last slot.
struct Domain {
  DomainKind kind = DomainKind::Torus4;
  std::array<int, 4> sites{1, 1, 1, 1};
  std::array<double, 4> extent{1.0, 1.0, 1.0, 1.0};

  int ndim() const { return kind == DomainKind::Torus3 ? 3 : 4; }

  bool periodic(int axis) const {
    return !(kind == DomainKind::SlabT3 && axis == 0);
  }

  double spacing(int axis) const { return extent[axis] / sites[axis]; }

  // Cell volume (integration weight of one site).
  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < ndim(); ++d) v *= spacing(d);
    return v;
  }

  std::size_t site_count() const {
    std::size_t n = 1;
    for (int d = 0; d < ndim(); ++d) n *= static_cast<std::size_t>(sites[d]);
    return n;
  }

  // Lexicographic (row-major, axis 0 slowest) site index.
  std::size_t site_index(const std::array<int, 4>& ix) const {
    std::size_t s = 0;
    for (int d = 0; d < ndim(); ++d)
      s = s * static_cast<std::size_t>(sites[d]) +
          static_cast<std::size_t>(ix[d]);
    return s;
  }

  std::array<int, 4> site_coords(std::size_t s) const {
    std::array<int, 4> ix{0, 0, 0, 0};
    for (int d = ndim() - 1; d >= 0; --d) {
      ix[d] = static_cast<int>(s % static_cast<std::size_t>(sites[d]));
      s /= static_cast<std::size_t>(sites[d]);
    }
    return ix;
  }

  // Physical position of a site (cell centers at half-spacings).
  std::array<double, 4> position(const std::array<int, 4>& ix) const {
    std::array<double, 4> x{0, 0, 0, 0};
    for (int d = 0; d < ndim(); ++d) x[d] = (ix[d] + 0.5) * spacing(d);
    return x;
  }

  // Minimal-image squared distance between two physical points.
  double dist_sq(const std::array<double, 4>& a,
                 const std::array<double, 4>& b) const {
    double s = 0.0;
    for (int d = 0; d < ndim(); ++d) {
      double dd = a[d] - b[d];
      if (periodic(d)) {
        double L = extent[d];
        dd -= L * std::round(dd / L);
      }
      s += dd * dd;
    }
    return s;
  }

  bool operator==(const Domain& o) const {
    return kind == o.kind && sites == o.sites && extent == o.extent;
  }
};

inline Domain torus4(int n, double L = 1.0) {
  Domain d;
  d.kind = DomainKind::Torus4;
  d.sites = {n, n, n, n};
  d.extent = {L, L, L, L};
  return d;
}

inline Domain torus3(int n, double L = 1.0) {
  Domain d;
  d.kind = DomainKind::Torus3;
  d.sites = {n, n, n, 1};
  d.extent = {L, L, L, 1.0};
  return d;
}

inline Domain slab_t3(int ns, int n, double Ls = 1.0, double L = 1.0) {
  Domain d;
  d.kind = DomainKind::SlabT3;
  d.sites = {ns, n, n, n};
  d.extent = {Ls, L, L, L};
  return d;
}

}  // namespace kw
