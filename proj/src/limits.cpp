#include "kwflow/limits.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace kw {

Sym3 gram_endomorphism(const FormField& a, std::size_t site) {
  Sym3 t;
  for (int mu = 0; mu < a.dom.ndim(); ++mu) {
    LieVec v = a.lie(site, mu);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.m[i][j] += v[i] * v[j];
  }
  return t;
}

LieVec sym3_apply(const Sym3& t, const LieVec& v) {
  LieVec out;
  for (int i = 0; i < 3; ++i)
    out[i] = t.m[i][0] * v[0] + t.m[i][1] * v[1] + t.m[i][2] * v[2];
  return out;
}

namespace {

LieVec cross3(const LieVec& u, const LieVec& v) {
  return LieVec{{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                 u[0] * v[1] - u[1] * v[0]}};
}

LieVec eigenvector_for(const Sym3& t, double lam) {
  // Rows of (T - lam I); the eigenvector is orthogonal to two independent
  // rows. Pick the largest cross product among the three row pairs.
  LieVec rows[3];
  for (int i = 0; i < 3; ++i) {
    rows[i] = LieVec{{t.m[i][0], t.m[i][1], t.m[i][2]}};
    rows[i][i] -= lam;
  }
  LieVec best{};
  double best_n = -1.0;
  for (int i = 0; i < 3; ++i) {
    LieVec c = cross3(rows[i], rows[(i + 1) % 3]);
    double n = norm_sq(c);
    if (n > best_n) {
      best_n = n;
      best = c;
    }
  }
  if (best_n <= 0.0) return LieVec{{1, 0, 0}};  // degenerate: any direction
  return (1.0 / std::sqrt(best_n)) * best;
}

void fix_sign(LieVec& v) {
  int big = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  if (v[big] < 0.0) v = -v;
}

}  // namespace

Eig3 sym3_eig(const Sym3& t) {
  Eig3 e;
  double p1 = t.m[0][1] * t.m[0][1] + t.m[0][2] * t.m[0][2] +
              t.m[1][2] * t.m[1][2];
  double q = (t.m[0][0] + t.m[1][1] + t.m[2][2]) / 3.0;
  if (p1 < 1e-300) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return t.m[i][i] > t.m[j][j]; });
    for (int k = 0; k < 3; ++k) {
      e.val[k] = t.m[idx[k]][idx[k]];
      e.vec[k] = LieVec{};
      e.vec[k][idx[k]] = 1.0;
    }
    return e;
  }
  double p2 = 2.0 * p1;
  for (int i = 0; i < 3; ++i) {
    double d = t.m[i][i] - q;
    p2 += d * d;
  }
  double p = std::sqrt(p2 / 6.0);
  // det((T - qI)/p) / 2, clamped into acos range.
  double b[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      b[i][j] = (t.m[i][j] - (i == j ? q : 0.0)) / p;
  double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  double r = std::clamp(0.5 * detb, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  e.val[0] = q + 2.0 * p * std::cos(phi);
  e.val[2] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  e.val[1] = 3.0 * q - e.val[0] - e.val[2];
  for (int k = 0; k < 3; ++k) e.vec[k] = eigenvector_for(t, e.val[k]);
  return e;
}

Decomposition decompose(const FormField& a) {
  const Domain& dom = a.dom;
  int nd = dom.ndim();
  std::size_t n = dom.site_count();
  Decomposition d{FormField(dom, 0, ValueKind::Lie),
                  FormField(dom, 0, ValueKind::Real),
                  FormField(dom, 0, ValueKind::Real),
                  FormField(dom, 1, ValueKind::Real),
                  FormField(dom, 1, ValueKind::Lie)};
  for (std::size_t s = 0; s < n; ++s) {
    Eig3 e = sym3_eig(gram_endomorphism(a, s));
    LieVec sig = e.vec[0];
    fix_sign(sig);
    d.sigma.set_lie(s, 0, sig);
    *d.lambda.at(s, 0) = e.val[0];
    *d.gap.at(s, 0) = e.val[0] - e.val[1];
    for (int mu = 0; mu < nd; ++mu) {
      double numu = inner(sig, a.lie(s, mu));
      *d.nu.at(s, mu) = numu;
      d.afrak.set_lie(s, mu, a.lie(s, mu) - numu * sig);
    }
  }
  return d;
}

CocycleResult sign_cocycle(const FormField& sigma,
                           const std::vector<BallSpec>& cover,
                           const std::vector<char>& masked) {
  const Domain& dom = sigma.dom;
  std::size_t n = dom.site_count();
  int nd = dom.ndim();
  CocycleResult res;
  res.ball_sites.resize(cover.size());
  res.signs.resize(cover.size());

  std::vector<int> sign_of(n);  // scratch per ball: 0 = unassigned
  for (std::size_t b = 0; b < cover.size(); ++b) {
    const BallSpec& ball = cover[b];
    double r2 = ball.radius * ball.radius;
    std::vector<std::size_t>& sites = res.ball_sites[b];
    std::size_t seed = n;
    double best = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (!masked.empty() && masked[s]) continue;
      double d2 = dom.dist_sq(dom.position(dom.site_coords(s)), ball.center);
      if (d2 <= r2) {
        sites.push_back(s);
        if (seed == n || d2 < best) {
          seed = s;
          best = d2;
        }
      }
    }
    res.signs[b].assign(sites.size(), 1.0);
    if (sites.empty()) continue;
    for (std::size_t s : sites) sign_of[s] = 0;
    // Breadth-first alignment from the seed through lattice neighbors.
    std::vector<std::size_t> order(sites);
    std::sort(order.begin(), order.end());
    auto in_ball = [&](std::size_t s) {
      return std::binary_search(order.begin(), order.end(), s);
    };
    std::deque<std::size_t> queue;
    sign_of[seed] = 1;
    queue.push_back(seed);
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      std::array<int, 4> ix = dom.site_coords(cur);
      for (int d = 0; d < nd; ++d)
        for (int step : {-1, 1}) {
          std::array<int, 4> jx = ix;
          jx[d] += step;
          if (dom.periodic(d))
            jx[d] = (jx[d] + dom.sites[d]) % dom.sites[d];
          else if (jx[d] < 0 || jx[d] >= dom.sites[d])
            continue;
          std::size_t nb = dom.site_index(jx);
          if (!in_ball(nb) || sign_of[nb] != 0) continue;
          double ip = inner(sigma.lie(nb, 0), sigma.lie(cur, 0));
          if (ip == 0.0) res.consistent = false;
          sign_of[nb] = (ip >= 0.0 ? 1 : -1) * sign_of[cur];
          queue.push_back(nb);
        }
    }
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (sign_of[sites[i]] == 0) {  // disconnected remainder
        res.consistent = false;
        sign_of[sites[i]] = 1;
      }
      res.signs[b][i] = sign_of[sites[i]];
    }
  }

  // Overlap signs.
  std::vector<double> field_sign(n, 0.0);
  res.iota.assign(cover.size(), std::vector<int>(cover.size(), 0));
  for (std::size_t b1 = 0; b1 < cover.size(); ++b1) {
    std::fill(field_sign.begin(), field_sign.end(), 0.0);
    for (std::size_t i = 0; i < res.ball_sites[b1].size(); ++i)
      field_sign[res.ball_sites[b1][i]] = res.signs[b1][i];
    for (std::size_t b2 = 0; b2 < cover.size(); ++b2) {
      if (b1 == b2) {
        res.iota[b1][b2] = 1;
        continue;
      }
      int pos = 0, neg = 0;
      for (std::size_t i = 0; i < res.ball_sites[b2].size(); ++i) {
        double s1 = field_sign[res.ball_sites[b2][i]];
        if (s1 == 0.0) continue;
        (s1 * res.signs[b2][i] > 0 ? pos : neg)++;
      }
      if (pos + neg == 0)
        res.iota[b1][b2] = 0;
      else {
        if (pos != 0 && neg != 0) res.consistent = false;
        res.iota[b1][b2] = pos >= neg ? 1 : -1;
      }
    }
  }
  return res;
}

int loop_holonomy(const CocycleResult& c, const std::vector<int>& chain) {
  int h = 1;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    int a = chain[i];
    int b = chain[(i + 1) % chain.size()];
    h *= c.iota[a][b];
  }
  return h;
}

HarmonicityReport harmonicity_check(const FormField& a, const FormField& sigma,
                                    const BallSpec& ball,
                                    const std::vector<char>& masked) {
  const Domain& dom = a.dom;
  std::size_t n = dom.site_count();
  int nd = dom.ndim();
  CocycleResult c = sign_cocycle(sigma, {ball}, masked);

  std::vector<char> in_set(n, 0);
  FormField nu(dom, 1, ValueKind::Real);
  for (std::size_t i = 0; i < c.ball_sites[0].size(); ++i) {
    std::size_t s = c.ball_sites[0][i];
    in_set[s] = 1;
    LieVec sg = c.signs[0][i] * sigma.lie(s, 0);
    for (int mu = 0; mu < nd; ++mu)
      *nu.at(s, mu) = inner(sg, a.lie(s, mu));
  }
  FormField dnu = ext_d(nu);
  FormField dtnu = codiff(nu);

  // Interior sites: full centered stencil stays inside the signed set.
  auto interior = [&](std::size_t s) {
    std::array<int, 4> ix = dom.site_coords(s);
    for (int d = 0; d < nd; ++d)
      for (int step : {-1, 1}) {
        std::array<int, 4> jx = ix;
        jx[d] = (jx[d] + step + dom.sites[d]) % dom.sites[d];
        if (!in_set[dom.site_index(jx)]) return false;
      }
    return true;
  };
  HarmonicityReport rep;
  double vol = dom.cell_volume();
  for (std::size_t s = 0; s < n; ++s) {
    if (!in_set[s] || !interior(s)) continue;
    rep.dnu += site_norm_sq(dnu, s) * vol;
    rep.dtnu += site_norm_sq(dtnu, s) * vol;
    rep.nu_scale += site_norm_sq(nu, s) * vol;
  }
  rep.dnu = std::sqrt(rep.dnu);
  rep.dtnu = std::sqrt(rep.dtnu);
  rep.nu_scale = std::sqrt(rep.nu_scale);
  return rep;
}

double lattice_ball_mass(const FormField& density, const Point& center,
                         double rho) {
  const Domain& dom = density.dom;
  std::size_t n = dom.site_count();
  double r2 = rho * rho, acc = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    if (dom.dist_sq(dom.position(dom.site_coords(s)), center) <= r2)
      acc += *density.at(s, 0);
  }
  return acc * dom.cell_volume();
}

namespace {

struct MassScanner {
  const FormField& w;
  std::vector<Point> pos;

  explicit MassScanner(const FormField& w_) : w(w_) {
    pos.reserve(w.dom.site_count());
    for (std::size_t s = 0; s < w.dom.site_count(); ++s)
      pos.push_back(w.dom.position(w.dom.site_coords(s)));
  }

  double mass(std::size_t p, double rho) const {
    double r2 = rho * rho, acc = 0.0;
    for (std::size_t s = 0; s < pos.size(); ++s)
      if (w.dom.dist_sq(pos[p], pos[s]) <= r2) acc += *w.at(s, 0);
    return acc * w.dom.cell_volume();
  }

  double worst(double rho) const {
    double m = 0.0;
    for (std::size_t p = 0; p < pos.size(); ++p)
      m = std::max(m, mass(p, rho));
    return m;
  }
};

}  // namespace

ThetaSet theta_construct(const FormField& w_sq, const AnalysisParams& par,
                         double r_max) {
  MassScanner scan(w_sq);
  const Domain& dom = w_sq.dom;
  double th = 1.0 / (8.0 * par.c * par.c);
  ThetaSet out;
  if (scan.worst(r_max) < th) {
    out.r0 = r_max;
    return out;
  }
  double lo = 0.0, hi = r_max;
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    if (scan.worst(mid) < th)
      lo = mid;
    else
      hi = mid;
  }
  // Lattice masses jump; take the first radius at which the worst ball
  // reaches the threshold so the base round is nonempty.
  out.r0 = hi;

  auto add_round = [&](double rk, double sep) {
    // Candidates ordered by descending mass, then site index.
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t p = 0; p < scan.pos.size(); ++p) {
      double m = scan.mass(p, rk);
      if (m >= th * (1.0 - 1e-12)) cand.push_back({m, p});
    }
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    int added = 0;
    double sep2 = sep * sep;
    for (auto& [m, p] : cand) {
      bool ok = true;
      for (std::size_t q : out.points)
        if (dom.dist_sq(scan.pos[p], scan.pos[q]) < sep2) {
          ok = false;
          break;
        }
      if (ok) {
        out.points.push_back(p);
        out.radii.push_back(rk);
        ++added;
      }
    }
    return added;
  };

  add_round(out.r0, 2.0 * out.r0);
  for (int k = 0;; ++k) {
    double rk = std::ldexp(out.r0, k + 1);  // 2^{k+1} r0
    if (rk > r_max) break;
    add_round(rk, 2.0 * rk);
    out.rounds = k + 1;
  }
  return out;
}

std::vector<char> theta_detect(const std::vector<FormField>& w_sq_seq,
                               const std::vector<double>& radii,
                               double threshold, double tail_frac) {
  const Domain& dom = w_sq_seq.front().dom;
  std::size_t n = dom.site_count();
  double r_min = *std::min_element(radii.begin(), radii.end());
  std::size_t tail_start = static_cast<std::size_t>(
      std::floor((1.0 - tail_frac) * w_sq_seq.size()));
  std::vector<char> flagged(n, 0);
  std::vector<MassScanner> scans;
  for (std::size_t i = tail_start; i < w_sq_seq.size(); ++i)
    scans.emplace_back(w_sq_seq[i]);
  for (std::size_t p = 0; p < n; ++p) {
    double tail_sup = 0.0;
    for (const MassScanner& sc : scans)
      tail_sup = std::max(tail_sup, sc.mass(p, r_min));
    flagged[p] = tail_sup >= threshold ? 1 : 0;
  }
  return flagged;
}

FormField limsup_abs(const std::vector<FormField>& seq, double tail_frac) {
  const Domain& dom = seq.front().dom;
  std::size_t n = dom.site_count();
  FormField out(dom, 0, ValueKind::Real);
  std::size_t tail_start =
      static_cast<std::size_t>(std::floor((1.0 - tail_frac) * seq.size()));
  for (std::size_t s = 0; s < n; ++s) {
    double m = 0.0;
    for (std::size_t i = tail_start; i < seq.size(); ++i)
      m = std::max(m, std::sqrt(site_norm_sq(seq[i], s)));
    *out.at(s, 0) = m;
  }
  return out;
}

std::vector<char> zero_mask(const FormField& abs_field, double eps) {
  std::size_t n = abs_field.dom.site_count();
  std::vector<char> mask(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    mask[s] = *abs_field.at(s, 0) <= eps ? 1 : 0;
  return mask;
}

double dist_to_mask(const Domain& dom, std::size_t site,
                    const std::vector<char>& mask) {
  Point x = dom.position(dom.site_coords(site));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < mask.size(); ++s) {
    if (!mask[s]) continue;
    best = std::min(best, dom.dist_sq(x, dom.position(dom.site_coords(s))));
  }
  return std::sqrt(best);
}

HolderFit holder_fit(const FormField& abs_field,
                     const std::vector<char>& z_mask,
                     const std::vector<double>& deltas) {
  const Domain& dom = abs_field.dom;
  std::size_t n = dom.site_count();
  std::vector<double> dist(n);
  for (std::size_t s = 0; s < n; ++s) dist[s] = dist_to_mask(dom, s, z_mask);

  std::vector<double> lx, ly;
  for (double d : deltas) {
    double sup = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      if (dist[s] >= d && dist[s] < 2.0 * d)
        sup = std::max(sup, *abs_field.at(s, 0));
    if (sup > 0.0) {
      lx.push_back(std::log(d));
      ly.push_back(std::log(sup));
    }
  }
  HolderFit fit;
  if (lx.size() < 2) return fit;
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  fit.constant = std::exp(my - fit.exponent * mx);
  return fit;
}

}  // namespace kw
