#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kwflow/calculus.hpp"
#include "kwflow/fields.hpp"
#include "kwflow/limits.hpp"
#include "kwflow/synth.hpp"

using namespace kw;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Two-valued square-root model about the line x0 = x1 = 1/2 of a 3-torus:
// the fiber direction rotates at half the angular rate, so the section is
// defined only up to sign, while the product 1-form is single-valued.
void fill_half_twist(FormField& a, FormField& sigma) {
  const Domain& dom = a.dom;
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    double u = x[0] - 0.5, v = x[1] - 0.5;
    double rho = std::sqrt(u * u + v * v), th = std::atan2(v, u);
    LieVec sg{{std::cos(th / 2), std::sin(th / 2), 0}};
    sigma.set_lie(s, 0, sg);
    a.set_lie(s, 0, (std::sqrt(rho) * std::cos(th / 2)) * sg);
    a.set_lie(s, 1, (-std::sqrt(rho) * std::sin(th / 2)) * sg);
  }
}

FormField random_lie_form(const Domain& dom, int degree, std::uint64_t seed,
                          double amp) {
  FormField f(dom, degree, ValueKind::Lie);
  std::mt19937_64 eng(seed);
  for (double& v : f.data) v = amp * sym_uniform(eng);
  return f;
}

Sym3 random_sym3(std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Sym3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) t.m[i][j] = t.m[j][i] = sym_uniform(eng);
  return t;
}

}  // namespace

TEST_CASE("gram endomorphism matches hand-built examples and trace") {
  Domain dom = torus3(4);
  FormField a(dom, 1, ValueKind::Lie);
  std::size_t s0 = 7;
  a.set_lie(s0, 0, LieVec{{1, 0, 0}});
  Sym3 t = gram_endomorphism(a, s0);
  CHECK(t.m[0][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.m[1][1] == 0.0);
  CHECK(t.m[2][2] == 0.0);
  CHECK(t.m[0][1] == 0.0);

  double eps = 0.3;
  a.set_lie(s0, 1, LieVec{{0, eps, 0}});
  t = gram_endomorphism(a, s0);
  CHECK(t.m[0][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.m[1][1] == doctest::Approx(eps * eps).epsilon(1e-15));
  CHECK(t.m[2][2] == 0.0);

  FormField b = random_lie_form(dom, 1, 3, 0.9);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Sym3 g = gram_endomorphism(b, s);
    double tr = g.m[0][0] + g.m[1][1] + g.m[2][2];
    CHECK(tr == doctest::Approx(site_norm_sq(b, s)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form symmetric eigensolve satisfies matrix invariants") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Sym3 t = random_sym3(seed);
    Eig3 e = sym3_eig(t);
    CHECK(e.val[0] >= e.val[1]);
    CHECK(e.val[1] >= e.val[2]);
    double tr = t.m[0][0] + t.m[1][1] + t.m[2][2];
    double det = t.m[0][0] * (t.m[1][1] * t.m[2][2] - t.m[1][2] * t.m[2][1]) -
                 t.m[0][1] * (t.m[1][0] * t.m[2][2] - t.m[1][2] * t.m[2][0]) +
                 t.m[0][2] * (t.m[1][0] * t.m[2][1] - t.m[1][1] * t.m[2][0]);
    CHECK(e.val[0] + e.val[1] + e.val[2] == doctest::Approx(tr).epsilon(1e-10));
    CHECK(e.val[0] * e.val[1] * e.val[2] ==
          doctest::Approx(det).epsilon(1e-8));
    for (int k = 0; k < 3; ++k) {
      LieVec r = sym3_apply(t, e.vec[k]) - e.val[k] * e.vec[k];
      CHECK(std::sqrt(norm_sq(r)) < 1e-9 * (1.0 + std::abs(e.val[k])));
      CHECK(norm_sq(e.vec[k]) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  // diagonal fast path
  Sym3 d;
  d.m[0][0] = -1.0;
  d.m[1][1] = 5.0;
  d.m[2][2] = 2.0;
  Eig3 e = sym3_eig(d);
  CHECK(e.val[0] == 5.0);
  CHECK(e.val[1] == 2.0);
  CHECK(e.val[2] == -1.0);
  CHECK(e.vec[0][1] == 1.0);
}

TEST_CASE("rank-one split satisfies the four pointwise identities") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Domain dom = torus3(5);
    FormField a = random_lie_form(dom, 1, seed, 1.0);
    Decomposition dec = decompose(a);
    FormField waa = a_wedge_a(a);
    FormField wff = a_wedge_a(dec.afrak);
    int checked = 0;
    for (std::size_t s = 0; s < dom.site_count(); ++s) {
      if (*dec.gap.at(s, 0) < 0.1) continue;
      ++checked;
      // top eigenvalue equals |nu|^2
      double nu2 = 0.0;
      for (int mu = 0; mu < 3; ++mu) nu2 += *dec.nu.at(s, mu) * *dec.nu.at(s, mu);
      double lam = *dec.lambda.at(s, 0);
      CHECK(std::abs(lam - nu2) <= 1e-13 * (1.0 + lam));
      LieVec sig = dec.sigma.lie(s, 0);
      // remainder orthogonal to the section, fiberwise
      LieVec pair{};
      for (int mu = 0; mu < 3; ++mu) {
        CHECK(std::abs(inner(sig, dec.afrak.lie(s, mu))) < 1e-12);
        pair += *dec.nu.at(s, mu) * dec.afrak.lie(s, mu);
      }
      // metric pairing of nu with the remainder vanishes
      CHECK(std::sqrt(norm_sq(pair)) < 1e-12);
      // wedge-square splits into mixed and remainder parts
      double lhs = site_norm_sq(waa, s);
      double afrak2 = site_norm_sq(dec.afrak, s);
      double rhs = 4.0 * nu2 * afrak2 + site_norm_sq(wff, s);
      CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + lhs));
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("rank-one split on the axis-aligned examples") {
  Domain dom = torus3(4);
  FormField a(dom, 1, ValueKind::Lie);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    a.set_lie(s, 0, LieVec{{1, 0, 0}});
    a.set_lie(s, 1, LieVec{{0, 0.1, 0}});
  }
  Decomposition dec = decompose(a);
  FormField waa = a_wedge_a(a);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    CHECK(*dec.lambda.at(s, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(inner(dec.sigma.lie(s, 0), LieVec{{1, 0, 0}})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::sqrt(site_norm_sq(dec.afrak, s)) ==
          doctest::Approx(0.1).epsilon(1e-12));
    // |a ^ a|^2 = 4 lambda |afrak|^2 = 0.04 and matches the direct wedge
    CHECK(site_norm_sq(waa, s) == doctest::Approx(0.04).epsilon(1e-12));
  }
}

TEST_CASE("split direction is exactly invariant under field scaling") {
  Domain dom = torus3(4);
  FormField a = random_lie_form(dom, 1, 11, 0.8);
  FormField b = a;
  for (double& v : b.data) v *= 2.0;  // power of two: exact float scaling
  Decomposition da = decompose(a);
  Decomposition db = decompose(b);
  for (std::size_t i = 0; i < da.sigma.data.size(); ++i)
    CHECK(da.sigma.data[i] == db.sigma.data[i]);
}

TEST_CASE("half-twist model splits with vanishing remainder") {
  Domain dom = torus3(24);
  FormField a(dom, 1, ValueKind::Lie), sig(dom, 0, ValueKind::Lie);
  fill_half_twist(a, sig);
  Decomposition dec = decompose(a);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    double u = x[0] - 0.5, v = x[1] - 0.5;
    double rho = std::sqrt(u * u + v * v);
    if (rho < 0.15) continue;  // tube around the branch line
    CHECK(std::sqrt(site_norm_sq(dec.afrak, s)) < 1e-10);
    // recovered section matches the model direction up to sign
    CHECK(std::abs(inner(dec.sigma.lie(s, 0), sig.lie(s, 0))) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // scalar part recovers the two-valued form up to the same sign
    double flip = inner(dec.sigma.lie(s, 0), sig.lie(s, 0)) >= 0 ? 1.0 : -1.0;
    double th = std::atan2(v, u);
    CHECK(*dec.nu.at(s, 0) ==
          doctest::Approx(flip * std::sqrt(rho) * std::cos(th / 2))
              .epsilon(1e-10));
  }
}

TEST_CASE("sign cocycle has unit holonomy for a consistent section") {
  Domain dom = torus3(16);
  FormField sigma(dom, 0, ValueKind::Lie);
  for (std::size_t s = 0; s < dom.site_count(); ++s)
    sigma.set_lie(s, 0, LieVec{{0.6, 0.8, 0}});
  std::vector<BallSpec> cover;
  for (int k = 0; k < 6; ++k) {
    double th = 2.0 * kPi * k / 6;
    cover.push_back(BallSpec{
        Point{0.5 + 0.25 * std::cos(th), 0.5 + 0.25 * std::sin(th), 0.5, 0},
        0.2});
  }
  CocycleResult c = sign_cocycle(sigma, cover, {});
  CHECK(c.consistent);
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (std::size_t j = 0; j < cover.size(); ++j) {
      CHECK(c.iota[i][j] == c.iota[j][i]);
      if (c.iota[i][j] != 0) CHECK(c.iota[i][j] == 1);
      for (std::size_t k = 0; k < cover.size(); ++k)
        if (c.iota[i][j] != 0 && c.iota[j][k] != 0 && c.iota[k][i] != 0)
          CHECK(c.iota[i][j] * c.iota[j][k] * c.iota[k][i] == 1);
    }
  CHECK(loop_holonomy(c, {0, 1, 2, 3, 4, 5}) == 1);
}

TEST_CASE("half-twist holonomy is -1 and stable under cover refinement") {
  Domain dom = torus3(24);
  FormField a(dom, 1, ValueKind::Lie), sigma(dom, 0, ValueKind::Lie);
  fill_half_twist(a, sigma);
  std::vector<char> masked(dom.site_count(), 0);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    double u = x[0] - 0.5, v = x[1] - 0.5;
    if (u * u + v * v < 0.1 * 0.1) masked[s] = 1;
  }
  // loops of balls encircling the branch line once, at three refinements
  for (int nb : {8, 12, 16, 24}) {
    std::vector<BallSpec> cover;
    std::vector<int> chain;
    for (int k = 0; k < nb; ++k) {
      double th = 2.0 * kPi * k / nb;
      cover.push_back(BallSpec{
          Point{0.5 + 0.3 * std::cos(th), 0.5 + 0.3 * std::sin(th), 0.5, 0},
          0.15});
      chain.push_back(k);
    }
    CocycleResult c = sign_cocycle(sigma, cover, masked);
    CHECK(c.consistent);
    CHECK(loop_holonomy(c, chain) == -1);
    for (std::size_t i = 0; i < cover.size(); ++i)
      for (std::size_t j = 0; j < cover.size(); ++j)
        CHECK(c.iota[i][j] == c.iota[j][i]);
  }
  // contractible loop away from the branch line: holonomy +1
  std::vector<BallSpec> cover;
  for (int k = 0; k < 4; ++k) {
    double th = 2.0 * kPi * k / 4;
    cover.push_back(
        BallSpec{Point{0.82 + 0.04 * std::cos(th), 0.5 + 0.04 * std::sin(th),
                       0.5, 0},
                 0.08});
  }
  CocycleResult c = sign_cocycle(sigma, cover, masked);
  CHECK(c.consistent);
  CHECK(loop_holonomy(c, {0, 1, 2, 3}) == 1);
}

TEST_CASE("harmonicity report vanishes on linear scalar parts") {
  Domain dom = torus3(16);
  BallSpec ball{Point{0.5, 0.5, 0.5, 0}, 0.2};
  // constant 1-form
  FormField a(dom, 1, ValueKind::Lie), sigma(dom, 0, ValueKind::Lie);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    sigma.set_lie(s, 0, LieVec{{1, 0, 0}});
    a.set_lie(s, 0, LieVec{{0.7, 0, 0}});
  }
  HarmonicityReport rep = harmonicity_check(a, sigma, ball, {});
  CHECK(rep.dnu < 1e-12);
  CHECK(rep.dtnu < 1e-12);
  CHECK(rep.nu_scale > 0.0);
  // nu = d(x0 x1): centered stencils are exact on linear components
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    a.set_lie(s, 0, LieVec{{x[1] - 0.5, 0, 0}});
    a.set_lie(s, 1, LieVec{{x[0] - 0.5, 0, 0}});
  }
  rep = harmonicity_check(a, sigma, ball, {});
  CHECK(rep.dnu < 1e-12);
  CHECK(rep.dtnu < 1e-12);
}

TEST_CASE("half-twist scalar part is harmonic at second order") {
  double dn[2], dt[2];
  int idx = 0;
  for (int n : {32, 64}) {
    Domain dom = torus3(n);
    FormField a(dom, 1, ValueKind::Lie), sigma(dom, 0, ValueKind::Lie);
    fill_half_twist(a, sigma);
    BallSpec ball{Point{0.8, 0.5, 0.5, 0}, 0.18};
    HarmonicityReport rep = harmonicity_check(a, sigma, ball, {});
    dn[idx] = rep.dnu / rep.nu_scale;
    dt[idx] = rep.dtnu / rep.nu_scale;
    ++idx;
  }
  CHECK(dn[0] / dn[1] > 3.0);
  CHECK(dn[0] / dn[1] < 5.0);
  CHECK(dt[0] / dt[1] > 3.0);
  CHECK(dt[0] / dt[1] < 5.0);
}

TEST_CASE("concentration set is empty below the mass threshold") {
  Domain dom = torus3(12);
  AnalysisParams par;
  FormField w(dom, 0, ValueKind::Real);
  double th = 1.0 / (8.0 * par.c * par.c);
  for (double& v : w.data) v = 0.1 * th;  // total mass well under threshold
  ThetaSet ts = theta_construct(w, par, 0.4);
  CHECK(ts.points.empty());
  CHECK(ts.r0 == 0.4);
}

TEST_CASE("concentration set finds isolated mass bumps") {
  Domain dom = torus3(16);
  AnalysisParams par;
  double th = 1.0 / (8.0 * par.c * par.c);
  Point c1{0.31, 0.52, 0.68, 0};
  Point c2{0.81, 0.02, 0.18, 0};

  // single bump of mass 1.5x threshold
  FormField w(dom, 0, ValueKind::Real);
  double tot = 0.0;
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    *w.at(s, 0) =
        std::exp(-dom.dist_sq(dom.position(dom.site_coords(s)), c1) / 0.01);
    tot += *w.at(s, 0);
  }
  for (double& v : w.data) v *= 1.5 * th / (tot * dom.cell_volume());
  ThetaSet ts = theta_construct(w, par, 0.4);
  REQUIRE(ts.points.size() == 1);
  Point got = dom.position(dom.site_coords(ts.points[0]));
  CHECK(std::sqrt(dom.dist_sq(got, c1)) < 2.0 * dom.spacing(0));

  // two far-separated bumps
  FormField w2(dom, 0, ValueKind::Real);
  double t1 = 0.0, t2 = 0.0;
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    t1 += std::exp(-dom.dist_sq(x, c1) / 0.01);
    t2 += std::exp(-dom.dist_sq(x, c2) / 0.01);
  }
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    *w2.at(s, 0) = 1.5 * th *
                   (std::exp(-dom.dist_sq(x, c1) / 0.01) / t1 +
                    std::exp(-dom.dist_sq(x, c2) / 0.01) / t2) /
                   dom.cell_volume();
  }
  ThetaSet t2set = theta_construct(w2, par, 0.4);
  REQUIRE(t2set.points.size() == 2);
  double cap = par.E * par.E * par.c * par.c;
  CHECK(static_cast<double>(t2set.points.size()) <= cap);
  double d1 = 1e9, d2 = 1e9;
  for (std::size_t p : t2set.points) {
    Point x = dom.position(dom.site_coords(p));
    d1 = std::min(d1, std::sqrt(dom.dist_sq(x, c1)));
    d2 = std::min(d2, std::sqrt(dom.dist_sq(x, c2)));
  }
  CHECK(d1 < 2.0 * dom.spacing(0));
  CHECK(d2 < 2.0 * dom.spacing(0));
}

TEST_CASE("curvature mass away from the set obeys the two-term bound") {
  Domain dom = torus3(12);
  double rc = 0.8;
  Configuration c(dom, rc, 0.5);
  Point ctr{0.4, 0.55, 0.6, 0};
  std::mt19937_64 eng(23);
  LieVec cA[3], ca[3];
  for (int mu = 0; mu < 3; ++mu)
    for (int i = 0; i < 3; ++i) {
      cA[mu][i] = sym_uniform(eng);
      ca[mu][i] = sym_uniform(eng);
    }
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    double g = 2.2 * std::exp(-dom.dist_sq(dom.position(dom.site_coords(s)),
                                           ctr) /
                              (0.12 * 0.12));
    for (int mu = 0; mu < 3; ++mu) {
      c.A.set_lie(s, mu, g * cA[mu]);
      c.a.set_lie(s, mu, g * ca[mu]);
    }
  }
  FormField F = curvature(c.A);
  FormField waa = a_wedge_a(c.a);
  FormField wf = F - (rc * rc) * waa;
  FormField wdens = density_norm_sq(wf);
  FormField fdens = density_norm_sq(F);
  FormField adens = density_norm_sq(waa);

  AnalysisParams par;
  ThetaSet ts = theta_construct(wdens, par, 0.3);
  REQUIRE(!ts.points.empty());
  CHECK(static_cast<double>(ts.points.size()) <=
        par.E * par.E * par.c * par.c);

  double c2 = 1.0 / (par.c * par.c);
  double kappa = 4.0;
  std::mt19937_64 pick(77);
  int accepted = 0;
  while (accepted < 100) {
    std::size_t p = pick() % dom.site_count();
    double r = ts.r0 * (0.2 + 0.7 * sym_uniform(pick) * 0.5 + 0.35);
    Point x = dom.position(dom.site_coords(p));
    bool far = true;
    for (std::size_t q : ts.points)
      if (dom.dist_sq(x, dom.position(dom.site_coords(q))) <
          kappa * kappa * r * r)
        far = false;
    if (!far) continue;
    ++accepted;
    double lhs = lattice_ball_mass(fdens, x, r);
    double rhs = 2.0 * std::pow(rc, 4) * lattice_ball_mass(adens, x, r) +
                 0.25 * c2;
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("membership detector flags only super-threshold bumps") {
  Domain dom = torus3(12);
  Point ctr{0.5, 0.5, 0.5, 0};
  std::vector<FormField> seq;
  for (int k = 0; k < 4; ++k) {
    FormField w(dom, 0, ValueKind::Real);
    for (std::size_t s = 0; s < dom.site_count(); ++s)
      *w.at(s, 0) = 5.0 * std::exp(
          -dom.dist_sq(dom.position(dom.site_coords(s)), ctr) / 0.01);
    seq.push_back(w);
  }
  double bump_mass = lattice_ball_mass(seq[0], ctr, 0.15);
  std::vector<char> hit = theta_detect(seq, {0.15}, 0.5 * bump_mass);
  std::size_t center_site = 0;
  double best = 1e9;
  int flagged = 0;
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    double d = dom.dist_sq(dom.position(dom.site_coords(s)), ctr);
    if (d < best) {
      best = d;
      center_site = s;
    }
    flagged += hit[s];
  }
  CHECK(hit[center_site] == 1);
  CHECK(flagged > 0);
  CHECK(flagged < static_cast<int>(dom.site_count()) / 4);

  // threshold above the bump mass: nothing flagged
  std::vector<char> none = theta_detect(seq, {0.15}, 2.0 * bump_mass);
  for (char f : none) CHECK(f == 0);

  // flat sequence: nothing flagged at any positive threshold
  std::vector<FormField> flat(3, FormField(dom, 0, ValueKind::Real));
  std::vector<char> empty = theta_detect(flat, {0.15}, 1e-12);
  for (char f : empty) CHECK(f == 0);
}

TEST_CASE("tail limsup field realizes the expected maxima") {
  Domain dom = torus3(6);
  FormField a = random_lie_form(dom, 1, 31, 1.0);
  // constant family
  std::vector<FormField> fam(4, a);
  FormField ls = limsup_abs(fam);
  for (std::size_t s = 0; s < dom.site_count(); ++s)
    CHECK(*ls.at(s, 0) ==
          doctest::Approx(std::sqrt(site_norm_sq(a, s))).epsilon(1e-12));
  // shrinking family (1 - 1/n) a, n = 1..6: tail max is at n = 6
  std::vector<FormField> shrink;
  for (int n = 1; n <= 6; ++n) {
    FormField b = a;
    for (double& v : b.data) v *= 1.0 - 1.0 / n;
    shrink.push_back(b);
  }
  ls = limsup_abs(shrink);
  for (std::size_t s = 0; s < dom.site_count(); ++s)
    CHECK(*ls.at(s, 0) ==
          doctest::Approx((5.0 / 6.0) * std::sqrt(site_norm_sq(a, s)))
              .epsilon(1e-12));
  // alternating family: limsup is the larger member
  FormField half = a;
  for (double& v : half.data) v *= 0.5;
  std::vector<FormField> alt{a, half, a, half};
  ls = limsup_abs(alt);
  for (std::size_t s = 0; s < dom.site_count(); ++s)
    CHECK(*ls.at(s, 0) ==
          doctest::Approx(std::sqrt(site_norm_sq(a, s))).epsilon(1e-12));
}

TEST_CASE("zero mask and mask distance behave on a point mask") {
  Domain dom = torus3(8);
  FormField f(dom, 0, ValueKind::Real);
  for (double& v : f.data) v = 1.0;
  std::size_t hole = dom.site_index({2, 3, 4, 0});
  *f.at(hole, 0) = 1e-9;
  std::vector<char> mask = zero_mask(f, 1e-6);
  int count = 0;
  for (char m : mask) count += m;
  CHECK(count == 1);
  CHECK(mask[hole] == 1);
  CHECK(dist_to_mask(dom, hole, mask) == 0.0);
  std::size_t nb = dom.site_index({2, 3, 5, 0});
  CHECK(dist_to_mask(dom, nb, mask) ==
        doctest::Approx(dom.spacing(2)).epsilon(1e-12));
}

TEST_CASE("holder exponent recovers the half and unit powers") {
  Domain dom = torus3(32);
  FormField half(dom, 0, ValueKind::Real), lin(dom, 0, ValueKind::Real);
  std::vector<char> mask_line(dom.site_count(), 0),
      mask_plane(dom.site_count(), 0);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    double u = x[0] - 0.5, v = x[1] - 0.5;
    double rho = std::sqrt(u * u + v * v);
    *half.at(s, 0) = std::sqrt(rho);
    *lin.at(s, 0) = std::abs(u);
    if (rho < 0.03) mask_line[s] = 1;
    if (std::abs(u) < 0.03) mask_plane[s] = 1;
  }
  std::vector<double> deltas;
  for (double d = 0.04; d < 0.25; d *= 1.5) deltas.push_back(d);
  HolderFit hf = holder_fit(half, mask_line, deltas);
  CHECK(std::abs(hf.exponent - 0.5) < 0.05);
  HolderFit hl = holder_fit(lin, mask_plane, deltas);
  CHECK(std::abs(hl.exponent - 1.0) < 0.05);
  // no zero set inside: fit degenerates to the zero report
  std::vector<char> empty_mask(dom.site_count(), 0);
  HolderFit he = holder_fit(half, empty_mask, deltas);
  CHECK(he.exponent == 0.0);
  CHECK(he.constant == 0.0);
}
