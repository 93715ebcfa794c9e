#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "kwflow/liealg.hpp"

using namespace kw;
using cd = std::complex<double>;

namespace {

// Independent oracle: explicit 2x2 complex matrices for the basis
// sigma_j = -i * (j-th Pauli matrix).
struct Mat2 {
  cd m[2][2];
};

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

cd trace(const Mat2& a) { return a.m[0][0] + a.m[1][1]; }

const cd I{0.0, 1.0};

Mat2 basis(int j) {
  // pauli_1 = [[0,1],[1,0]], pauli_2 = [[0,-i],[i,0]], pauli_3 = [[1,0],[0,-1]]
  switch (j) {
    case 0: return Mat2{{{0.0, -I}, {-I, 0.0}}};
    case 1: return Mat2{{{0.0, -1.0}, {1.0, 0.0}}};
    default: return Mat2{{{-I, 0.0}, {0.0, I}}};
  }
}

Mat2 embed(const LieVec& v) {
  Mat2 r{};
  for (int j = 0; j < 3; ++j) {
    Mat2 b = basis(j);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) r.m[p][q] += v[j] * b.m[p][q];
  }
  return r;
}

Mat2 embed_c(const CLieVec& v) {
  Mat2 re = embed(v.re), im = embed(v.im);
  Mat2 r{};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) r.m[p][q] = re.m[p][q] + I * im.m[p][q];
  return r;
}

std::mt19937_64 eng(12345);

double u() { return std::ldexp(double(eng() >> 11), -52) * 2.0 - 1.0; }

LieVec rnd() { return LieVec{{u(), u(), u()}}; }
CLieVec rnd_c() { return CLieVec{rnd(), rnd()}; }

}  // namespace

TEST_CASE("inner product matches -1/2 trace of the matrix product") {
  for (int it = 0; it < 50; ++it) {
    LieVec a = rnd(), b = rnd();
    cd tr = trace(embed(a) * embed(b));
    CHECK(std::abs(-0.5 * tr - cd(inner(a, b))) < 1e-13);
  }
}

TEST_CASE("bracket matches the matrix commutator") {
  for (int it = 0; it < 50; ++it) {
    LieVec a = rnd(), b = rnd();
    Mat2 comm = embed(a) * embed(b) - embed(b) * embed(a);
    Mat2 dif = comm - embed(bracket(a, b));
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) CHECK(std::abs(dif.m[p][q]) < 1e-13);
  }
}

TEST_CASE("bracket is 2x the cross product and ad-invariant") {
  LieVec e1{{1, 0, 0}}, e2{{0, 1, 0}}, e3{{0, 0, 1}};
  LieVec b = bracket(e1, e2);
  CHECK(b[2] == doctest::Approx(2.0));
  CHECK(b[0] == 0.0);
  CHECK(b[1] == 0.0);
  for (int it = 0; it < 20; ++it) {
    LieVec x = rnd(), y = rnd(), z = rnd();
    // <[x,y],z> + <y,[x,z]> = 0
    CHECK(std::abs(inner(bracket(x, y), z) + inner(y, bracket(x, z))) <
          1e-12);
  }
  CHECK(std::abs(inner(e3, e3) - 1.0) < 1e-15);
}

TEST_CASE("double_ad equals [u,[q,u]] via matrices") {
  for (int it = 0; it < 20; ++it) {
    LieVec ulie = rnd(), q = rnd();
    Mat2 mu = embed(ulie), mq = embed(q);
    Mat2 inner_c = mq * mu - mu * mq;  // [q,u]
    Mat2 full = mu * inner_c - inner_c * mu;
    Mat2 dif = full - embed(double_ad(ulie, q));
    for (int p = 0; p < 2; ++p)
      for (int r = 0; r < 2; ++r) CHECK(std::abs(dif.m[p][r]) < 1e-12);
  }
}

TEST_CASE("complex-bilinear pairings against complex matrices") {
  for (int it = 0; it < 30; ++it) {
    CLieVec a = rnd_c(), b = rnd_c(), c = rnd_c();
    cd tr2 = trace(embed_c(a) * embed_c(b));
    CHECK(std::abs(-0.5 * tr2 - inner_c(a, b)) < 1e-12);
    cd tr3 = trace(embed_c(a) * embed_c(b) * embed_c(c));
    CHECK(std::abs(tr3 - trace3(a, b, c)) < 1e-12);
    Mat2 comm = embed_c(a) * embed_c(b) - embed_c(b) * embed_c(a);
    Mat2 dif = comm - embed_c(bracket_c(a, b));
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) CHECK(std::abs(dif.m[p][q]) < 1e-12);
  }
}
