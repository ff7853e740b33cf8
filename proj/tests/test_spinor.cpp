#include <doctest.h>

#include <random>

#include "nullwave/error.hpp"
#include "nullwave/spinor.hpp"

using namespace nullwave;

namespace {

std::mt19937_64 rng(20240611);

double uni(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
cplx cuni() { return {uni(), uni()}; }

MinkVec random_vec() { return {uni(-3, 3), uni(-3, 3), uni(-3, 3), uni(-3, 3)}; }

MinkVec random_null() {
  const double a = uni(-2, 2), b = uni(-2, 2), c = uni(-2, 2);
  const double t = std::sqrt(a * a + b * b + c * c) * (uni() < 0 ? -1.0 : 1.0);
  return {t, a, b, c};
}

double diff(const SpinMat& a, const SpinMat& b) { return (a - b).norm(); }

SpinMat mat(cplx a, cplx b, cplx c, cplx d) {
  SpinMat m;
  m.m = {{{a, b}, {c, d}}};
  return m;
}

}  // namespace

TEST_CASE("vec_to_spinmat examples") {
  CHECK(diff(vec_to_spinmat({1, 0, 0, 0}), mat(kInvSqrt2, 0, 0, kInvSqrt2)) < 1e-15);
  CHECK(vec_to_spinmat({0, 0, 0, 0}).norm() == 0.0);
  CHECK(diff(vec_to_spinmat({1, 1, 0, 0}), mat(kSqrt2, 0, 0, 0)) < 1e-15);
  // x2 + i x3 in the upper right
  CHECK(diff(vec_to_spinmat({0, 0, 1, 1}), mat(0, cplx(kInvSqrt2, kInvSqrt2), cplx(kInvSqrt2, -kInvSqrt2), 0)) < 1e-15);
}

TEST_CASE("spinmat_to_vec examples") {
  const MinkVec a = spinmat_to_vec(mat(kInvSqrt2, 0, 0, kInvSqrt2));
  CHECK(a.t == doctest::Approx(1.0));
  CHECK(std::abs(a.x1) + std::abs(a.x2) + std::abs(a.x3) < 1e-15);
  const MinkVec b = spinmat_to_vec(mat(kSqrt2, 0, 0, 0));
  CHECK(b.t == doctest::Approx(1.0));
  CHECK(b.x1 == doctest::Approx(1.0));
  try {
    spinmat_to_vec(mat(kI, 0, 0, 0));
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
}

TEST_CASE("determinant and roundtrip on random vectors") {
  double worst_det = 0.0, worst_rt = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const MinkVec v = random_vec();
    const SpinMat m = vec_to_spinmat(v);
    CHECK(m.antihermitian_norm() == 0.0);
    const double want = 0.5 * (v.t * v.t - v.x1 * v.x1 - v.x2 * v.x2 - v.x3 * v.x3);
    worst_det = std::max(worst_det, std::abs(m.det() - want) / std::max(1.0, v.euclid_norm2()));
    const MinkVec w = spinmat_to_vec(m);
    worst_rt = std::max(worst_rt, std::sqrt((w - v).euclid_norm2()) / std::sqrt(v.euclid_norm2()));
  }
  CHECK(worst_det <= 1e-12);
  CHECK(worst_rt <= 1e-14);
}

TEST_CASE("raise and lower") {
  const Spinor a = raise({1, 0, Variance::LowerUnprimed});
  CHECK(a.c0 == cplx(0.0));
  CHECK(a.c1 == cplx(-1.0));
  CHECK(a.variance == Variance::UpperUnprimed);
  const Spinor b = raise({0, 1, Variance::LowerUnprimed});
  CHECK(b.c0 == cplx(1.0));
  CHECK(b.c1 == cplx(0.0));
  for (int i = 0; i < 100; ++i) {
    const Spinor s{cuni(), cuni(), Variance::LowerPrimed};
    const Spinor r = lower(raise(s));
    CHECK(r.c0 == s.c0);
    CHECK(r.c1 == s.c1);
    CHECK(r.variance == s.variance);
  }
  CHECK_THROWS_AS(raise(Spinor{1, 0, Variance::UpperUnprimed}), Error);
  CHECK_THROWS_AS(lower(Spinor{1, 0, Variance::LowerPrimed}), Error);
}

TEST_CASE("contraction antisymmetry") {
  for (int i = 0; i < 200; ++i) {
    const Spinor xi{cuni(), cuni(), Variance::LowerUnprimed};
    CHECK(contract(xi, raise(xi)) == cplx(0.0));
    const Spinor eta{cuni(), cuni(), Variance::LowerUnprimed};
    const cplx lhs = contract(xi, raise(eta));   // xi_A eta^A
    const cplx rhs = contract(eta, raise(xi));   // eta_A xi^A = xi^A eta_A
    CHECK(std::abs(lhs + rhs) <= 1e-15);
  }
  CHECK_THROWS_AS(contract(Spinor{1, 0, Variance::LowerUnprimed}, Spinor{1, 0, Variance::UpperPrimed}),
                  Error);
}

TEST_CASE("conj swaps primedness") {
  const Spinor s = conj(Spinor{kI, 2.0, Variance::UpperUnprimed});
  CHECK(s.variance == Variance::UpperPrimed);
  CHECK(s.c0 == -kI);
}

TEST_CASE("null_decompose examples") {
  const auto a = null_decompose({1, 1, 0, 0});
  CHECK(a.lambda == doctest::Approx(kSqrt2));
  CHECK(std::abs(a.rho.c0 - 1.0) < 1e-15);
  CHECK(std::abs(a.rho.c1) < 1e-15);
  const auto b = null_decompose({1, -1, 0, 0});
  CHECK(b.lambda == doctest::Approx(kSqrt2));
  CHECK(std::abs(b.rho.c0) < 1e-15);
  CHECK(std::abs(b.rho.c1 - 1.0) < 1e-15);
  try {
    null_decompose({1, 0, 0, 0});
    FAIL("expected NotNull");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNull);
  }
  try {
    null_decompose({0, 0, 0, 0});
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
}

TEST_CASE("null_decompose reconstructs random null vectors") {
  for (int i = 0; i < 1000; ++i) {
    const MinkVec v = random_null();
    const auto d = null_decompose(v);
    const SpinMat r = outer(d.rho, conj(d.rho)) * cplx(d.lambda);
    CHECK(diff(r, vec_to_spinmat(v)) <= 1e-10);
    CHECK(d.rho.norm() == doctest::Approx(1.0));
    const cplx big = std::abs(d.rho.c0) >= std::abs(d.rho.c1) ? d.rho.c0 : d.rho.c1;
    CHECK(big.imag() == 0.0);
    CHECK(big.real() > 0.0);
  }
}

TEST_CASE("solve_annihilator examples") {
  const Spinor s1 = solve_annihilator({1, 0, Variance::LowerUnprimed}, mat(0, 0, 2, 3.0 * kI));
  CHECK(s1.c0 == cplx(-2.0));
  CHECK(s1.c1 == -3.0 * kI);
  CHECK(s1.variance == Variance::UpperPrimed);
  const Spinor s2 = solve_annihilator({0, 1, Variance::LowerUnprimed}, mat(1, 0, 0, 0));
  CHECK(s2.c0 == cplx(1.0));
  CHECK(s2.c1 == cplx(0.0));
  try {
    solve_annihilator({1, 0, Variance::LowerUnprimed}, mat(1, 0, 0, 0));
    FAIL("expected NotAnnihilated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnnihilated);
  }
}

TEST_CASE("annihilator roundtrip on random pairs") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Spinor xi{cuni(), cuni(), Variance::LowerUnprimed};
    const Spinor sigma{cuni(), cuni(), Variance::UpperPrimed};
    const SpinMat m = outer(raise(xi), sigma);
    for (int ap = 0; ap < 2; ++ap) {
      CHECK(std::abs(xi.c0 * m.m[0][ap] + xi.c1 * m.m[1][ap]) <= 1e-15);
    }
    const Spinor back = solve_annihilator(xi, m);
    worst = std::max(worst, std::abs(back.c0 - sigma.c0) + std::abs(back.c1 - sigma.c1));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("contract_full examples") {
  const SpinMat G = mat(0, 0, 0, kSqrt2);
  CHECK(contract_full(G, mat(1, 0, 0, 0)) == cplx(0.0));
  CHECK(contract_full(G, mat(0, 0, 0, 1)) == cplx(kSqrt2));
  for (int i = 0; i < 100; ++i) {
    const Spinor xi{cuni(), cuni(), Variance::LowerUnprimed};
    const Spinor eta{cuni(), cuni(), Variance::LowerPrimed};
    const Spinor up = raise(xi);
    CHECK(std::abs(contract_full(outer(xi, eta), outer(up, conj(up)))) <= 1e-14);
  }
}

TEST_CASE("gradient matrix pairs with the position matrix") {
  // contract_full(nabla f, v) = df(v) for linear f
  for (int i = 0; i < 100; ++i) {
    const std::array<cplx, 4> p{cuni(), cuni(), cuni(), cuni()};
    const MinkVec v = random_vec();
    const cplx want = p[0] * v.t + p[1] * v.x1 + p[2] * v.x2 + p[3] * v.x3;
    CHECK(std::abs(contract_full(gradient_matrix(p), vec_to_spinmat(v)) - want) <= 1e-13);
    const auto back = covector_components(gradient_matrix(p));
    for (int a = 0; a < 4; ++a) CHECK(std::abs(back[a] - p[a]) <= 1e-14);
  }
}

TEST_CASE("is_null uses a relative tolerance") {
  CHECK(is_null({1, 1, 0, 0}));
  CHECK(is_null({1e6, 1e6, 1e-4, 0}));
  CHECK_FALSE(is_null({1, 0, 0, 0}));
}
