#include <doctest.h>

#include <random>

#include "nullwave/builtins.hpp"
#include "nullwave/error.hpp"
#include "nullwave/fields.hpp"
#include "nullwave/kerr.hpp"

using namespace nullwave;

namespace {

ScalarField field(std::function<cplx(const MinkVec&)> fn, std::string label = "f") {
  ScalarField f;
  f.label = std::move(label);
  f.domain.lo = {-2, -2, -2, -2};
  f.domain.hi = {2, 2, 2, 2};
  f.evaluate = std::move(fn);
  return f;
}

double diff(const SpinMat& a, const SpinMat& b) { return (a - b).norm(); }

SpinMat mat(cplx a, cplx b, cplx c, cplx d) {
  SpinMat m;
  m.m = {{{a, b}, {c, d}}};
  return m;
}

const MinkVec kX{0.3, -0.2, 0.5, 0.1};

}  // namespace

TEST_CASE("spinor_gradient examples") {
  for (const auto& scheme : {Scheme::analytic(), Scheme::central()}) {
    CHECK(diff(spinor_gradient(builtin_field("u"), kX, scheme), mat(0, 0, 0, kSqrt2)) < 1e-10);
    CHECK(diff(spinor_gradient(builtin_field("q"), kX, scheme), mat(0, kSqrt2, 0, 0)) < 1e-10);
  }
  const auto c = field([](const MinkVec&) { return cplx(3.0, 1.0); });
  CHECK(spinor_gradient(c, kX, Scheme::central()).norm() == 0.0);
}

TEST_CASE("spinor_gradient leaves the domain") {
  auto f = builtin_field("q");
  f.analytic_gradient = nullptr;
  f.domain.lo = {-1, -1, -1, -1};
  f.domain.hi = {1, 1, 1, 1};
  try {
    spinor_gradient(f, {1.0, 0, 0, 0}, Scheme::central());
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfDomain);
  }
}

TEST_CASE("semiconformality_residual examples") {
  CHECK(std::abs(semiconformality_residual(builtin_field("q"), kX, Scheme::analytic())) == 0.0);
  CHECK(std::abs(semiconformality_residual(builtin_field("u"), kX, Scheme::analytic())) < 1e-15);
  CHECK(std::abs(semiconformality_residual(builtin_field("t"), kX, Scheme::analytic()) - 0.5) < 1e-15);
}

TEST_CASE("wave_residual examples") {
  CHECK(std::abs(wave_residual(builtin_field("q"), kX, Scheme::central())) < 1e-9);
  const auto a = field([](const MinkVec& x) { return cplx(x.t * x.t + x.x1 * x.x1); });
  CHECK(std::abs(wave_residual(a, kX, Scheme::central())) < 1e-6);
  const auto b = field([](const MinkVec& x) { return cplx(x.t * x.t); });
  CHECK(std::abs(wave_residual(b, kX, Scheme::central()) - 2.0) < 1e-6);
}

TEST_CASE("central differences converge at second order") {
  // f = exp(t + i x1) sin(x2) x3, with its exact gradient
  const auto f = field([](const MinkVec& x) {
    return std::exp(cplx(x.t, x.x1)) * std::sin(x.x2) * x.x3;
  });
  const MinkVec x{0.2, 0.4, -0.3, 0.7};
  const cplx e = std::exp(cplx(x.t, x.x1));
  const Gradient4 exact{e * std::sin(x.x2) * x.x3, kI * e * std::sin(x.x2) * x.x3,
                        e * std::cos(x.x2) * x.x3, e * std::sin(x.x2)};
  std::vector<double> errs;
  for (double h : {1e-1, 5e-2, 2.5e-2}) {
    const Gradient4 g = field_gradient(f, x, Scheme::central(h));
    double err = 0.0;
    for (int a = 0; a < 4; ++a) err = std::max(err, std::abs(g[a] - exact[a]));
    errs.push_back(err);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double ratio = errs[i - 1] / errs[i];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("factorize_gradient examples") {
  const auto a = factorize_gradient(mat(0, 0, 0, kSqrt2));
  CHECK(std::abs(a.xi.c0) < 1e-15);
  CHECK(std::abs(a.xi.c1 - 1.0) < 1e-15);
  CHECK(std::abs(a.eta.c0) < 1e-15);
  CHECK(std::abs(a.eta.c1 - kSqrt2) < 1e-15);
  CHECK(a.xi.variance == Variance::LowerUnprimed);
  CHECK(a.eta.variance == Variance::LowerPrimed);
  const auto b = factorize_gradient(mat(0, kSqrt2, 0, 0));
  CHECK(std::abs(b.xi.c0 - 1.0) < 1e-15);
  CHECK(std::abs(b.xi.c1) < 1e-15);
  CHECK(std::abs(b.eta.c0) < 1e-15);
  CHECK(std::abs(b.eta.c1 - kSqrt2) < 1e-15);
  try {
    factorize_gradient(mat(1, 0, 0, 1));
    FAIL("expected NotRankOne");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRankOne);
  }
  try {
    factorize_gradient(mat(0, 0, 0, 0));
    FAIL("expected ZeroMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroMatrix);
  }
}

TEST_CASE("factorize_gradient inverts outer products") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Spinor xi{{u(rng), u(rng)}, {u(rng), u(rng)}, Variance::LowerUnprimed};
    const Spinor eta{{u(rng), u(rng)}, {u(rng), u(rng)}, Variance::LowerPrimed};
    const SpinMat m = outer(xi, eta, MatRole::Gradient);
    const auto f = factorize_gradient(m);
    worst = std::max(worst, diff(outer(f.xi, f.eta), m) / m.norm());
    CHECK(wedge_rel(f.xi, xi) < 1e-10);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("spinor_pde_residuals examples") {
  SpinorFieldPair constant;
  constant.domain = field(nullptr).domain;
  constant.xi = [](const MinkVec&) { return Spinor{1, 0, Variance::UpperUnprimed}; };
  constant.eta = [](const MinkVec&) { return Spinor{0, 1, Variance::UpperPrimed}; };
  for (const auto& r : spinor_pde_residuals(constant, kX)) CHECK(std::abs(r) == 0.0);

  SpinorFieldPair lin = constant;
  lin.xi = [](const MinkVec& x) { return Spinor{x.t, 1, Variance::UpperUnprimed}; };
  const auto r = spinor_pde_residuals(lin, kX);
  // nabla_{11'} t and nabla_{00'} t survive
  for (int k = 0; k < 8; ++k) {
    const double want = (k == 2 || k == 5) ? kInvSqrt2 : 0.0;
    CHECK(std::abs(std::abs(r[k]) - want) < 1e-9);
  }
}

TEST_CASE("kerr pair satisfies the spinor equations") {
  const auto T = kerr_basic_triple();
  const auto pair = kerr_pair(T, kerr_basic_domain());
  for (const MinkVec& x : {MinkVec{0, 0, 1, 0}, MinkVec{0.1, -0.1, 0.9, 0.05},
                           MinkVec{-0.15, 0.12, 1.1, -0.1}}) {
    for (const auto& r : spinor_pde_residuals(pair, x)) CHECK(std::abs(r) <= 1e-6);
  }
}

TEST_CASE("closedness_check examples") {
  const Box dom = field(nullptr).domain;
  const OneFormField c{[](const MinkVec&) { return std::array<cplx, 4>{1, -1, 0, 0}; }, dom};
  CHECK(closedness_check(c, kX).max_abs() == 0.0);

  const OneFormField a{[](const MinkVec& x) { return std::array<cplx, 4>{x.x1, x.t, 0, 0}; }, dom};
  CHECK(closedness_check(a, kX).max_abs() < 1e-10);

  const OneFormField b{[](const MinkVec& x) { return std::array<cplx, 4>{x.x1, 0, 0, 0}; }, dom};
  const auto r = closedness_check(b, kX);
  CHECK(std::abs(r.curl[0] - 1.0) < 1e-10);
  for (int k = 1; k < 6; ++k) CHECK(std::abs(r.curl[k]) < 1e-10);
  CHECK(std::abs(r.div) < 1e-10);
}

TEST_CASE("gradient pair gives a closed divergence-free 1-form") {
  const auto f = builtin_field("kerr-basic");
  const auto theta = one_form_of(gradient_pair(f, Scheme::analytic()));
  CHECK(closedness_check(theta, {0.05, 0.02, 1.0, -0.03}).max_abs() < 1e-6);
}

TEST_CASE("builtin null solutions on a 9^3 x 9 grid") {
  for (const char* name : {"u", "q", "kerr-basic", "surface-basic"}) {
    const auto f = builtin_field(name);
    ScanOptions opts;
    opts.spinor_pde = false;
    const auto rep = scan_null_solution(f, default_grid(f, 9), opts);
    CHECK(rep.records.size() == 6561u);
    for (const auto& r : rep.records) {
      REQUIRE(r.status == PointStatus::Ok);
      CHECK(r.semiconformality <= 1e-6);
      CHECK(r.wave <= 1e-6);
    }
  }
}

TEST_CASE("report aggregates match a recomputation") {
  const auto f = builtin_field("kerr-basic");
  const auto rep = scan_null_solution(f, default_grid(f, 3));
  const auto stats = rep.aggregate();
  const auto& cols = ResidualReport::residual_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    double mx = 0.0, sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : rep.records) {
      const double v = ResidualReport::column_value(r, i);
      if (r.status != PointStatus::Ok || !std::isfinite(v)) continue;
      mx = std::max(mx, v);
      sum += v;
      ++n;
    }
    CHECK(stats[i].count == n);
    CHECK(stats[i].max == mx);
    if (n) CHECK(stats[i].mean == doctest::Approx(sum / n));
  }
}

TEST_CASE("grid order is lexicographic with x3 fastest") {
  GridSpec g;
  g.min = {0, 0, 0, 0};
  g.max = {1, 1, 1, 1};
  g.count = {2, 2, 2, 3};
  const auto p = g.points();
  REQUIRE(p.size() == 24u);
  CHECK(p[0] == MinkVec{0, 0, 0, 0});
  CHECK(p[1] == MinkVec{0, 0, 0, 0.5});
  CHECK(p[3] == MinkVec{0, 0, 1, 0});
  CHECK(p[23] == MinkVec{1, 1, 1, 1});
}

TEST_CASE("zero gradient points are reported, not failed") {
  const auto f = field([](const MinkVec&) { return cplx(1.0); });
  const auto rep = scan_null_solution(f, GridSpec::inside(f.domain, 0.5, 3), ScanOptions{Scheme::central()});
  for (const auto& r : rep.records) CHECK(r.status == PointStatus::ZeroGradient);
}
