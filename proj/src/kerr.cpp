#include "nullwave/kerr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nullwave/error.hpp"

namespace nullwave {

namespace {

struct Values {
  cplx f, g, h, df, dg, dh;
};

double scale_of(const Polynomial& p, cplx z) {
  return p.coeff_norm() * std::pow(std::max(1.0, std::abs(z)), std::max(p.degree(), 0));
}

Values values_at(const MeromorphicTriple& T, cplx z, bool derivatives) {
  Values v{};
  v.f = T.f(z);
  v.g = T.g(z);
  v.h = T.h(z);
  if (std::abs(T.h.num()(z)) <= 1e-14 * scale_of(T.h.num(), z)) {
    throw Error(ErrorKind::ZeroH, "h vanishes at z");
  }
  if (derivatives) {
    v.df = T.f.derivative()(z);
    v.dg = T.g.derivative()(z);
    v.dh = T.h.derivative()(z);
  }
  return v;
}

// Numerators N_j with xi_j = N_j / (2h).
std::array<cplx, 4> numerators(const Values& v) {
  const cplx F = v.f * v.f + v.g * v.g;
  return {-kI * (1.0 - F), kI * (1.0 + F), -2.0 * v.f, -2.0 * v.g};
}

cplx dot(const std::array<cplx, 4>& a, const MinkVec& x) {
  return a[0] * x.t + a[1] * x.x1 + a[2] * x.x2 + a[3] * x.x3;
}

bool admissible(const MeromorphicTriple& T, cplx z) {
  try {
    values_at(T, z, false);
    return true;
  } catch (const Error&) {
    return false;
  }
}

cplx polish(const MeromorphicTriple& T, cplx z, const MinkVec& x) {
  for (int it = 0; it < 4; ++it) {
    const cplx e = kerr_equation(T, z, x);
    const cplx d = dot(weierstrass_xi_prime(T, z), x);
    if (e == cplx(0.0) || d == cplx(0.0)) break;
    z -= e / d;
  }
  return z;
}

bool root_order(cplx a, cplx b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (std::abs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb))) return ma < mb;
  return std::arg(a) < std::arg(b);
}

}  // namespace

std::array<cplx, 4> weierstrass_xi(const MeromorphicTriple& T, cplx z) {
  const Values v = values_at(T, z, false);
  auto n = numerators(v);
  for (auto& c : n) c /= 2.0 * v.h;
  return n;
}

std::array<cplx, 4> weierstrass_xi_prime(const MeromorphicTriple& T, cplx z) {
  const Values v = values_at(T, z, true);
  const auto n = numerators(v);
  const cplx dF = 2.0 * (v.f * v.df + v.g * v.dg);
  const std::array<cplx, 4> dn{kI * dF, kI * dF, -2.0 * v.df, -2.0 * v.dg};
  std::array<cplx, 4> out{};
  for (int j = 0; j < 4; ++j) out[j] = (dn[j] * v.h - n[j] * v.dh) / (2.0 * v.h * v.h);
  return out;
}

double nullity_defect(const std::array<cplx, 4>& xi) {
  const cplx q = xi[0] * xi[0] - xi[1] * xi[1] - xi[2] * xi[2] - xi[3] * xi[3];
  double n2 = 0.0;
  for (const auto& c : xi) n2 += std::norm(c);
  return n2 == 0.0 ? std::abs(q) : std::abs(q) / n2;
}

cplx kerr_equation(const MeromorphicTriple& T, cplx z, const MinkVec& x) {
  return dot(weierstrass_xi(T, z), x) - 1.0;
}

std::vector<cplx> kerr_roots(const MeromorphicTriple& T, const MinkVec& x) {
  const RationalFn F = T.f * T.f + T.g * T.g;
  const RationalFn one = RationalFn::constant(1.0);
  // 2h (xi . x - 1)
  const RationalFn cleared = cplx(-x.t) * (kI * (one - F)) + cplx(x.x1) * (kI * (one + F)) +
                             cplx(-2.0 * x.x2) * T.f + cplx(-2.0 * x.x3) * T.g -
                             cplx(2.0) * T.h;
  const Polynomial N = cleared.num().trimmed(1e-14);
  if (N.degree() < 1) {
    throw Error(ErrorKind::DegenerateEquation, "equation does not depend on z");
  }
  std::vector<cplx> out;
  for (cplx z : poly_roots(N)) {
    if (!admissible(T, z)) continue;
    z = polish(T, z, x);
    if (!admissible(T, z)) continue;
    if (std::abs(kerr_equation(T, z, x)) > 1e-9) continue;
    out.push_back(z);
  }
  if (out.empty()) throw Error(ErrorKind::NoRootFound, "no admissible root");
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

KerrRoot kerr_solve(const MeromorphicTriple& T, const MinkVec& x, std::optional<cplx> seed,
                    int branch) {
  const auto roots = kerr_roots(T, x);
  KerrRoot out;
  out.root_count = roots.size();
  if (seed) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (std::abs(roots[i] - *seed) < std::abs(roots[best] - *seed)) best = i;
    out.branch = static_cast<int>(best);
  } else {
    if (branch < 0 || static_cast<std::size_t>(branch) >= roots.size()) {
      throw Error(ErrorKind::NoRootFound, "requested root branch does not exist here");
    }
    out.branch = branch;
  }
  out.z = roots[out.branch];
  return out;
}

std::vector<cplx> kerr_track(const MeromorphicTriple& T, const std::vector<MinkVec>& path,
                             std::optional<cplx> seed, int branch) {
  std::vector<cplx> out;
  out.reserve(path.size());
  for (const auto& x : path) {
    const KerrRoot r = kerr_solve(T, x, seed, branch);
    out.push_back(r.z);
    seed = r.z;
  }
  return out;
}

Gradient4 kerr_gradient(const MeromorphicTriple& T, cplx z, const MinkVec& x) {
  const auto xi = weierstrass_xi(T, z);
  const auto dxi = weierstrass_xi_prime(T, z);
  const cplx D = dot(dxi, x);
  double scale = 0.0;
  for (const auto& c : dxi) scale += std::abs(c);
  if (std::abs(D) <= 1e-14 * std::max(scale, 1e-300) * std::max(1.0, x.max_abs())) {
    throw Error(ErrorKind::SingularDenominator, "xi'(z) . x vanishes");
  }
  Gradient4 out{};
  for (int j = 0; j < 4; ++j) out[j] = -xi[j] / D;
  return out;
}

KerrSpinors kerr_spinors(const MeromorphicTriple& T, cplx z, const MinkVec& x) {
  const Values v = values_at(T, z, false);
  const cplx D = dot(weierstrass_xi_prime(T, z), x);
  const cplx s = kSqrt2 * v.h * D;
  if (std::abs(s) <= 1e-300) throw Error(ErrorKind::SingularDenominator, "sqrt2 h (xi' . x) vanishes");
  const cplx k = 1.0 / std::sqrt(s);
  return {Spinor{k * (v.f - kI * v.g), k * kI, Variance::LowerUnprimed},
          Spinor{k * (-kI * v.f + v.g), k, Variance::LowerPrimed}};
}

ScalarField kerr_field(const MeromorphicTriple& T, const Box& domain, int branch,
                       const std::string& label) {
  ScalarField f;
  f.label = label;
  f.domain = domain;
  f.evaluate = [T, branch](const MinkVec& x) { return kerr_solve(T, x, std::nullopt, branch).z; };
  f.analytic_gradient = [T, branch](const MinkVec& x) {
    return kerr_gradient(T, kerr_solve(T, x, std::nullopt, branch).z, x);
  };
  return f;
}

SpinorFieldPair kerr_pair(const MeromorphicTriple& T, const Box& domain, int branch) {
  SpinorFieldPair p;
  p.domain = domain;
  p.gauge_note = "principal square root";
  p.xi = [T, branch](const MinkVec& x) {
    return kerr_spinors(T, kerr_solve(T, x, std::nullopt, branch).z, x).xi;
  };
  p.eta = [T, branch](const MinkVec& x) {
    return kerr_spinors(T, kerr_solve(T, x, std::nullopt, branch).z, x).eta;
  };
  return p;
}

RatioField kerr_xi_ratio(const MeromorphicTriple& T, const Box& domain, int branch) {
  return {[T, branch](const MinkVec& x) {
            const cplx z = kerr_solve(T, x, std::nullopt, branch).z;
            return DirectionRatio::from_homogeneous(kI, -(T.f(z) - kI * T.g(z)));
          },
          domain};
}

RatioField kerr_eta_ratio(const MeromorphicTriple& T, const Box& domain, int branch) {
  return {[T, branch](const MinkVec& x) {
            const cplx z = kerr_solve(T, x, std::nullopt, branch).z;
            return DirectionRatio::from_homogeneous(1.0, kI * T.f(z) - T.g(z));
          },
          domain};
}

MeromorphicTriple kerr_basic_triple() {
  return {RationalFn::identity(), RationalFn(), RationalFn::constant(1.0)};
}

Box kerr_basic_domain() {
  Box b;
  b.lo = {-0.25, -0.25, 0.75, -0.25};
  b.hi = {0.25, 0.25, 1.25, 0.25};
  return b;
}

}  // namespace nullwave
