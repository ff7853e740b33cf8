#include "nullwave/spinor.hpp"

#include <algorithm>
#include <cmath>

#include "nullwave/error.hpp"

namespace nullwave {

double MinkVec::operator[](int a) const {
  switch (a) {
    case 0: return t;
    case 1: return x1;
    case 2: return x2;
    default: return x3;
  }
}

double& MinkVec::operator[](int a) {
  switch (a) {
    case 0: return t;
    case 1: return x1;
    case 2: return x2;
    default: return x3;
  }
}

double MinkVec::max_abs() const {
  return std::max({std::abs(t), std::abs(x1), std::abs(x2), std::abs(x3)});
}

bool is_null(const MinkVec& v, double null_tol) {
  return std::abs(v.minkowski_norm()) <= null_tol * std::max(1.0, v.euclid_norm2());
}

bool is_lower(Variance v) {
  return v == Variance::LowerUnprimed || v == Variance::LowerPrimed;
}

bool is_primed(Variance v) {
  return v == Variance::LowerPrimed || v == Variance::UpperPrimed;
}

Spinor raise(const Spinor& s) {
  if (!is_lower(s.variance)) {
    throw Error(ErrorKind::VarianceMismatch, "raise expects a lower-index spinor");
  }
  const Variance up = is_primed(s.variance) ? Variance::UpperPrimed : Variance::UpperUnprimed;
  return {s.c1, -s.c0, up};
}

Spinor lower(const Spinor& s) {
  if (is_lower(s.variance)) {
    throw Error(ErrorKind::VarianceMismatch, "lower expects an upper-index spinor");
  }
  const Variance down = is_primed(s.variance) ? Variance::LowerPrimed : Variance::LowerUnprimed;
  return {-s.c1, s.c0, down};
}

Spinor conj(const Spinor& s) {
  Variance v = Variance::UpperUnprimed;
  switch (s.variance) {
    case Variance::LowerUnprimed: v = Variance::LowerPrimed; break;
    case Variance::UpperUnprimed: v = Variance::UpperPrimed; break;
    case Variance::LowerPrimed: v = Variance::LowerUnprimed; break;
    case Variance::UpperPrimed: v = Variance::UpperUnprimed; break;
  }
  return {std::conj(s.c0), std::conj(s.c1), v};
}

cplx contract(const Spinor& a, const Spinor& b) {
  if (is_lower(a.variance) == is_lower(b.variance) ||
      is_primed(a.variance) != is_primed(b.variance)) {
    throw Error(ErrorKind::VarianceMismatch, "contract needs one lower and one upper index");
  }
  return a.c0 * b.c0 + a.c1 * b.c1;
}

double wedge_rel(const Spinor& a, const Spinor& b) {
  const double scale = a.norm() * b.norm();
  if (scale == 0.0) return 0.0;
  return std::abs(a.c0 * b.c1 - a.c1 * b.c0) / scale;
}

Spinor gauge_fix(const Spinor& s) {
  const cplx big = std::abs(s.c0) >= std::abs(s.c1) ? s.c0 : s.c1;
  const double mag = std::abs(big);
  if (mag == 0.0) return s;
  const cplx phase = std::conj(big) / mag;
  return {s.c0 * phase, s.c1 * phase, s.variance};
}

double SpinMat::norm() const {
  return std::sqrt(std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) +
                   std::norm(m[1][1]));
}

SpinMat SpinMat::adjoint() const {
  SpinMat r = *this;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r.m[a][b] = std::conj(m[b][a]);
  return r;
}

double SpinMat::antihermitian_norm() const {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s += std::norm(0.5 * (m[a][b] - std::conj(m[b][a])));
  return std::sqrt(s);
}

SpinMat outer(const Spinor& a, const Spinor& b, MatRole role) {
  SpinMat r;
  r.role = role;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a[i] * b[j];
  return r;
}

SpinMat vec_to_spinmat(const MinkVec& v) {
  return complex_vec_to_spinmat({cplx(v.t), cplx(v.x1), cplx(v.x2), cplx(v.x3)});
}

SpinMat complex_vec_to_spinmat(const std::array<cplx, 4>& v) {
  SpinMat r;
  r.role = MatRole::Position;
  r.m[0][0] = kInvSqrt2 * (v[0] + v[1]);
  r.m[0][1] = kInvSqrt2 * (v[2] + kI * v[3]);
  r.m[1][0] = kInvSqrt2 * (v[2] - kI * v[3]);
  r.m[1][1] = kInvSqrt2 * (v[0] - v[1]);
  return r;
}

std::array<cplx, 4> spinmat_to_complex_vec(const SpinMat& m) {
  return {kInvSqrt2 * (m.m[0][0] + m.m[1][1]), kInvSqrt2 * (m.m[0][0] - m.m[1][1]),
          kInvSqrt2 * (m.m[0][1] + m.m[1][0]), -kI * kInvSqrt2 * (m.m[0][1] - m.m[1][0])};
}

MinkVec spinmat_to_vec(const SpinMat& m, double herm_tol) {
  if (m.antihermitian_norm() > herm_tol * std::max(1.0, m.norm())) {
    throw Error(ErrorKind::NonHermitian, "position matrix is not Hermitian");
  }
  const auto c = spinmat_to_complex_vec(m);
  return {c[0].real(), c[1].real(), c[2].real(), c[3].real()};
}

SpinMat gradient_matrix(const std::array<cplx, 4>& p) {
  SpinMat r;
  r.role = MatRole::Gradient;
  r.m[0][0] = kInvSqrt2 * (p[0] + p[1]);
  r.m[0][1] = kInvSqrt2 * (p[2] - kI * p[3]);
  r.m[1][0] = kInvSqrt2 * (p[2] + kI * p[3]);
  r.m[1][1] = kInvSqrt2 * (p[0] - p[1]);
  return r;
}

std::array<cplx, 4> covector_components(const SpinMat& g) {
  return {kInvSqrt2 * (g.m[0][0] + g.m[1][1]), kInvSqrt2 * (g.m[0][0] - g.m[1][1]),
          kInvSqrt2 * (g.m[0][1] + g.m[1][0]), kI * kInvSqrt2 * (g.m[0][1] - g.m[1][0])};
}

NullDecomposition null_decompose(const MinkVec& v, double null_tol) {
  if (v.euclid_norm2() == 0.0) {
    throw Error(ErrorKind::ZeroVector, "cannot decompose the zero vector");
  }
  if (!is_null(v, null_tol)) {
    throw Error(ErrorKind::NotNull, "vector is not null");
  }
  const SpinMat m = vec_to_spinmat(v);
  // Column k of lambda rho rho^dagger is lambda conj(rho^k) rho.
  const int k = std::abs(m.m[0][0]) >= std::abs(m.m[1][1]) ? 0 : 1;
  Spinor rho{m.m[0][k], m.m[1][k], Variance::UpperUnprimed};
  const double n = rho.norm();
  rho.c0 /= n;
  rho.c1 /= n;
  NullDecomposition out;
  out.rho = gauge_fix(rho);
  out.lambda = (m.m[0][0] + m.m[1][1]).real();
  return out;
}

Spinor solve_annihilator(const Spinor& xi_lower, const SpinMat& m, double annihilate_tol) {
  if (xi_lower.variance != Variance::LowerUnprimed) {
    throw Error(ErrorKind::VarianceMismatch, "annihilator needs xi_A (lower unprimed)");
  }
  if (xi_lower.norm() == 0.0) throw Error(ErrorKind::ZeroVector, "xi is zero");
  if (m.norm() == 0.0) throw Error(ErrorKind::ZeroMatrix, "matrix is zero");

  const double scale = xi_lower.norm() * m.norm();
  for (int ap = 0; ap < 2; ++ap) {
    const cplx c = xi_lower.c0 * m.m[0][ap] + xi_lower.c1 * m.m[1][ap];
    if (std::abs(c) > annihilate_tol * scale) {
      throw Error(ErrorKind::NotAnnihilated, "xi_A M^{AA'} does not vanish");
    }
  }
  const Spinor xi_up = raise(xi_lower);
  const int a = std::abs(xi_up.c0) >= std::abs(xi_up.c1) ? 0 : 1;
  return {m.m[a][0] / xi_up[a], m.m[a][1] / xi_up[a], Variance::UpperPrimed};
}

cplx contract_full(const SpinMat& g, const SpinMat& v) {
  cplx s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap) s += g.m[a][ap] * v.m[a][ap];
  return s;
}

}  // namespace nullwave
