#include "nullwave/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nullwave/error.hpp"

namespace nullwave {

namespace {

double power_scale(cplx z, int degree) {
  return std::pow(std::max(1.0, std::abs(z)), std::max(degree, 0));
}

}  // namespace

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

double Polynomial::coeff_norm() const {
  double s = 0.0;
  for (const auto& c : c_) s += std::abs(c);
  return s;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  double big = 0.0;
  for (const auto& c : c_) big = std::max(big, std::abs(c));
  std::vector<cplx> out = c_;
  while (!out.empty() && std::abs(out.back()) <= rel_tol * big) out.pop_back();
  return Polynomial(std::move(out));
}

Polynomial Polynomial::deflate(cplx root) const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> q(c_.size() - 1);
  cplx carry = c_.back();
  for (std::size_t k = c_.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = c_[k] + carry * root;
  }
  return Polynomial(std::move(q));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + cplx(-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(cplx s, const Polynomial& a) {
  std::vector<cplx> r = a.c_;
  for (auto& c : r) c *= s;
  return Polynomial(std::move(r));
}

std::vector<cplx> poly_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& c = p.coeffs();
  if (n == 1) return {-c[0] / c[1]};
  if (n == 2) {
    const cplx a = c[2];
    const cplx b = c[1];
    const cplx k = c[0];
    const cplx disc = std::sqrt(b * b - 4.0 * a * k);
    const cplx s = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    const cplx q = -0.5 * s;
    if (q == cplx(0.0)) return {0.0, 0.0};
    return {q / a, k / q};
  }

  // Aberth-Ehrlich
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
  radius = 1.0 + radius;
  const Polynomial dp = p.derivative();
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * (k + 0.25) / n + 0.4;
    z[k] = 0.5 * radius * cplx(std::cos(ang), std::sin(ang));
  }
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const cplx pk = p(z[k]);
      if (pk == cplx(0.0)) continue;
      const cplx ratio = pk / dp(z[k]);
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (worst < 1e-16) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = dp(r);
      if (d == cplx(0.0)) break;
      r -= p(r) / d;
    }
  }
  return z;
}

RationalFn::RationalFn(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFn::normalize() {
  if (den_.is_zero()) throw Error(ErrorKind::PoleAt, "zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial{1.0};
    return;
  }
  bool cancelled = true;
  while (cancelled && den_.degree() >= 1 && num_.degree() >= 1) {
    cancelled = false;
    const auto roots = poly_roots(den_);
    for (const auto& r : roots) {
      const double scale = num_.coeff_norm() * power_scale(r, num_.degree());
      if (std::abs(num_(r)) <= kCancelTol * scale) {
        num_ = num_.deflate(r);
        den_ = den_.deflate(r);
        cancelled = true;
        break;
      }
    }
  }
  const cplx lead = den_.leading();
  num_ = (1.0 / lead) * num_;
  den_ = (1.0 / lead) * den_;
}

bool RationalFn::is_pole(cplx z) const {
  if (den_.degree() < 1) return false;
  return std::abs(den_(z)) <= 1e-14 * den_.coeff_norm() * power_scale(z, den_.degree());
}

std::vector<cplx> RationalFn::poles() const { return poly_roots(den_); }

cplx RationalFn::operator()(cplx z) const {
  if (is_pole(z)) throw Error(ErrorKind::PoleAt, "rational function has a pole here");
  return num_(z) / den_(z);
}

RationalFn RationalFn::derivative() const {
  return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.num_.is_zero()) throw Error(ErrorKind::PoleAt, "division by the zero function");
  return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn operator*(cplx s, const RationalFn& a) { return RationalFn(s * a.num_, a.den_); }

}  // namespace nullwave
