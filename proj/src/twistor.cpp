#include "nullwave/twistor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nullwave/error.hpp"

namespace nullwave {

namespace {

struct UVQ {
  cplx u, v, q;
};

UVQ uvq_of(const MinkVec& x) { return {x.t + x.x1, x.t - x.x1, cplx(x.x2, x.x3)}; }

cplx r_of(const Twistor& X, const UVQ& p) { return p.u * X[2] + p.q * X[3] + kI * X[0]; }
cplx s_of(const Twistor& X, const UVQ& p) {
  return std::conj(p.q) * X[2] + p.v * X[3] + kI * X[1];
}

double norm2_of(const std::array<cplx, 4>& p) {
  double s = 0.0;
  for (const auto& c : p) s += std::norm(c);
  return s;
}

// Newton data at (z, w): residual (r, s) and its Jacobian.
struct IncidenceJet {
  cplx r, s, rz, rw, sz, sw;
  double scale;

  cplx bracket() const { return rz * sw - sz * rw; }
  double jac_norm2() const {
    return std::norm(rz) + std::norm(rw) + std::norm(sz) + std::norm(sw);
  }
};

IncidenceJet incidence_jet(const TwistorSurface& S, cplx z, cplx w, const UVQ& p) {
  const Twistor X = S.eval(z, w);
  const auto J = S.jacobian(z, w);
  IncidenceJet j;
  j.r = r_of(X, p);
  j.s = s_of(X, p);
  j.rz = r_of(J[0], p);
  j.rw = r_of(J[1], p);
  j.sz = s_of(J[0], p);
  j.sw = s_of(J[1], p);
  const double ext = std::max({1.0, std::abs(p.u), std::abs(p.v), std::abs(p.q)});
  j.scale = 1.0 + std::sqrt(X.norm2()) * ext;
  return j;
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& fn, cplx z0) {
  constexpr int kNodes = 32;
  constexpr double kRadius = 1e-2;
  cplx acc = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kNodes;
    const cplx e(std::cos(th), std::sin(th));
    acc += fn(z0 + kRadius * e) / e;
  }
  return acc / (kNodes * kRadius);
}

}  // namespace

double Twistor::norm2() const { return norm2_of(c); }

Twistor operator+(const Twistor& a, const Twistor& b) {
  Twistor r;
  for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Twistor operator*(cplx s, const Twistor& a) {
  Twistor r;
  for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
  return r;
}

DualTwistor conj(const Twistor& X) {
  return {{std::conj(X[2]), std::conj(X[3]), std::conj(X[0]), std::conj(X[1])}};
}

Twistor conj(const DualTwistor& L) {
  return {{std::conj(L[2]), std::conj(L[3]), std::conj(L[0]), std::conj(L[1])}};
}

cplx inner(const Twistor& X, const Twistor& L) {
  const DualTwistor Lb = conj(L);
  return X[0] * Lb[0] + X[1] * Lb[1] + X[2] * Lb[2] + X[3] * Lb[3];
}

bool is_null(const Twistor& X, double tol) {
  const double n2 = X.norm2();
  if (n2 == 0.0) throw Error(ErrorKind::ZeroTwistor, "zero twistor");
  return std::abs(inner(X, X)) <= tol * n2;
}

bool projectively_equal(const Twistor& X, const Twistor& Y, double tol) {
  const double scale = std::sqrt(X.norm2() * Y.norm2());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(X[i] * Y[j] - X[j] * Y[i]) > tol * scale) return false;
  return true;
}

std::array<cplx, 2> incidence_residual(const Twistor& X, const MinkVec& x) {
  const UVQ p = uvq_of(x);
  return {r_of(X, p), s_of(X, p)};
}

Twistor point_twistor(const MinkVec& x, cplx eta0, cplx eta1) {
  const UVQ p = uvq_of(x);
  return {{kI * (p.u * eta0 + p.q * eta1), kI * (std::conj(p.q) * eta0 + p.v * eta1), eta0, eta1}};
}

Ray ray_through(const Twistor& X, double tol) {
  const cplx e0 = X[2];
  const cplx e1 = X[3];
  const double n2 = std::norm(e0) + std::norm(e1);
  if (n2 == 0.0) throw Error(ErrorKind::EtaZero, "eta vanishes; the ray is at infinity");
  if (!is_null(X, tol)) throw Error(ErrorKind::NotNull, "twistor is not null");

  // Hermitian M = [[u, q], [conj q, v]] with M eta = w, w = -i xi.
  const cplx w0 = -kI * X[0];
  const cplx w1 = -kI * X[1];
  const cplx ew = std::conj(e0) * w0 + std::conj(e1) * w1;
  const cplx e[2] = {e0, e1};
  const cplx w[2] = {w0, w1};
  SpinMat M;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      M.m[a][b] = (w[a] * std::conj(e[b]) + e[a] * std::conj(w[b])) / n2 -
                  std::real(ew) * e[a] * std::conj(e[b]) / (n2 * n2);
  Ray ray;
  ray.point = spinmat_to_vec(M * cplx(kInvSqrt2), 1e-9);

  // Direction: the Hermitian rank-one matrix annihilating eta.
  const cplx p[2] = {std::conj(e1), -std::conj(e0)};
  SpinMat D;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) D.m[a][b] = p[a] * std::conj(p[b]) / n2;
  MinkVec d = spinmat_to_vec(D * cplx(kInvSqrt2), 1e-9);
  ray.direction = (1.0 / d.t) * d;
  return ray;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

std::array<Quaternion, 2> hopf(const std::array<cplx, 4>& p) {
  if (norm2_of(p) == 0.0) throw Error(ErrorKind::ZeroPoint, "zero point of C^4");
  return {Quaternion{p[0].real(), p[0].imag(), p[1].real(), p[1].imag()},
          Quaternion{p[2].real(), p[2].imag(), p[3].real(), p[3].imag()}};
}

bool in_N5(const std::array<cplx, 4>& p, double tol) {
  const double n2 = norm2_of(p);
  if (n2 == 0.0) throw Error(ErrorKind::ZeroPoint, "zero point of C^4");
  const cplx s = std::conj(p[2]) * p[0] + p[3] * std::conj(p[1]) + p[2] * std::conj(p[0]) +
                 std::conj(p[3]) * p[1];
  return std::abs(s) <= tol * n2;
}

cplx BivariatePoly::operator()(cplx z, cplx w) const {
  cplx acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    cplx row = 0.0;
    for (std::size_t j = c[i].size(); j-- > 0;) row = row * w + c[i][j];
    acc = acc * z + row;
  }
  return acc;
}

cplx BivariatePoly::dz(cplx z, cplx w) const {
  BivariatePoly d;
  for (std::size_t i = 1; i < c.size(); ++i) {
    d.c.push_back(c[i]);
    for (auto& e : d.c.back()) e *= static_cast<double>(i);
  }
  return d(z, w);
}

cplx BivariatePoly::dw(cplx z, cplx w) const {
  BivariatePoly d;
  for (const auto& row : c) {
    std::vector<cplx> r;
    for (std::size_t j = 1; j < row.size(); ++j) r.push_back(static_cast<double>(j) * row[j]);
    d.c.push_back(std::move(r));
  }
  return d(z, w);
}

bool BivariatePoly::is_constant(cplx value) const {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) {
      const cplx want = (i == 0 && j == 0) ? value : cplx(0.0);
      if (c[i][j] != want) return false;
    }
  return value == cplx(0.0) || (!c.empty() && !c[0].empty());
}

bool BivariatePoly::is_z() const {
  bool seen = false;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) {
      if (i == 1 && j == 0) {
        if (c[i][j] != cplx(1.0)) return false;
        seen = true;
      } else if (c[i][j] != cplx(0.0)) {
        return false;
      }
    }
  return seen;
}

TwistorSurface polynomial_surface(const std::array<BivariatePoly, 4>& slots,
                                  const std::string& label) {
  TwistorSurface S;
  S.label = label;
  S.eval = [slots](cplx z, cplx w) {
    Twistor X;
    for (int k = 0; k < 4; ++k) X[k] = slots[k](z, w);
    return X;
  };
  S.jacobian = [slots](cplx z, cplx w) {
    std::array<Twistor, 2> J;
    for (int k = 0; k < 4; ++k) {
      J[0][k] = slots[k].dz(z, w);
      J[1][k] = slots[k].dw(z, w);
    }
    return J;
  };
  S.normal_form = slots[2].is_z() && slots[3].is_constant(1.0);
  return S;
}

TwistorSurface holomorphic_surface(std::function<Twistor(cplx, cplx)> chart, bool normal_form,
                                   const std::string& label) {
  TwistorSurface S;
  S.label = label;
  S.eval = chart;
  S.jacobian = [chart](cplx z, cplx w) {
    std::array<Twistor, 2> J;
    for (int k = 0; k < 4; ++k) {
      J[0][k] = cauchy_derivative([&](cplx s) { return chart(s, w)[k]; }, z);
      J[1][k] = cauchy_derivative([&](cplx s) { return chart(z, s)[k]; }, w);
    }
    return J;
  };
  S.normal_form = normal_form;
  return S;
}

bool is_regular(const TwistorSurface& S, const std::vector<ChartPoint>& samples, double tol) {
  for (const auto& p : samples) {
    const auto J = S.jacobian(p.z, p.w);
    double best = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        best = std::max(best, std::abs(J[0][i] * J[1][j] - J[0][j] * J[1][i]));
    if (best <= tol * std::sqrt(J[0].norm2() * J[1].norm2())) return false;
  }
  return true;
}

bool check_prop_condition(const TwistorSurface& S, const std::vector<ChartPoint>& samples,
                          double tol) {
  bool ok = true;
  for (const auto& p : samples) {
    const Twistor X = S.eval(p.z, p.w);
    const auto J = S.jacobian(p.z, p.w);
    if (std::abs(X[3]) <= 1e-14 * std::sqrt(X.norm2())) {
      throw Error(ErrorKind::EtaDenominatorZero, "eta^{1'} vanishes at a sample");
    }
    const cplx dw = (J[1][2] * X[3] - X[2] * J[1][3]) / (X[3] * X[3]);
    if (std::abs(dw) > tol) ok = false;
  }
  return ok;
}

TwistorSurface normalize_chart(const TwistorSurface& S, ChartPoint base, double tol) {
  // Phi_k(z, w) = (eta0 / eta1, slot_k / eta1) and its Jacobian.
  struct PhiJet {
    Twistor X;
    std::array<Twistor, 2> J;
    cplx f[2];
    cplx df[2][2];  // df[row][d/dz, d/dw]
  };
  auto jet = [S](cplx z, cplx w, int k) {
    PhiJet p;
    p.X = S.eval(z, w);
    p.J = S.jacobian(z, w);
    const cplx d = p.X[3];
    const int slots[2] = {2, k};
    for (int r = 0; r < 2; ++r) {
      const int s = slots[r];
      p.f[r] = p.X[s] / d;
      for (int a = 0; a < 2; ++a) p.df[r][a] = (p.J[a][s] * d - p.X[s] * p.J[a][3]) / (d * d);
    }
    return p;
  };

  const Twistor X0 = S.eval(base.z, base.w);
  if (std::abs(X0[3]) <= tol * std::sqrt(X0.norm2())) {
    throw Error(ErrorKind::SingularChart, "eta^{1'} vanishes at the base point");
  }
  int pick = -1;
  double best = 0.0;
  for (int k = 0; k < 2; ++k) {
    const PhiJet p = jet(base.z, base.w, k);
    const double rows = std::sqrt((std::norm(p.df[0][0]) + std::norm(p.df[0][1])) *
                                  (std::norm(p.df[1][0]) + std::norm(p.df[1][1])));
    const double minor = std::abs(p.df[0][0] * p.df[1][1] - p.df[0][1] * p.df[1][0]);
    const double rel = rows == 0.0 ? 0.0 : minor / rows;
    if (rel > tol && rel > best) {
      best = rel;
      pick = k;
    }
  }
  if (pick < 0) throw Error(ErrorKind::SingularChart, "both Jacobian minors vanish");
  if (S.normal_form) return S;

  // Newton inversion of Phi from the base point.
  auto invert = [jet, base, pick](cplx zt, cplx wt) {
    cplx z = base.z;
    cplx w = base.w;
    for (int it = 0; it < 60; ++it) {
      const PhiJet p = jet(z, w, pick);
      const cplx r0 = p.f[0] - zt;
      const cplx r1 = p.f[1] - wt;
      const cplx det = p.df[0][0] * p.df[1][1] - p.df[0][1] * p.df[1][0];
      if (det == cplx(0.0)) break;
      const cplx dz = (p.df[1][1] * r0 - p.df[0][1] * r1) / det;
      const cplx dw = (p.df[0][0] * r1 - p.df[1][0] * r0) / det;
      z -= dz;
      w -= dw;
      if (std::abs(dz) + std::abs(dw) <= 1e-15 * (1.0 + std::abs(z) + std::abs(w))) {
        return jet(z, w, pick);
      }
    }
    const PhiJet p = jet(z, w, pick);
    if (std::abs(p.f[0] - zt) + std::abs(p.f[1] - wt) > 1e-10 * (1.0 + std::abs(zt) + std::abs(wt))) {
      throw Error(ErrorKind::NewtonDiverged, "chart inversion did not converge");
    }
    return p;
  };

  TwistorSurface out;
  out.label = S.label + "-normal";
  out.normal_form = true;
  out.eval = [invert](cplx zt, cplx wt) {
    const PhiJet p = invert(zt, wt);
    const cplx d = p.X[3];
    return Twistor{{p.X[0] / d, p.X[1] / d, zt, 1.0}};
  };
  out.jacobian = [invert](cplx zt, cplx wt) {
    const PhiJet p = invert(zt, wt);
    const cplx d = p.X[3];
    // d(z, w)/d(zt, wt) = inverse of the Phi Jacobian.
    const cplx det = p.df[0][0] * p.df[1][1] - p.df[0][1] * p.df[1][0];
    const cplx inv[2][2] = {{p.df[1][1] / det, -p.df[0][1] / det},
                            {-p.df[1][0] / det, p.df[0][0] / det}};
    std::array<Twistor, 2> J;
    for (int s = 0; s < 2; ++s) {
      cplx g[2];  // d(slot_s / d)/d(z, w)
      for (int a = 0; a < 2; ++a) g[a] = (p.J[a][s] * d - p.X[s] * p.J[a][3]) / (d * d);
      for (int b = 0; b < 2; ++b) J[b][s] = g[0] * inv[0][b] + g[1] * inv[1][b];
    }
    J[0][2] = 1.0;
    J[1][2] = 0.0;
    J[0][3] = 0.0;
    J[1][3] = 0.0;
    return J;
  };
  return out;
}

IncidenceSolution solve_incidence(const TwistorSurface& S, const MinkVec& x,
                                  std::optional<ChartPoint> seed, const IncidenceOptions& opts) {
  const UVQ p = uvq_of(x);

  std::vector<ChartPoint> seeds;
  if (seed) seeds.push_back(*seed);
  std::vector<cplx> lattice;
  const int n = opts.lattice;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = n == 1 ? 0.0 : -opts.lattice_half + 2.0 * opts.lattice_half * i / (n - 1);
      const double im = n == 1 ? 0.0 : -opts.lattice_half + 2.0 * opts.lattice_half * j / (n - 1);
      lattice.emplace_back(re, im);
    }
  for (const auto& z : lattice)
    for (const auto& w : lattice) seeds.push_back({z, w});

  bool singular_seen = false;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    cplx z = seeds[k].z;
    cplx w = seeds[k].w;
    for (int it = 0; it <= opts.max_iter; ++it) {
      IncidenceJet j;
      try {
        j = incidence_jet(S, z, w, p);
      } catch (const Error&) {
        break;
      }
      const double res = std::max(std::abs(j.r), std::abs(j.s));
      if (!std::isfinite(res)) break;
      const cplx br = j.bracket();
      const bool singular = std::abs(br) <= 1e-10 * j.jac_norm2();
      if (res <= opts.tol * j.scale) {
        if (singular) {
          singular_seen = true;
          break;
        }
        IncidenceSolution sol;
        sol.z = z;
        sol.w = w;
        sol.seed_index = seed ? static_cast<int>(k) - 1 : static_cast<int>(k);
        sol.iterations = it;
        return sol;
      }
      if (std::abs(br) <= 1e-14 * j.jac_norm2()) {
        if (res <= 1e-8 * j.scale) singular_seen = true;
        break;
      }
      z -= (j.sw * j.r - j.rw * j.s) / br;
      w -= (j.rz * j.s - j.sz * j.r) / br;
      if (std::abs(z) > 1e12 || std::abs(w) > 1e12) break;
    }
  }
  if (singular_seen) {
    throw Error(ErrorKind::SingularBracket, "incidence Jacobian {r,s} vanishes at the solution");
  }
  throw Error(ErrorKind::NewtonDiverged, "no seed converged");
}

cplx incidence_bracket(const TwistorSurface& S, cplx z, cplx w, const MinkVec& x) {
  return incidence_jet(S, z, w, uvq_of(x)).bracket();
}

std::array<cplx, 4> incidence_partials(const TwistorSurface& S, cplx z, cplx w,
                                       const MinkVec& x) {
  const IncidenceJet j = incidence_jet(S, z, w, uvq_of(x));
  const cplx br = j.bracket();
  if (std::abs(br) <= 1e-12 * j.jac_norm2()) {
    throw Error(ErrorKind::SingularBracket, "{r,s} vanishes");
  }
  const Twistor X = S.eval(z, w);
  const cplx c = X[2];
  const cplx d = X[3];
  return {-j.sw * c / br, j.rw * d / br, -j.sw * d / br, j.rw * c / br};
}

Gradient4 minkowski_gradient(const std::array<cplx, 4>& g) {
  return {g[0] + g[1], g[0] - g[1], g[2] + g[3], kI * (g[2] - g[3])};
}

ScalarField surface_field(const TwistorSurface& S, const Box& domain,
                          std::optional<ChartPoint> seed, const std::string& label) {
  ScalarField f;
  f.label = label;
  f.domain = domain;
  f.evaluate = [S, seed](const MinkVec& x) { return solve_incidence(S, x, seed).z; };
  f.analytic_gradient = [S, seed](const MinkVec& x) {
    const IncidenceSolution s = solve_incidence(S, x, seed);
    return minkowski_gradient(incidence_partials(S, s.z, s.w, x));
  };
  return f;
}

TwistorSurface surface_basic() {
  std::array<BivariatePoly, 4> slots;
  slots[0].c = {{0.0, 1.0}};
  slots[2].c = {{}, {1.0}};
  slots[3].c = {{1.0}};
  return polynomial_surface(slots, "surface-basic");
}

Box surface_basic_domain() {
  Box b;
  b.lo = {-0.5, -0.5, 0.5, -0.5};
  b.hi = {0.5, 0.5, 1.5, 0.5};
  return b;
}

TwistorSurface surface_tilted() {
  std::array<BivariatePoly, 4> slots;
  slots[0].c = {{}, {1.0}};
  slots[1].c = {{}, {1.0}};
  slots[2].c = {{0.0, 1.0}};
  slots[3].c = {{1.0}};
  return polynomial_surface(slots, "surface-tilted");
}

}  // namespace nullwave
