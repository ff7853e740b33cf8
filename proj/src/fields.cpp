#include "nullwave/fields.hpp"

#include <algorithm>
#include <cmath>

#include "nullwave/error.hpp"
#include "nullwave/parallel.hpp"

namespace nullwave {

namespace {

// P^{BA'} = eps^{BC} eps^{A'C'} G_{CC'}.
SpinMat raise_both(const SpinMat& g) {
  SpinMat p;
  p.role = MatRole::Direction;
  p.m[0][0] = g.m[1][1];
  p.m[0][1] = -g.m[1][0];
  p.m[1][0] = -g.m[0][1];
  p.m[1][1] = g.m[0][0];
  return p;
}

Spinor as_upper(const Spinor& s) { return is_lower(s.variance) ? raise(s) : s; }
Spinor as_lower(const Spinor& s) { return is_lower(s.variance) ? s : lower(s); }

// nabla_{AA'} applied to each entry of a matrix-valued field:
// out[B][C'] is the gradient matrix of P^{BC'}.
std::array<std::array<SpinMat, 2>, 2> nabla_of_product(
    const std::function<SpinMat(const MinkVec&)>& product, const Box& domain, const MinkVec& x,
    double h) {
  const auto partials = central_partials<SpinMat>(
      [&](const MinkVec& y) { return product(y); }, domain, x, h);
  std::array<std::array<SpinMat, 2>, 2> out;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c)
      out[b][c] = gradient_matrix({partials[0].m[b][c], partials[1].m[b][c],
                                   partials[2].m[b][c], partials[3].m[b][c]});
  return out;
}

std::array<cplx, 8> pde_from_product(const std::function<SpinMat(const MinkVec&)>& product,
                                     const Box& domain, const MinkVec& x, double h) {
  const auto d = nabla_of_product(product, domain, x, h);
  // d[B][C'](A, A') = nabla_{AA'} P^{BC'}
  std::array<cplx, 8> r{};
  int k = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r[k++] = d[b][0](a, 0) + d[b][1](a, 1);
  for (int ap = 0; ap < 2; ++ap)
    for (int bp = 0; bp < 2; ++bp) r[k++] = d[0][bp](0, ap) + d[1][bp](1, ap);
  return r;
}

double grad_norm(const Gradient4& g) {
  double s = 0.0;
  for (const auto& c : g) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

bool Box::contains(const MinkVec& x, double margin) const {
  for (int a = 0; a < 4; ++a) {
    if (x[a] - margin < lo[a] || x[a] + margin > hi[a]) return false;
  }
  return true;
}

MinkVec Box::center() const {
  MinkVec c;
  for (int a = 0; a < 4; ++a) c[a] = 0.5 * (lo[a] + hi[a]);
  return c;
}

double first_step(const MinkVec& x, double h) {
  return h > 0.0 ? h : 1e-4 * std::max(1.0, x.max_abs());
}

double second_step(const MinkVec& x, double h) {
  return h > 0.0 ? h : 1e-3 * std::max(1.0, x.max_abs());
}

Gradient4 field_gradient(const ScalarField& f, const MinkVec& x, const Scheme& scheme) {
  if (scheme.kind == SchemeKind::Analytic && f.has_analytic_gradient()) {
    if (!f.domain.contains(x)) throw Error(ErrorKind::OutOfDomain, "point outside field domain");
    return f.analytic_gradient(x);
  }
  return central_partials<cplx>(f.evaluate, f.domain, x, first_step(x, scheme.h));
}

SpinMat spinor_gradient(const ScalarField& f, const MinkVec& x, const Scheme& scheme) {
  return gradient_matrix(field_gradient(f, x, scheme));
}

cplx semiconformality_residual(const ScalarField& f, const MinkVec& x, const Scheme& scheme) {
  return spinor_gradient(f, x, scheme).det();
}

cplx wave_residual(const ScalarField& f, const MinkVec& x, const Scheme& scheme) {
  if (scheme.kind == SchemeKind::Analytic && f.has_analytic_gradient()) {
    const double h = first_step(x, 0.0);
    if (!f.domain.contains(x, h)) throw Error(ErrorKind::OutOfDomain, "stencil leaves the domain");
    cplx out = 0.0;
    for (int a = 0; a < 4; ++a) {
      MinkVec xp = x;
      MinkVec xm = x;
      xp[a] += h;
      xm[a] -= h;
      const cplx d = (f.analytic_gradient(xp)[a] - f.analytic_gradient(xm)[a]) / (2.0 * h);
      out += a == 0 ? d : -d;
    }
    return out;
  }
  // fourth-order five-point stencil
  const double h = second_step(x, scheme.h);
  if (!f.domain.contains(x, 2.0 * h)) throw Error(ErrorKind::OutOfDomain, "stencil leaves the domain");
  const cplx f0 = f.evaluate(x);
  cplx out = 0.0;
  for (int a = 0; a < 4; ++a) {
    cplx sum = -30.0 * f0;
    for (int k : {-2, -1, 1, 2}) {
      MinkVec y = x;
      y[a] += k * h;
      sum += (std::abs(k) == 1 ? 16.0 : -1.0) * f.evaluate(y);
    }
    const cplx d2 = sum / (12.0 * h * h);
    out += a == 0 ? d2 : -d2;
  }
  return out;
}

namespace {

// leading eigenvector of the Hermitian [[a, b], [conj(b), d]]
std::array<cplx, 2> leading_eigvec(double a, cplx b, double d) {
  const double half = 0.5 * (a - d);
  const double root = std::sqrt(half * half + std::norm(b));
  if (a >= d) return {half + root, std::conj(b)};
  return {b, root - half};
}

}  // namespace

std::array<cplx, 2> column_direction(const SpinMat& m) {
  const auto& M = m.m;
  const double a = std::norm(M[0][0]) + std::norm(M[0][1]);
  const double d = std::norm(M[1][0]) + std::norm(M[1][1]);
  const cplx b = M[0][0] * std::conj(M[1][0]) + M[0][1] * std::conj(M[1][1]);
  return leading_eigvec(a, b, d);
}

std::array<cplx, 2> row_direction(const SpinMat& m) {
  const auto& M = m.m;
  const double a = std::norm(M[0][0]) + std::norm(M[1][0]);
  const double d = std::norm(M[0][1]) + std::norm(M[1][1]);
  const cplx b = M[0][0] * std::conj(M[0][1]) + M[1][0] * std::conj(M[1][1]);
  return leading_eigvec(a, b, d);
}

GradientFactors factorize_gradient(const SpinMat& m, double factor_tol) {
  const double n = m.norm();
  if (n == 0.0) throw Error(ErrorKind::ZeroMatrix, "gradient matrix vanishes");
  if (std::abs(m.det()) > factor_tol * n * n) {
    throw Error(ErrorKind::NotRankOne, "gradient matrix is not rank one");
  }
  const auto v = column_direction(m);
  const double len = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  Spinor xi{v[0] / len, v[1] / len, Variance::LowerUnprimed};
  xi = gauge_fix(xi);
  Spinor eta{std::conj(xi.c0) * m.m[0][0] + std::conj(xi.c1) * m.m[1][0],
             std::conj(xi.c0) * m.m[0][1] + std::conj(xi.c1) * m.m[1][1], Variance::LowerPrimed};
  return {xi, eta};
}

SpinMat upper_product(const SpinorFieldPair& pair, const MinkVec& x) {
  return outer(as_upper(pair.xi(x)), as_upper(pair.eta(x)), MatRole::Direction);
}

std::array<cplx, 8> spinor_pde_residuals(const SpinorFieldPair& pair, const MinkVec& x,
                                         const Scheme& scheme) {
  return pde_from_product([&](const MinkVec& y) { return upper_product(pair, y); }, pair.domain,
                          x, first_step(x, scheme.h));
}

SpinorFieldPair gradient_pair(const ScalarField& f, const Scheme& scheme) {
  SpinorFieldPair pair;
  pair.domain = f.domain;
  pair.gauge_note = "xi_A unit norm with largest component real positive";
  // The factorization is repeated per call; fields are cheap to evaluate.
  pair.xi = [f, scheme](const MinkVec& x) {
    return factorize_gradient(spinor_gradient(f, x, scheme), 1e-6).xi;
  };
  pair.eta = [f, scheme](const MinkVec& x) {
    return factorize_gradient(spinor_gradient(f, x, scheme), 1e-6).eta;
  };
  return pair;
}

OneFormField one_form_of(const SpinorFieldPair& pair) {
  OneFormField v;
  v.domain = pair.domain;
  v.components = [pair](const MinkVec& x) {
    return covector_components(
        outer(as_lower(pair.xi(x)), as_lower(pair.eta(x)), MatRole::Gradient));
  };
  return v;
}

double Closedness::max_abs() const {
  double m = std::abs(div);
  for (const auto& c : curl) m = std::max(m, std::abs(c));
  return m;
}

Closedness closedness_check(const OneFormField& v, const MinkVec& x, double h) {
  using C4 = std::array<cplx, 4>;
  struct Wrapped {
    C4 c;
    Wrapped operator-(const Wrapped& o) const {
      Wrapped r;
      for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
      return r;
    }
    Wrapped operator*(double s) const {
      Wrapped r;
      for (int i = 0; i < 4; ++i) r.c[i] = c[i] * s;
      return r;
    }
  };
  // d[a].c[b] = d_a v_b
  const auto d = central_partials<Wrapped>(
      [&](const MinkVec& y) { return Wrapped{v.components(y)}; }, v.domain, x,
      first_step(x, h));
  Closedness out;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out.curl[k++] = d[j].c[i] - d[i].c[j];
  out.div = d[0].c[0] - d[1].c[1] - d[2].c[2] - d[3].c[3];
  return out;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int c : count) n *= static_cast<std::size_t>(std::max(c, 0));
  return n;
}

std::vector<MinkVec> GridSpec::points() const {
  std::vector<MinkVec> pts;
  pts.reserve(size());
  auto coord = [&](int a, int i) {
    if (count[a] <= 1) return 0.5 * (min[a] + max[a]);
    return min[a] + (max[a] - min[a]) * static_cast<double>(i) / (count[a] - 1);
  };
  for (int i0 = 0; i0 < count[0]; ++i0)
    for (int i1 = 0; i1 < count[1]; ++i1)
      for (int i2 = 0; i2 < count[2]; ++i2)
        for (int i3 = 0; i3 < count[3]; ++i3)
          pts.push_back({coord(0, i0), coord(1, i1), coord(2, i2), coord(3, i3)});
  return pts;
}

GridSpec GridSpec::inside(const Box& domain, double fraction, int n) {
  GridSpec g;
  for (int a = 0; a < 4; ++a) {
    const double mid = 0.5 * (domain.lo[a] + domain.hi[a]);
    const double half = 0.5 * (domain.hi[a] - domain.lo[a]) * fraction;
    g.min[a] = mid - half;
    g.max[a] = mid + half;
    g.count[a] = n;
  }
  return g;
}

const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::ZeroGradient: return "zero_gradient";
    case PointStatus::Failed: return "failed";
  }
  return "unknown";
}

const std::vector<std::string>& ResidualReport::residual_columns() {
  static const std::vector<std::string> cols{
      "semiconformality", "wave", "pde1",      "pde2",       "pde3",      "pde4",
      "pde5",             "pde6", "pde7",      "pde8",       "kernel_xi", "kernel_eta",
      "sfr_xi",           "sfr_eta"};
  return cols;
}

double ResidualReport::column_value(const ResidualRecord& r, std::size_t i) {
  if (i == 0) return r.semiconformality;
  if (i == 1) return r.wave;
  if (i < 10) return r.spinor_pde[i - 2];
  switch (i) {
    case 10: return r.kernel_xi;
    case 11: return r.kernel_eta;
    case 12: return r.sfr_xi;
    case 13: return r.sfr_eta;
    default: return ResidualRecord::kNaN;
  }
}

std::vector<ColumnStats> ResidualReport::aggregate() const {
  const auto& cols = residual_columns();
  std::vector<ColumnStats> stats(cols.size());
  std::vector<double> sums(cols.size(), 0.0);
  for (const auto& r : records) {
    if (r.status != PointStatus::Ok) continue;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const double v = column_value(r, i);
      if (!std::isfinite(v)) continue;
      stats[i].max = std::max(stats[i].max, v);
      sums[i] += v;
      ++stats[i].count;
    }
  }
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (stats[i].count > 0) stats[i].mean = sums[i] / static_cast<double>(stats[i].count);
  }
  return stats;
}

ColumnStats ResidualReport::aggregate(const std::string& column) const {
  const auto& cols = residual_columns();
  const auto it = std::find(cols.begin(), cols.end(), column);
  if (it == cols.end()) return {};
  return aggregate()[static_cast<std::size_t>(it - cols.begin())];
}

ResidualReport scan_null_solution(const ScalarField& f, const GridSpec& grid,
                                  const ScanOptions& opts) {
  ResidualReport report;
  report.label = f.label;
  const auto pts = grid.points();
  report.records.resize(pts.size());

  parallel_for(pts.size(), [&](std::size_t i) {
    ResidualRecord& rec = report.records[i];
    rec.x = pts[i];
    try {
      const Gradient4 g = field_gradient(f, rec.x, opts.scheme);
      rec.semiconformality = std::abs(gradient_matrix(g).det());
      rec.wave = std::abs(wave_residual(f, rec.x, opts.scheme));
      if (grad_norm(g) < opts.grad_floor) {
        rec.status = PointStatus::ZeroGradient;
        return;
      }
      if (opts.spinor_pde) {
        const double h = first_step(rec.x);
        const auto r = pde_from_product(
            [&](const MinkVec& y) { return raise_both(spinor_gradient(f, y, opts.scheme)); },
            f.domain, rec.x, h);
        for (int k = 0; k < 8; ++k) rec.spinor_pde[k] = std::abs(r[k]);
      }
    } catch (const Error& e) {
      rec.status = PointStatus::Failed;
      rec.note = e.what();
    }
  });
  return report;
}

}  // namespace nullwave
