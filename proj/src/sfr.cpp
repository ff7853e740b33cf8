#include "nullwave/sfr.hpp"

#include <algorithm>
#include <cmath>

#include "nullwave/error.hpp"
#include "nullwave/parallel.hpp"

namespace nullwave {

namespace {

// Homogeneous coordinates (p, q) of a ratio p / q in the chart chosen at x,
// and the nabla matrix of the Wronskian q nabla p - p nabla q.
struct Jet {
  cplx p;
  cplx q;
  SpinMat w;
};

Jet ratio_jet(const RatioField& f, const MinkVec& x, double h) {
  const bool chart = f.ratio(x).reciprocal;
  auto coord = [&](const MinkVec& y) {
    const auto v = f.ratio(y).in_chart(chart);
    if (!v) throw Error(ErrorKind::ChartBreakdown, "ratio is infinite in both charts near x");
    return *v;
  };
  const cplx value = coord(x);
  const SpinMat dw = gradient_matrix(central_partials<cplx>(coord, f.domain, x, h));
  if (!chart) return {value, 1.0, dw};
  return {1.0, value, dw * cplx(-1.0)};
}

double rel_kernel(const SpinMat& g, const SpinMat& v) {
  const double scale = g.norm() * v.norm();
  return scale == 0.0 ? 0.0 : std::abs(contract_full(g, v)) / scale;
}

DirectionRatio xi_ratio_from_gradient(const SpinMat& g) {
  // xi^A = (xi_1, -xi_0)
  const auto v = column_direction(g);
  return DirectionRatio::from_homogeneous(v[1], -v[0]);
}

DirectionRatio eta_ratio_from_gradient(const SpinMat& g) {
  // eta^{A'} = (eta_{1'}, -eta_{0'})
  const auto v = row_direction(g);
  return DirectionRatio::from_homogeneous(v[1], -v[0]);
}

}  // namespace

DirectionRatio DirectionRatio::from_value(cplx ratio) {
  if (std::abs(ratio) <= 1.0) return {ratio, false};
  return {1.0 / ratio, true};
}

DirectionRatio DirectionRatio::from_homogeneous(cplx num, cplx den) {
  if (num == cplx(0.0) && den == cplx(0.0)) {
    throw Error(ErrorKind::ZeroVector, "direction ratio of a zero spinor");
  }
  if (std::abs(num) <= std::abs(den)) return {num / den, false};
  return {den / num, true};
}

cplx DirectionRatio::finite_value() const {
  const auto v = in_chart(false);
  if (!v) throw Error(ErrorKind::ChartBreakdown, "ratio is infinite");
  return *v;
}

std::optional<cplx> DirectionRatio::in_chart(bool reciprocal_chart) const {
  if (reciprocal_chart == reciprocal) return value;
  if (value == cplx(0.0)) return std::nullopt;
  return 1.0 / value;
}

std::array<cplx, 2> sfr_residual(const RatioField& xi, const MinkVec& x, const Scheme& scheme) {
  const Jet j = ratio_jet(xi, x, first_step(x, scheme.h));
  return {j.p * j.w(0, 0) + j.q * j.w(1, 0), j.p * j.w(0, 1) + j.q * j.w(1, 1)};
}

std::array<cplx, 2> eta_sfr_residual(const RatioField& eta, const MinkVec& x,
                                     const Scheme& scheme) {
  const Jet j = ratio_jet(eta, x, first_step(x, scheme.h));
  return {j.p * j.w(0, 0) + j.q * j.w(0, 1), j.p * j.w(1, 0) + j.q * j.w(1, 1)};
}

std::array<cplx, 4> direction_pde_residuals(const RatioField& xi, const RatioField& eta,
                                            const MinkVec& x, const Scheme& scheme) {
  const double h = first_step(x, scheme.h);
  const Jet a = ratio_jet(xi, x, h);
  const Jet b = ratio_jet(eta, x, h);
  return {b.p * a.w(0, 0) + b.q * a.w(0, 1), b.p * a.w(1, 0) + b.q * a.w(1, 1),
          a.p * b.w(0, 0) + a.q * b.w(1, 0), a.p * b.w(0, 1) + a.q * b.w(1, 1)};
}

RatioField xi_ratio_of(const ScalarField& f, const Scheme& scheme) {
  return {[f, scheme](const MinkVec& x) {
            return xi_ratio_from_gradient(spinor_gradient(f, x, scheme));
          },
          f.domain};
}

RatioField eta_ratio_of(const ScalarField& f, const Scheme& scheme) {
  return {[f, scheme](const MinkVec& x) {
            return eta_ratio_from_gradient(spinor_gradient(f, x, scheme));
          },
          f.domain};
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::XiBranch: return "XiBranch";
    case Branch::EtaBranch: return "EtaBranch";
    case Branch::Coincident: return "Coincident";
    case Branch::NotInKernel: return "NotInKernel";
  }
  return "Unknown";
}

BranchClassification classify_kernel_direction(const ScalarField& f, const MinkVec& x,
                                               const MinkVec& v, const ClassifyOptions& opts) {
  BranchClassification out;
  out.decomposition = null_decompose(v, opts.null_tol);

  const SpinMat g = spinor_gradient(f, x, opts.scheme);
  if (g.norm() == 0.0) throw Error(ErrorKind::ZeroGradient, "df vanishes at x");

  const SpinMat vm = vec_to_spinmat(v);
  out.kernel_residual = rel_kernel(g, vm);

  const GradientFactors factors = factorize_gradient(g, opts.factor_tol);
  out.xi_upper = raise(factors.xi);
  out.eta_bar_upper = conj(raise(factors.eta));

  const Spinor& rho = out.decomposition.rho;
  out.xi_wedge = wedge_rel(rho, out.xi_upper);
  out.eta_wedge = wedge_rel(rho, out.eta_bar_upper);

  auto coefficient = [&](const Spinor& base) {
    const double n2 = base.norm() * base.norm();
    return (std::conj(base.c0) * rho.c0 + std::conj(base.c1) * rho.c1) / n2;
  };
  out.alpha = coefficient(out.xi_upper);
  out.beta = coefficient(out.eta_bar_upper);

  if (out.kernel_residual > opts.kernel_tol) {
    out.branch = Branch::NotInKernel;
    return out;
  }
  const bool on_xi = out.xi_wedge <= opts.parallel_tol;
  const bool on_eta = out.eta_wedge <= opts.parallel_tol;
  if (on_xi && on_eta) {
    out.branch = Branch::Coincident;
  } else if (on_xi) {
    out.branch = Branch::XiBranch;
  } else if (on_eta) {
    out.branch = Branch::EtaBranch;
  } else {
    // In the kernel to tolerance but on neither branch; reported as such so
    // callers can count it.
    out.branch = Branch::NotInKernel;
  }
  return out;
}

Theorem2Report verify_theorem2(const ScalarField& f, const GridSpec& grid,
                               const Theorem2Options& opts) {
  const bool analytic = opts.scheme.kind == SchemeKind::Analytic && f.has_analytic_gradient();
  const double det_tol = opts.det_tol > 0.0 ? opts.det_tol : (analytic ? 1e-9 : 1e-6);

  Theorem2Report out;
  out.sfr_tol = opts.sfr_tol;
  ScanOptions scan;
  scan.scheme = opts.scheme;
  scan.grad_floor = opts.grad_floor;
  out.residuals = scan_null_solution(f, grid, scan);

  bool ok = true;
  for (const auto& r : out.residuals.records) {
    if (r.status == PointStatus::ZeroGradient) {
      out.zero_gradient_points.push_back(r.x);
      continue;
    }
    if (r.status == PointStatus::Failed) {
      ++out.failed_points;
      ok = false;
      continue;
    }
    out.max_semiconformality = std::max(out.max_semiconformality, r.semiconformality);
    out.max_wave = std::max(out.max_wave, r.wave);
  }
  ok = ok && out.max_semiconformality <= det_tol && out.max_wave <= opts.wave_tol;
  out.null_solution = ok;
  if (!ok) return out;

  const RatioField xi = xi_ratio_of(f, opts.scheme);
  const RatioField eta = eta_ratio_of(f, opts.scheme);
  auto& records = out.residuals.records;

  parallel_for(records.size(), [&](std::size_t i) {
    ResidualRecord& rec = records[i];
    if (rec.status != PointStatus::Ok) return;
    try {
      const SpinMat g = spinor_gradient(f, rec.x, opts.scheme);
      const GradientFactors factors = factorize_gradient(g, 1e-6);
      const Spinor xi_up = raise(factors.xi);
      const Spinor eta_up = raise(factors.eta);
      rec.kernel_xi = rel_kernel(g, outer(xi_up, conj(xi_up)));
      rec.kernel_eta = rel_kernel(g, outer(conj(eta_up), eta_up));
      rec.coincident = wedge_rel(xi_up, conj(eta_up)) <= opts.parallel_tol ? 1 : 0;

      const Scheme step = Scheme::central(first_step(rec.x));
      const auto sx = sfr_residual(xi, rec.x, step);
      const auto se = eta_sfr_residual(eta, rec.x, step);
      rec.sfr_xi = std::max(std::abs(sx[0]), std::abs(sx[1]));
      rec.sfr_eta = std::max(std::abs(se[0]), std::abs(se[1]));
    } catch (const Error& e) {
      rec.status = PointStatus::Failed;
      rec.note = e.what();
    }
  });

  for (const auto& r : records) {
    if (r.status == PointStatus::Failed) {
      ++out.failed_points;
      out.null_solution = false;
      continue;
    }
    if (r.status != PointStatus::Ok) continue;
    out.xi_branch_max = std::max(out.xi_branch_max, r.sfr_xi);
    out.eta_branch_max = std::max(out.eta_branch_max, r.sfr_eta);
    out.max_kernel_residual = std::max({out.max_kernel_residual, r.kernel_xi, r.kernel_eta});
    if (r.coincident == 1) ++out.coincident_points;
  }
  return out;
}

SpinorFieldPair sfr_to_solution(const RatioField& xi, const std::vector<MinkVec>& samples,
                                const ConverseOptions& opts) {
  bool varies = false;
  for (const auto& x : samples) {
    const auto r = sfr_residual(xi, x, Scheme::central(opts.h));
    if (std::max(std::abs(r[0]), std::abs(r[1])) > opts.sfr_tol) {
      throw Error(ErrorKind::NotSFR, "direction field is not shear-free");
    }
    const auto coord = [&](const MinkVec& y) { return xi.ratio(y).finite_value(); };
    const auto d = central_partials<cplx>(coord, xi.domain, x, first_step(x, opts.h));
    for (const auto& c : d) varies = varies || std::abs(c) > opts.degenerate_tol;
  }
  if (!varies) {
    throw Error(ErrorKind::DegenerateConstantRatio, "constant ratio gives eta = 0");
  }

  SpinorFieldPair pair;
  pair.domain = xi.domain;
  pair.gauge_note = "xi^1 = 1";
  pair.xi = [xi](const MinkVec& x) {
    return Spinor{xi.ratio(x).finite_value(), 1.0, Variance::UpperUnprimed};
  };
  const double h = opts.h;
  pair.eta = [xi, h](const MinkVec& x) {
    const auto coord = [&](const MinkVec& y) { return xi.ratio(y).finite_value(); };
    const SpinMat d =
        gradient_matrix(central_partials<cplx>(coord, xi.domain, x, first_step(x, h)));
    return Spinor{-d(0, 1), d(0, 0), Variance::UpperPrimed};
  };
  return pair;
}

}  // namespace nullwave
