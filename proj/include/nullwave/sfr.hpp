#ifndef NULLWAVE_SFR_HPP
#define NULLWAVE_SFR_HPP

// Direction ratios, the shear-free condition, kernel-direction classification
// and the null-solution <-> shear-free congruence correspondence.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullwave/fields.hpp"

namespace nullwave {

/// Point of C u {inf} stored in one of two charts. In the direct chart the
/// ratio is `value`; in the reciprocal chart it is 1 / `value`. Constructors
/// keep |value| <= 1, switching charts at |ratio| = 1.
struct DirectionRatio {
  cplx value{};
  bool reciprocal = false;

  static DirectionRatio from_value(cplx ratio);
  /// ratio = num / den; throws ZeroVector when both vanish.
  static DirectionRatio from_homogeneous(cplx num, cplx den);
  static DirectionRatio infinity() { return {cplx(0.0), true}; }

  bool is_infinite() const { return reciprocal && value == cplx(0.0); }
  /// Ratio in the direct chart; throws ChartBreakdown at infinity.
  cplx finite_value() const;
  /// Coordinate in the requested chart, empty when it is infinite there.
  std::optional<cplx> in_chart(bool reciprocal_chart) const;
};

struct RatioField {
  std::function<DirectionRatio(const MinkVec&)> ratio;
  Box domain;
};

/// Shear-free condition for the unprimed direction xi = xi^0 / xi^1:
///   xi nabla_{00'} xi + nabla_{10'} xi,   xi nabla_{01'} xi + nabla_{11'} xi.
/// When the ratio at x is outside the unit disc the reciprocal chart is used,
/// with the equations multiplied through by xi~^3 (xi = 1 / xi~).
std::array<cplx, 2> sfr_residual(const RatioField& xi, const MinkVec& x,
                                 const Scheme& scheme = Scheme::central());

/// Shear-free condition for the primed direction eta = eta^{0'} / eta^{1'}:
///   eta nabla_{00'} eta + nabla_{01'} eta,   eta nabla_{10'} eta + nabla_{11'} eta.
std::array<cplx, 2> eta_sfr_residual(const RatioField& eta, const MinkVec& x,
                                     const Scheme& scheme = Scheme::central());

/// The four coupled first-order equations linking the two ratios:
///   eta nabla_{00'} xi + nabla_{01'} xi,  eta nabla_{10'} xi + nabla_{11'} xi,
///   xi nabla_{00'} eta + nabla_{10'} eta, xi nabla_{01'} eta + nabla_{11'} eta.
std::array<cplx, 4> direction_pde_residuals(const RatioField& xi, const RatioField& eta,
                                            const MinkVec& x,
                                            const Scheme& scheme = Scheme::central());

/// xi^0 / xi^1 and eta^{0'} / eta^{1'} of the factors of nabla f, taken from
/// the dominant column and row of the gradient matrix.
RatioField xi_ratio_of(const ScalarField& f, const Scheme& scheme);
RatioField eta_ratio_of(const ScalarField& f, const Scheme& scheme);

enum class Branch { XiBranch, EtaBranch, Coincident, NotInKernel };

const char* to_string(Branch b);

struct BranchClassification {
  Branch branch = Branch::NotInKernel;
  cplx alpha{};  // rho = alpha xi^A (Xi or Coincident)
  cplx beta{};   // rho = beta conj(eta^{A'}) (Eta or Coincident)
  double kernel_residual = 0.0;  // |df(v)| / (|grad f| |v|)
  double xi_wedge = 0.0;
  double eta_wedge = 0.0;
  NullDecomposition decomposition;
  Spinor xi_upper;
  Spinor eta_bar_upper;
};

struct ClassifyOptions {
  Scheme scheme = Scheme::analytic();
  double kernel_tol = 1e-8;    // relative to |grad f| |v|
  double parallel_tol = 1e-6;  // relative wedge below which spinors are parallel
  double null_tol = 1e-9;
  double factor_tol = 1e-6;
};

/// Places a null vector of ker df on the xi^A or conj(eta)^A branch.
BranchClassification classify_kernel_direction(const ScalarField& f, const MinkVec& x,
                                               const MinkVec& v,
                                               const ClassifyOptions& opts = {});

struct Theorem2Options {
  Scheme scheme = Scheme::analytic();
  double det_tol = 0.0;   // 0: 1e-9 with analytic gradients, 1e-6 otherwise
  double wave_tol = 1e-6;
  double sfr_tol = 1e-5;
  double grad_floor = 1e-12;
  double parallel_tol = 1e-6;
};

struct Theorem2Report {
  ResidualReport residuals;  // all columns populated for Ok points
  bool null_solution = false;
  double max_semiconformality = 0.0;
  double max_wave = 0.0;
  double xi_branch_max = 0.0;
  double eta_branch_max = 0.0;
  double max_kernel_residual = 0.0;
  std::size_t coincident_points = 0;
  std::vector<MinkVec> zero_gradient_points;
  std::size_t failed_points = 0;
  double sfr_tol = 0.0;

  bool xi_branch_sfr() const { return null_solution && xi_branch_max <= sfr_tol; }
  bool eta_branch_sfr() const { return null_solution && eta_branch_max <= sfr_tol; }
  /// Null solution and at least one branch shear-free over the grid.
  bool verdict() const { return xi_branch_sfr() || eta_branch_sfr(); }
};

Theorem2Report verify_theorem2(const ScalarField& f, const GridSpec& grid,
                               const Theorem2Options& opts = {});

struct ConverseOptions {
  double sfr_tol = 1e-5;
  double degenerate_tol = 1e-12;
  double h = 0.0;  // step for the derivative that defines eta
};

/// Spinor pair xi^A = (xi, 1), eta^{A'} = (-nabla_{01'} xi, nabla_{00'} xi)
/// built from a shear-free direction field. `samples` are checked for the
/// shear-free condition and for a non-constant ratio before the pair is built.
SpinorFieldPair sfr_to_solution(const RatioField& xi, const std::vector<MinkVec>& samples,
                                const ConverseOptions& opts = {});

}  // namespace nullwave

#endif
