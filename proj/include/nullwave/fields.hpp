#ifndef NULLWAVE_FIELDS_HPP
#define NULLWAVE_FIELDS_HPP

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nullwave/spinor.hpp"

namespace nullwave {

using Gradient4 = std::array<cplx, 4>;

/// Axis-aligned box in (t, x1, x2, x3).
struct Box {
  std::array<double, 4> lo{-1.0, -1.0, -1.0, -1.0};
  std::array<double, 4> hi{1.0, 1.0, 1.0, 1.0};

  /// True when every coordinate of x lies at least `margin` inside the box.
  bool contains(const MinkVec& x, double margin = 0.0) const;
  MinkVec center() const;
};

/// A complex function on a Minkowski domain with an optional exact gradient.
struct ScalarField {
  std::string label;
  Box domain;
  std::function<cplx(const MinkVec&)> evaluate;
  std::function<Gradient4(const MinkVec&)> analytic_gradient;

  bool has_analytic_gradient() const { return static_cast<bool>(analytic_gradient); }
};

enum class SchemeKind { Analytic, Central };

/// Differentiation scheme. h = 0 selects the default step.
struct Scheme {
  SchemeKind kind = SchemeKind::Central;
  double h = 0.0;

  static Scheme analytic() { return {SchemeKind::Analytic, 0.0}; }
  static Scheme central(double h = 0.0) { return {SchemeKind::Central, h}; }
};

/// Default steps: 1e-4 for first and nested derivatives, 1e-3 for the
/// five-point second derivative, both scaled by max(1, |x|_inf).
double first_step(const MinkVec& x, double h = 0.0);
double second_step(const MinkVec& x, double h = 0.0);

/// Central-difference partials of a vector-space valued function. Throws
/// OutOfDomain when the stencil leaves `domain`.
template <typename T, typename F>
std::array<T, 4> central_partials(const F& fn, const Box& domain, const MinkVec& x, double h);

Gradient4 field_gradient(const ScalarField& f, const MinkVec& x, const Scheme& scheme);

SpinMat spinor_gradient(const ScalarField& f, const MinkVec& x, const Scheme& scheme);

/// det nabla_{AA'} f = (1/2) [(d0 f)^2 - (d1 f)^2 - (d2 f)^2 - (d3 f)^2].
cplx semiconformality_residual(const ScalarField& f, const MinkVec& x, const Scheme& scheme);

/// d0^2 f - d1^2 f - d2^2 f - d3^2 f. With an analytic gradient the gradient
/// is differenced once; otherwise second central differences are used.
cplx wave_residual(const ScalarField& f, const MinkVec& x, const Scheme& scheme);

struct GradientFactors {
  Spinor xi;   // xi_A, unit norm, gauge fixed
  Spinor eta;  // eta_{A'}
};

/// Dominant column and row directions of M (leading eigenvectors of M M^dagger
/// and M^T conj(M)); smooth in M wherever the singular values separate.
std::array<cplx, 2> column_direction(const SpinMat& m);
std::array<cplx, 2> row_direction(const SpinMat& m);

/// M_{AA'} = xi_A eta_{A'} for a rank-one gradient matrix.
GradientFactors factorize_gradient(const SpinMat& m, double factor_tol = 1e-9);

/// Spinor fields xi, eta on a domain. Either index placement is accepted;
/// lower-index values are raised before differentiation.
struct SpinorFieldPair {
  std::function<Spinor(const MinkVec&)> xi;
  std::function<Spinor(const MinkVec&)> eta;
  Box domain;
  std::string gauge_note;
};

/// Upper-index product xi^B eta^{A'} at x.
SpinMat upper_product(const SpinorFieldPair& pair, const MinkVec& x);

/// Left-hand sides of the eight component equations of
///   nabla_{AA'} xi^B eta^{A'} = 0,  nabla_{AA'} xi^A eta^{B'} = 0,
/// ordered (A,B) = 00,01,10,11 for the first block and (A',B') = 00,01,10,11
/// for the second. Products are differentiated as a whole, so a sign flip of
/// both spinors between stencil points does not disturb the result.
std::array<cplx, 8> spinor_pde_residuals(const SpinorFieldPair& pair, const MinkVec& x,
                                         const Scheme& scheme = Scheme::central());

/// Pair whose product is the raised gradient of f.
SpinorFieldPair gradient_pair(const ScalarField& f, const Scheme& scheme);

/// Complex 1-form theta_a on a domain.
struct OneFormField {
  std::function<std::array<cplx, 4>(const MinkVec&)> components;
  Box domain;
};

/// theta_a with nabla_{AA'} theta = xi_A eta_{A'}.
OneFormField one_form_of(const SpinorFieldPair& pair);

struct Closedness {
  // (d1 v0 - d0 v1, d2 v0 - d0 v2, d3 v0 - d0 v3, d2 v1 - d1 v2, d3 v1 - d1 v3, d3 v2 - d2 v3)
  std::array<cplx, 6> curl{};
  cplx div{};  // d0 v0 - d1 v1 - d2 v2 - d3 v3

  double max_abs() const;
};

Closedness closedness_check(const OneFormField& v, const MinkVec& x, double h = 0.0);

// ---------------------------------------------------------------------------
// Grid scans and residual reports.

struct GridSpec {
  std::array<double, 4> min{};
  std::array<double, 4> max{};
  std::array<int, 4> count{5, 5, 5, 5};

  std::size_t size() const;
  /// Lexicographic order, x3 fastest.
  std::vector<MinkVec> points() const;
  static GridSpec inside(const Box& domain, double fraction, int n);
};

enum class PointStatus { Ok, ZeroGradient, Failed };

const char* to_string(PointStatus s);

/// Residual magnitudes at one grid point. Columns that a pipeline does not
/// compute stay NaN and serialize as empty / null.
struct ResidualRecord {
  MinkVec x;
  PointStatus status = PointStatus::Ok;
  double semiconformality = kNaN;
  double wave = kNaN;
  std::array<double, 8> spinor_pde{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
  double sfr_xi = kNaN;
  double sfr_eta = kNaN;
  // Branch columns, filled by the theorem-2 verifier.
  double kernel_xi = kNaN;
  double kernel_eta = kNaN;
  int coincident = -1;
  std::string note;

  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
};

struct ColumnStats {
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

struct ResidualReport {
  std::string label;
  std::vector<ResidualRecord> records;

  /// Column names in serialization order (residual columns only).
  static const std::vector<std::string>& residual_columns();
  /// Value of residual column `i` of a record.
  static double column_value(const ResidualRecord& r, std::size_t i);

  /// max/mean over Ok records with finite values, recomputed on each call.
  std::vector<ColumnStats> aggregate() const;
  ColumnStats aggregate(const std::string& column) const;
};

struct ScanOptions {
  Scheme scheme = Scheme::analytic();
  double grad_floor = 1e-12;
  bool spinor_pde = true;
};

/// Null-solution residuals of f on every grid point. Points with
/// |grad f| < grad_floor are reported as ZeroGradient.
ResidualReport scan_null_solution(const ScalarField& f, const GridSpec& grid,
                                  const ScanOptions& opts = {});

}  // namespace nullwave

#include "nullwave/detail/fd.hpp"

#endif
