#ifndef NULLWAVE_SPINOR_HPP
#define NULLWAVE_SPINOR_HPP

// Two-component spinor algebra on Minkowski space.
//
// Conventions:
//   x^{AA'} = (1/sqrt2) [[t + x1, x2 + i x3], [x2 - i x3, t - x1]]
//   eps = [[0, 1], [-1, 0]],  xi^A = eps^{AB} xi_B,  xi_B = xi^A eps_{AB}
// so that xi^0 = xi_1, xi^1 = -xi_0 and xi_0 = -xi^1, xi_1 = xi^0.
// Gradients use the conjugate placement of the x2/x3 slots:
//   nabla_{AA'} = (1/sqrt2) [[d0 + d1, d2 - i d3], [d2 + i d3, d0 - d1]].

#include <array>
#include <complex>

namespace nullwave {

using cplx = std::complex<double>;

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr cplx kI{0.0, 1.0};

struct Tolerances {
  double null_tol = 1e-9;
  double herm_tol = 1e-9;
  double annihilate_tol = 1e-9;
};

/// Real Minkowski vector, signature (-,+,+,+).
struct MinkVec {
  double t = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  double operator[](int a) const;
  double& operator[](int a);

  double minkowski_norm() const { return -t * t + x1 * x1 + x2 * x2 + x3 * x3; }
  double euclid_norm2() const { return t * t + x1 * x1 + x2 * x2 + x3 * x3; }
  double max_abs() const;

  friend MinkVec operator+(const MinkVec& a, const MinkVec& b) {
    return {a.t + b.t, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend MinkVec operator-(const MinkVec& a, const MinkVec& b) {
    return {a.t - b.t, a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
  }
  friend MinkVec operator*(double s, const MinkVec& a) {
    return {s * a.t, s * a.x1, s * a.x2, s * a.x3};
  }
  friend bool operator==(const MinkVec&, const MinkVec&) = default;
};

bool is_null(const MinkVec& v, double null_tol = Tolerances{}.null_tol);

/// Index placement of a two-component spinor.
enum class Variance { LowerUnprimed, UpperUnprimed, LowerPrimed, UpperPrimed };

bool is_lower(Variance v);
bool is_primed(Variance v);

struct Spinor {
  cplx c0{};
  cplx c1{};
  Variance variance = Variance::UpperUnprimed;

  cplx operator[](int i) const { return i == 0 ? c0 : c1; }
  double norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }
};

Spinor raise(const Spinor& s);
Spinor lower(const Spinor& s);

/// Complex conjugate; swaps primed and unprimed, keeps the index position.
Spinor conj(const Spinor& s);

/// a_A b^A for one lower and one upper spinor of matching primedness.
cplx contract(const Spinor& a, const Spinor& b);

/// |a^0 b^1 - a^1 b^0| / (|a| |b|), zero when a and b are parallel.
double wedge_rel(const Spinor& a, const Spinor& b);

/// Rescale by a unit phase so the larger-magnitude component is real positive.
Spinor gauge_fix(const Spinor& s);

enum class MatRole { Position, Gradient, Direction };

struct SpinMat {
  std::array<std::array<cplx, 2>, 2> m{};
  MatRole role = MatRole::Position;

  cplx operator()(int a, int ap) const { return m[a][ap]; }
  cplx& operator()(int a, int ap) { return m[a][ap]; }

  cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  double norm() const;  // Frobenius
  SpinMat adjoint() const;
  /// Frobenius norm of (M - M^dagger) / 2.
  double antihermitian_norm() const;

  friend SpinMat operator+(SpinMat a, const SpinMat& b) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.m[i][j] += b.m[i][j];
    return a;
  }
  friend SpinMat operator-(SpinMat a, const SpinMat& b) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.m[i][j] -= b.m[i][j];
    return a;
  }
  friend SpinMat operator*(SpinMat a, cplx s) {
    for (auto& row : a.m)
      for (auto& e : row) e *= s;
    return a;
  }
};

/// Entrywise a[A] * b[A'].
SpinMat outer(const Spinor& a, const Spinor& b, MatRole role = MatRole::Direction);

SpinMat vec_to_spinmat(const MinkVec& v);
MinkVec spinmat_to_vec(const SpinMat& m, double herm_tol = Tolerances{}.herm_tol);

/// Complexified forms of the position correspondence; no Hermiticity needed.
SpinMat complex_vec_to_spinmat(const std::array<cplx, 4>& v);
std::array<cplx, 4> spinmat_to_complex_vec(const SpinMat& m);

/// Gradient-role matrix from the four partials (d0 f, d1 f, d2 f, d3 f).
SpinMat gradient_matrix(const std::array<cplx, 4>& partials);
/// Inverse of gradient_matrix: the covector components theta_a.
std::array<cplx, 4> covector_components(const SpinMat& g);

struct NullDecomposition {
  double lambda = 0.0;
  Spinor rho;  // upper unprimed, unit norm, gauge fixed
};

/// v^{AA'} = lambda rho^A conj(rho)^{A'} for a nonzero null v.
NullDecomposition null_decompose(const MinkVec& v, double null_tol = Tolerances{}.null_tol);

/// Given xi_A with xi_A M^{AA'} = 0, return sigma^{A'} with M^{AA'} = xi^A sigma^{A'}.
Spinor solve_annihilator(const Spinor& xi_lower, const SpinMat& m,
                         double annihilate_tol = Tolerances{}.annihilate_tol);

/// sum_{A,A'} G_{AA'} V^{AA'}; equals df(v) for G = nabla f and V = v^{AA'}.
cplx contract_full(const SpinMat& g, const SpinMat& v);

}  // namespace nullwave

#endif
