#ifndef NULLWAVE_RATIONAL_HPP
#define NULLWAVE_RATIONAL_HPP

#include <complex>
#include <initializer_list>
#include <vector>

namespace nullwave {

using cplx = std::complex<double>;

/// Complex polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(cplx v) { return Polynomial{v}; }
  static Polynomial identity() { return Polynomial{0.0, 1.0}; }

  const std::vector<cplx>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }
  double coeff_norm() const;  // sum of |c_k|

  cplx operator()(cplx z) const;
  Polynomial derivative() const;

  /// Drops leading coefficients with |c| <= rel_tol * max |c_k|.
  Polynomial trimmed(double rel_tol) const;
  /// Quotient of division by (z - root); the remainder is discarded.
  Polynomial deflate(cplx root) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);

 private:
  void trim();  // exact zeros only
  std::vector<cplx> c_;
};

/// All roots of a polynomial of degree >= 1. Degrees 1 and 2 use closed
/// forms (the quadratic in its cancellation-free arrangement); higher degrees
/// use Aberth-Ehrlich iteration followed by Newton polishing.
std::vector<cplx> poly_roots(const Polynomial& p);

/// num / den with a monic denominator and common roots cancelled.
class RationalFn {
 public:
  RationalFn() : num_{}, den_{1.0} {}
  RationalFn(Polynomial num, Polynomial den = Polynomial{1.0});

  static RationalFn constant(cplx v) { return RationalFn(Polynomial{v}); }
  static RationalFn identity() { return RationalFn(Polynomial::identity()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_pole(cplx z) const;
  std::vector<cplx> poles() const;

  /// Throws PoleAt when z is a pole.
  cplx operator()(cplx z) const;
  RationalFn derivative() const;

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(cplx s, const RationalFn& a);

  static constexpr double kCancelTol = 1e-12;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace nullwave

#endif
