#ifndef NULLWAVE_KERR_HPP
#define NULLWAVE_KERR_HPP

// Null solutions z(x) defined implicitly by xi(z) . x = 1, where xi(z) is a
// null complex 4-vector built from three meromorphic functions:
//   (i xi1, xi2, xi3, xi4) = (1 / 2h) (1 - f^2 - g^2, i (1 + f^2 + g^2), -2f, -2g).
// The dot is xi1 t + xi2 x1 + xi3 x2 + xi4 x3.

#include <array>
#include <optional>
#include <vector>

#include "nullwave/fields.hpp"
#include "nullwave/rational.hpp"
#include "nullwave/sfr.hpp"

namespace nullwave {

struct MeromorphicTriple {
  RationalFn f;
  RationalFn g;
  RationalFn h = RationalFn::constant(1.0);
};

/// xi(z); throws PoleAt or ZeroH.
std::array<cplx, 4> weierstrass_xi(const MeromorphicTriple& T, cplx z);
/// d xi / dz.
std::array<cplx, 4> weierstrass_xi_prime(const MeromorphicTriple& T, cplx z);

/// xi1^2 - xi2^2 - xi3^2 - xi4^2, relative to |xi|^2.
double nullity_defect(const std::array<cplx, 4>& xi);

/// xi(z) . x - 1.
cplx kerr_equation(const MeromorphicTriple& T, cplx z, const MinkVec& x);

/// Every admissible root of xi(z) . x = 1, sorted by modulus then argument.
/// Throws DegenerateEquation when the cleared equation does not depend on z
/// and NoRootFound when no root survives.
std::vector<cplx> kerr_roots(const MeromorphicTriple& T, const MinkVec& x);

struct KerrRoot {
  cplx z;
  int branch = 0;  // index into kerr_roots(T, x)
  std::size_t root_count = 0;
};

/// Root nearest to `seed` when one is given, otherwise root number `branch`.
KerrRoot kerr_solve(const MeromorphicTriple& T, const MinkVec& x,
                    std::optional<cplx> seed = std::nullopt, int branch = 0);

/// Roots along a sequence of points, each warm-started from the previous one.
std::vector<cplx> kerr_track(const MeromorphicTriple& T, const std::vector<MinkVec>& path,
                             std::optional<cplx> seed = std::nullopt, int branch = 0);

/// dz/dx_j = -xi_j / (xi'(z) . x); throws SingularDenominator.
Gradient4 kerr_gradient(const MeromorphicTriple& T, cplx z, const MinkVec& x);

struct KerrSpinors {
  Spinor xi;   // xi_A
  Spinor eta;  // eta_{A'}
};

/// xi_A = k (f - i g, i), eta_{A'} = k (-i f + g, 1), k = 1 / sqrt(sqrt2 h (xi' . x)),
/// principal square root.
KerrSpinors kerr_spinors(const MeromorphicTriple& T, cplx z, const MinkVec& x);

ScalarField kerr_field(const MeromorphicTriple& T, const Box& domain, int branch = 0,
                       const std::string& label = "kerr");
SpinorFieldPair kerr_pair(const MeromorphicTriple& T, const Box& domain, int branch = 0);

/// xi^0 / xi^1 = -i / (f - i g) and eta^{0'} / eta^{1'} = 1 / (i f - g) along z(x).
RatioField kerr_xi_ratio(const MeromorphicTriple& T, const Box& domain, int branch = 0);
RatioField kerr_eta_ratio(const MeromorphicTriple& T, const Box& domain, int branch = 0);

/// f = z, g = 0, h = 1.
MeromorphicTriple kerr_basic_triple();
/// t, x1, x3 in [-0.25, 0.25], x2 in [0.75, 1.25].
Box kerr_basic_domain();

}  // namespace nullwave

#endif
