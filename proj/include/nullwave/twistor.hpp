#ifndef NULLWAVE_TWISTOR_HPP
#define NULLWAVE_TWISTOR_HPP

// Twistors X = (xi_0, xi_1, eta^{0'}, eta^{1'}), the incidence relation with
// Minkowski points, light rays, the Hopf map and twistorial surfaces.
//
// Incidence is written with u = t + x1, v = t - x1, q = x2 + i x3:
//   r = u eta^{0'} + q eta^{1'} + i xi_0,   s = conj(q) eta^{0'} + v eta^{1'} + i xi_1.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullwave/fields.hpp"

namespace nullwave {

struct Twistor {
  std::array<cplx, 4> c{};

  cplx operator[](int i) const { return c[i]; }
  cplx& operator[](int i) { return c[i]; }
  double norm2() const;
  Spinor xi() const { return {c[0], c[1], Variance::LowerUnprimed}; }
  Spinor eta() const { return {c[2], c[3], Variance::UpperPrimed}; }

  friend Twistor operator+(const Twistor& a, const Twistor& b);
  friend Twistor operator*(cplx s, const Twistor& a);
};

struct DualTwistor {
  std::array<cplx, 4> c{};
  cplx operator[](int i) const { return c[i]; }
};

DualTwistor conj(const Twistor& X);
Twistor conj(const DualTwistor& L);

/// X^a conj(L)_a = X0 conj(L2) + X1 conj(L3) + X2 conj(L0) + X3 conj(L1).
cplx inner(const Twistor& X, const Twistor& L);

/// |inner(X, X)| <= tol |X|^2; throws ZeroTwistor.
bool is_null(const Twistor& X, double tol = 1e-9);

/// All 2x2 cross products vanish to tol |X| |Y|.
bool projectively_equal(const Twistor& X, const Twistor& Y, double tol = 1e-12);

/// (r, s) above.
std::array<cplx, 2> incidence_residual(const Twistor& X, const MinkVec& x);

/// The twistor through x with the given eta (r = s = 0).
Twistor point_twistor(const MinkVec& x, cplx eta0, cplx eta1);

struct Ray {
  MinkVec point;
  MinkVec direction;  // null, t component 1
};

/// Light ray of a null twistor; throws NotNull or EtaZero.
Ray ray_through(const Twistor& X, double tol = 1e-9);

struct Quaternion {
  double w = 0.0;  // 1
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b);
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// [f, g, h, k] -> [f + g j, h + k j]; throws ZeroPoint.
std::array<Quaternion, 2> hopf(const std::array<cplx, 4>& p);

/// conj(h) f + k conj(g) + h conj(f) + conj(k) g = 0 to tol |p|^2; throws ZeroPoint.
bool in_N5(const std::array<cplx, 4>& p, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Twistorial surfaces.

/// sum c[i][j] z^i w^j.
struct BivariatePoly {
  std::vector<std::vector<cplx>> c;

  cplx operator()(cplx z, cplx w) const;
  cplx dz(cplx z, cplx w) const;
  cplx dw(cplx z, cplx w) const;
  bool is_constant(cplx value) const;
  /// True when the polynomial is exactly z.
  bool is_z() const;
};

/// Holomorphic chart (z, w) -> [xi_0, xi_1, eta^{0'}, eta^{1'}].
struct TwistorSurface {
  std::string label;
  std::function<Twistor(cplx, cplx)> eval;
  /// (d/dz, d/dw) of the chart.
  std::function<std::array<Twistor, 2>(cplx, cplx)> jacobian;
  bool normal_form = false;  // eta^{0'} = z, eta^{1'} = 1
};

/// Exact derivatives; normal_form is detected from the coefficients.
TwistorSurface polynomial_surface(const std::array<BivariatePoly, 4>& slots,
                                  const std::string& label = "surface");

/// Derivatives by the Cauchy integral over a circle of radius 1e-2 (32 nodes).
TwistorSurface holomorphic_surface(std::function<Twistor(cplx, cplx)> chart, bool normal_form,
                                   const std::string& label = "surface");

struct ChartPoint {
  cplx z;
  cplx w;
};

/// Rank of the 2x4 Jacobian is 2 at every sample.
bool is_regular(const TwistorSurface& S, const std::vector<ChartPoint>& samples,
                double tol = 1e-10);

/// d/dw (eta^{0'} / eta^{1'}) vanishes at every sample; throws EtaDenominatorZero.
bool check_prop_condition(const TwistorSurface& S, const std::vector<ChartPoint>& samples,
                          double tol = 1e-10);

/// Chart (z~, w~) -> [xi_0, xi_1, z~, 1] agreeing projectively with S near
/// `base`. z~ = eta^{0'} / eta^{1'}; w~ is xi_0 / eta^{1'} or, when that
/// minor vanishes, xi_1 / eta^{1'}. Inversion is by Newton from `base`.
/// Throws SingularChart.
TwistorSurface normalize_chart(const TwistorSurface& S, ChartPoint base, double tol = 1e-10);

struct IncidenceOptions {
  int max_iter = 50;
  double tol = 1e-12;
  int lattice = 5;          // lattice x lattice seeds per coordinate
  double lattice_half = 2.0;
};

struct IncidenceSolution {
  cplx z;
  cplx w;
  int seed_index = 0;  // -1: caller seed
  int iterations = 0;
};

/// Newton on r = s = 0 from the caller seed, then from a deterministic seed
/// lattice; the first convergent start wins. Throws SingularBracket when the
/// only solutions found have {r, s} = 0, otherwise NewtonDiverged.
IncidenceSolution solve_incidence(const TwistorSurface& S, const MinkVec& x,
                                  std::optional<ChartPoint> seed = std::nullopt,
                                  const IncidenceOptions& opts = {});

/// r_z s_w - s_z r_w.
cplx incidence_bracket(const TwistorSurface& S, cplx z, cplx w, const MinkVec& x);

/// (z_u, z_v, z_q, z_qbar); throws SingularBracket.
std::array<cplx, 4> incidence_partials(const TwistorSurface& S, cplx z, cplx w,
                                       const MinkVec& x);

/// (d_t z, d_x1 z, d_x2 z, d_x3 z) from the four partials above.
Gradient4 minkowski_gradient(const std::array<cplx, 4>& uvq);

/// z(x) of the surface as a scalar field with the closed-form gradient.
ScalarField surface_field(const TwistorSurface& S, const Box& domain,
                          std::optional<ChartPoint> seed = std::nullopt,
                          const std::string& label = "surface");

/// [w, 0, z, 1].
TwistorSurface surface_basic();
/// t, x1, x3 in [-0.5, 0.5], x2 in [0.5, 1.5].
Box surface_basic_domain();
/// [z, z, w, 1]: eta^{0'} / eta^{1'} depends on w.
TwistorSurface surface_tilted();

}  // namespace nullwave

#endif
