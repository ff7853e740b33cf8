// One PASS/FAIL line per acceptance criterion.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "nullwave/builtins.hpp"
#include "nullwave/error.hpp"
#include "nullwave/kerr.hpp"
#include "nullwave/sfr.hpp"
#include "nullwave/twistor.hpp"

using namespace nullwave;
namespace fs = std::filesystem;

namespace {

std::mt19937_64 rng(424242);
double uni(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
cplx cuni() { return {uni(), uni()}; }

struct Check {
  std::ostringstream detail;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << what;
      ok = false;
    }
  }
};

const char* const kNullBuiltins[] = {"u", "q", "kerr-basic", "surface-basic"};

double max_abs(const auto& arr) {
  double m = 0.0;
  for (const auto& c : arr) m = std::max(m, std::abs(c));
  return m;
}

MinkVec random_inside(const Box& b, double frac = 0.8) {
  MinkVec x;
  for (int a = 0; a < 4; ++a) {
    const double c = 0.5 * (b.lo[a] + b.hi[a]);
    const double r = 0.5 * (b.hi[a] - b.lo[a]) * frac;
    x[a] = uni(c - r, c + r);
  }
  return x;
}

// ---------------------------------------------------------------------------

void criterion1(Check& c) {
  double det = 0.0, rt = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const MinkVec v{uni(-3, 3), uni(-3, 3), uni(-3, 3), uni(-3, 3)};
    const double q = 0.5 * (v.t * v.t - v.x1 * v.x1 - v.x2 * v.x2 - v.x3 * v.x3);
    det = std::max(det, std::abs(vec_to_spinmat(v).det() - q) / std::max(1.0, v.euclid_norm2()));

    const Spinor s{cuni(), cuni(), i % 2 ? Variance::LowerPrimed : Variance::LowerUnprimed};
    const Spinor back = lower(raise(s));
    c.require(back.c0 == s.c0 && back.c1 == s.c1 && back.variance == s.variance, "epsilon roundtrip not exact");
  }
  for (int i = 0; i < 1000; ++i) {
    const Spinor xi{cuni(), cuni(), Variance::LowerUnprimed};
    const Spinor sigma{cuni(), cuni(), Variance::UpperPrimed};
    const SpinMat m = outer(raise(xi), sigma);
    const Spinor got = solve_annihilator(xi, m);
    rt = std::max(rt, std::abs(got.c0 - sigma.c0) + std::abs(got.c1 - sigma.c1));
  }
  c.detail << "det rel " << det << ", annihilator " << rt << "; ";
  c.require(det <= 1e-12, "determinant identity");
  c.require(rt <= 1e-12, "annihilator roundtrip");
}

void criterion2(Check& c) {
  ScanOptions analytic;
  analytic.spinor_pde = false;
  ScanOptions fd = analytic;
  fd.scheme = Scheme::central();
  for (const char* name : kNullBuiltins) {
    const auto f = builtin_field(name);
    const auto grid = default_grid(f, 5);
    double det_a = 0.0, det_f = 0.0, wave = 0.0;
    const auto ra = scan_null_solution(f, grid, analytic);
    const auto rf = scan_null_solution(f, grid, fd);
    for (std::size_t i = 0; i < ra.records.size(); ++i) {
      c.require(ra.records[i].status == PointStatus::Ok && rf.records[i].status == PointStatus::Ok,
                std::string(name) + ": point failed");
      det_a = std::max(det_a, ra.records[i].semiconformality);
      det_f = std::max(det_f, rf.records[i].semiconformality);
      wave = std::max({wave, ra.records[i].wave, rf.records[i].wave});
    }
    c.detail << name << " det " << det_a << "/" << det_f << " wave " << wave << "; ";
    c.require(det_a <= 1e-9 && det_f <= 1e-6 && wave <= 1e-6, std::string(name) + " exceeds tolerance");
  }
  const auto t = builtin_field("t");
  double worst = 0.0;
  for (const auto& r : scan_null_solution(t, default_grid(t, 5), analytic).records) {
    worst = std::max(worst, std::abs(r.semiconformality - 0.5));
  }
  c.detail << "t |det - 0.5| " << worst;
  c.require(worst <= 1e-9, "negative control");
}

// f = exp(a . x) with complex null a, as a spinor pair through its gradient.
SpinorFieldPair plane_wave_pair() {
  std::array<cplx, 4> a;
  a[1] = 0.7 * cuni();
  a[2] = 0.7 * cuni();
  a[3] = 0.7 * cuni();
  a[0] = std::sqrt(a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
  ScalarField f;
  f.label = "plane";
  f.domain.lo = {-1, -1, -1, -1};
  f.domain.hi = {1, 1, 1, 1};
  f.evaluate = [a](const MinkVec& x) {
    return std::exp(a[0] * x.t + a[1] * x.x1 + a[2] * x.x2 + a[3] * x.x3);
  };
  f.analytic_gradient = [a](const MinkVec& x) {
    const cplx e = std::exp(a[0] * x.t + a[1] * x.x1 + a[2] * x.x2 + a[3] * x.x3);
    return Gradient4{a[0] * e, a[1] * e, a[2] * e, a[3] * e};
  };
  return gradient_pair(f, Scheme::analytic());
}

// xi^A and eta^{A'} with components affine in x.
SpinorFieldPair linear_pair() {
  std::array<std::array<cplx, 5>, 4> k;
  for (auto& row : k)
    for (auto& v : row) v = cuni();
  auto affine = [](const std::array<cplx, 5>& r, const MinkVec& x) {
    return r[0] + r[1] * x.t + r[2] * x.x1 + r[3] * x.x2 + r[4] * x.x3;
  };
  SpinorFieldPair p;
  p.domain.lo = {-1, -1, -1, -1};
  p.domain.hi = {1, 1, 1, 1};
  p.xi = [k, affine](const MinkVec& x) {
    return Spinor{affine(k[0], x), affine(k[1], x), Variance::UpperUnprimed};
  };
  p.eta = [k, affine](const MinkVec& x) {
    return Spinor{affine(k[2], x), affine(k[3], x), Variance::UpperPrimed};
  };
  return p;
}

void criterion3(Check& c) {
  const Scheme fd = Scheme::central();
  for (const char* name : kNullBuiltins) {
    const auto f = builtin_field(name);
    const auto pair = gradient_pair(f, fd);
    double worst = 0.0;
    for (const auto& x : default_grid(f, 5).points()) worst = std::max(worst, max_abs(spinor_pde_residuals(pair, x)));
    c.detail << name << " pde " << worst << "; ";
    c.require(worst <= 1e-5, std::string(name) + " spinor equations");
  }

  const double tol = 1e-6;
  int agree = 0, positives = 0, negatives = 0;
  for (int i = 0; i < 100; ++i) {
    const bool positive = i % 2 == 0;
    const SpinorFieldPair pair = positive ? plane_wave_pair() : linear_pair();
    const MinkVec x{uni(-0.5, 0.5), uni(-0.5, 0.5), uni(-0.5, 0.5), uni(-0.5, 0.5)};
    const bool pde_ok = max_abs(spinor_pde_residuals(pair, x)) <= tol;
    const bool closed_ok = closedness_check(one_form_of(pair), x).max_abs() <= tol;
    if (pde_ok == closed_ok) ++agree;
    if (pde_ok && closed_ok) ++positives;
    if (!pde_ok && !closed_ok) ++negatives;
  }
  c.detail << "equivalence " << agree << "/100 (" << positives << " both hold, " << negatives << " both fail)";
  c.require(agree == 100, "equivalence disagreement");
  c.require(positives == 50 && negatives == 50, "generated cases not split as constructed");
}

void criterion4(Check& c) {
  for (const char* name : kNullBuiltins) {
    const auto f = builtin_field(name);
    const GridSpec g = default_grid(f, 5);
    Box inner;
    inner.lo = g.min;
    inner.hi = g.max;
    int exceptions = 0, outside = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const MinkVec x = random_inside(inner, 1.0);
      try {
        const auto fac = factorize_gradient(spinor_gradient(f, x, Scheme::analytic()));
        const Spinor base = trial % 2 ? raise(fac.xi) : conj(raise(fac.eta));
        const cplx s = std::polar(uni(0.2, 3.0), uni(-3.14159, 3.14159));
        const Spinor rho{s * base.c0, s * base.c1, Variance::UpperUnprimed};
        const MinkVec v = spinmat_to_vec(outer(rho, conj(rho)), 1e-12);
        const auto b = classify_kernel_direction(f, x, v).branch;
        if (b == Branch::NotInKernel) ++outside;
      } catch (const Error&) {
        ++exceptions;
      }
    }
    const auto rep = verify_theorem2(f, default_grid(f, 5));
    c.detail << name << " exc " << exceptions << " notin " << outside << " sfr " << rep.xi_branch_max << "/"
             << rep.eta_branch_max << "; ";
    c.require(exceptions == 0 && outside == 0, std::string(name) + " classification");
    c.require(std::min(rep.xi_branch_max, rep.eta_branch_max) <= 1e-5, std::string(name) + " no SFR branch");
    if (std::string(name) == "kerr-basic") {
      c.require(rep.xi_branch_max <= 1e-5 && rep.eta_branch_max <= 1e-5, "kerr-basic both branches");
    }
  }
}

// [w, z w + 0.3 z^2, z, 1]
TwistorSurface quadratic_surface() {
  std::array<BivariatePoly, 4> s;
  s[0].c = {{0.0, 1.0}};
  s[1].c = {{}, {0.0, 1.0}, {0.3}};
  s[2].c = {{}, {1.0}};
  s[3].c = {{1.0}};
  return polynomial_surface(s, "quadratic");
}

// keeps v = t - x1 away from 0, where the two incidence roots can meet
Box quadratic_domain() {
  Box b;
  b.lo = {1.5, -0.5, 0.5, -0.5};
  b.hi = {2.5, 0.5, 1.5, 0.5};
  return b;
}

ScalarField quadratic_field() {
  const auto S = quadratic_surface();
  const Box dom = quadratic_domain();
  const auto c = solve_incidence(S, dom.center());
  return surface_field(S, dom, ChartPoint{c.z, c.w}, S.label);
}

void criterion5(Check& c) {
  const Box dom = surface_basic_domain();
  const auto grid = GridSpec::inside(dom, 0.8, 5);
  ScanOptions opts;
  opts.spinor_pde = false;
  opts.scheme = Scheme::central();
  for (const auto& f : {surface_field(surface_basic(), dom, std::nullopt, "surface-basic"), quadratic_field()}) {
    const auto rep = scan_null_solution(f, GridSpec::inside(f.domain, 0.8, 5), opts);
    double worst = 0.0;
    std::size_t ok = 0;
    for (const auto& r : rep.records) {
      if (r.status != PointStatus::Ok) continue;
      ++ok;
      worst = std::max(worst, r.wave);
    }
    c.detail << f.label << " wave " << worst << " (" << ok << "/" << rep.records.size() << " pts); ";
    c.require(ok == rep.records.size() && worst <= 1e-6, f.label + " wave residual");
  }
  const auto tilted = surface_tilted();
  const auto rep = scan_null_solution(surface_field(tilted, dom, std::nullopt, tilted.label), grid, opts);
  std::vector<double> waves;
  for (const auto& r : rep.records)
    if (r.status == PointStatus::Ok) waves.push_back(r.wave);
  c.require(waves.size() * 2 > rep.records.size(), "tilted surface mostly unsolvable");
  if (waves.empty()) return;
  std::nth_element(waves.begin(), waves.begin() + waves.size() / 2, waves.end());
  const double median = waves[waves.size() / 2];
  c.detail << "tilted median wave " << median;
  c.require(median >= 1e-2, "tilted surface median wave");
}

void criterion6(Check& c) {
  const double h = 1e-5;
  double kerr_err = 0.0;
  const auto T = kerr_basic_triple();
  for (int k = 0; k < 20; ++k) {
    const MinkVec x = random_inside(kerr_basic_domain());
    const cplx z = kerr_solve(T, x).z;
    const auto g = kerr_gradient(T, z, x);
    for (int a = 0; a < 4; ++a) {
      MinkVec p = x, m = x;
      p[a] += h;
      m[a] -= h;
      const cplx fd = (kerr_solve(T, p, z).z - kerr_solve(T, m, z).z) / (2 * h);
      kerr_err = std::max(kerr_err, std::abs(fd - g[a]) / std::max(1.0, std::abs(g[a])));
    }
  }
  double tw_err = 0.0, ident = 0.0;
  for (const auto& [S, dom] : {std::pair{surface_basic(), surface_basic_domain()},
                               std::pair{quadratic_surface(), quadratic_domain()}}) {
    const auto c0 = solve_incidence(S, dom.center());
    for (int k = 0; k < 20; ++k) {
      const MinkVec x = random_inside(dom);
      const auto s = solve_incidence(S, x, ChartPoint{c0.z, c0.w});
      const auto p = incidence_partials(S, s.z, s.w, x);
      ident = std::max(ident, std::abs(p[0] * p[1] - p[2] * p[3]) /
                                  std::max(1.0, std::abs(p[0] * p[1]) + std::abs(p[2] * p[3])));
      const Gradient4 g = minkowski_gradient(p);
      for (int a = 0; a < 4; ++a) {
        MinkVec xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        const ChartPoint seed{s.z, s.w};
        const cplx fd = (solve_incidence(S, xp, seed).z - solve_incidence(S, xm, seed).z) / (2 * h);
        tw_err = std::max(tw_err, std::abs(fd - g[a]) / std::max(1.0, std::abs(g[a])));
      }
    }
  }
  c.detail << "kerr " << kerr_err << ", incidence " << tw_err << ", identity " << ident;
  c.require(kerr_err <= 1e-6, "kerr gradient");
  c.require(tw_err <= 1e-6, "incidence partials");
  c.require(ident <= 1e-10, "product identity");
}

void criterion7(Check& c) {
  int disagree = 0, nulls = 0;
  double ray = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const MinkVec x{uni(-2, 2), uni(-2, 2), uni(-2, 2), uni(-2, 2)};
    const Twistor X = i % 2 ? point_twistor(x, cuni(), cuni()) : Twistor{{cuni(), cuni(), cuni(), cuni()}};
    const bool n = is_null(X);
    nulls += n;
    if (n != in_N5(X.c)) ++disagree;
    if (n && i % 10 == 1) {
      const Ray r = ray_through(X);
      for (double s : {-2.0, -1.0, 1.0, 2.0}) {
        const auto res = incidence_residual(X, r.point + s * r.direction);
        ray = std::max(ray, std::max(std::abs(res[0]), std::abs(res[1])));
      }
    }
  }
  c.detail << "disagreements " << disagree << " of 10000 (" << nulls << " null), ray residual " << ray;
  c.require(disagree == 0, "is_null vs in_N5");
  c.require(ray <= 1e-10, "ray invariance");
}

void criterion8(Check& c) {
  const auto T = kerr_basic_triple();
  const Box dom = kerr_basic_domain();
  std::vector<MinkVec> samples{{0, 0, 1, 0}};
  for (int i = 0; i < 4; ++i) samples.push_back(random_inside(dom, 0.6));
  const auto pair = sfr_to_solution(kerr_xi_ratio(T, dom), samples);
  double gauge = 0.0, pde = 0.0;
  for (const auto& x : samples) {
    const auto k = kerr_spinors(T, kerr_solve(T, x).z, x);
    gauge = std::max({gauge, wedge_rel(pair.xi(x), raise(k.xi)), wedge_rel(pair.eta(x), raise(k.eta))});
    pde = std::max(pde, max_abs(spinor_pde_residuals(pair, x)));
  }
  c.detail << "gauge " << gauge << ", pde " << pde;
  c.require(gauge <= 1e-5, "spinors differ from kerr_spinors");
  c.require(pde <= 1e-5, "spinor equations");
  bool degenerate = false;
  try {
    sfr_to_solution({[](const MinkVec&) { return DirectionRatio::from_value({0.3, -0.2}); }, dom}, samples);
  } catch (const Error& e) {
    degenerate = e.kind() == ErrorKind::DegenerateConstantRatio;
  }
  c.require(degenerate, "constant ratio accepted");
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int exit_status(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void criterion9(Check& c) {
  const fs::path dir = fs::temp_directory_path() / ("nullwave_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto config = [&](const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
  };
  auto verify = [&](const fs::path& cfg, const fs::path& out, const std::string& env = "") {
    return exit_status(env + " \"" + std::string(NULLWAVE_EXE) + "\" verify --config \"" + cfg.string() +
                       "\" --out \"" + out.string() + "\" 2>/dev/null");
  };
  const fs::path q = config("q.json", R"({"builtin": "q"})");
  const fs::path t = config("t.json", R"({"builtin": "t"})");
  const fs::path bad = config("bad.json", "{\"builtin\": ");
  const fs::path k = config("k.json", R"({"builtin": "kerr-basic", "scheme": "fd"})");

  const int cq = verify(q, dir / "q1.csv");
  verify(q, dir / "q2.csv");
  const int ct = verify(t, dir / "t.csv");
  const int cb = verify(bad, dir / "bad.csv");
  verify(k, dir / "k1.csv", "NULLWAVE_THREADS=1");
  verify(k, dir / "k4.csv", "NULLWAVE_THREADS=4");
  const bool same_q = slurp(dir / "q1.csv") == slurp(dir / "q2.csv") && !slurp(dir / "q1.csv").empty();
  const bool same_k = slurp(dir / "k1.csv") == slurp(dir / "k4.csv") && !slurp(dir / "k1.csv").empty();
  c.detail << "exit q=" << cq << " t=" << ct << " malformed=" << cb << ", identical " << same_q << same_k;
  c.require(same_q && same_k, "reports differ");
  c.require(cq == 0 && ct == 3 && cb == 2, "exit codes");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"algebraic identities", criterion1},
      {"null-solution verification", criterion2},
      {"spinor equations and 1-form equivalence", criterion3},
      {"kernel classification and SFR branches", criterion4},
      {"twistorial surface biconditional", criterion5},
      {"gradient oracles", criterion6},
      {"twistor layer", criterion7},
      {"converse constructor", criterion8},
      {"CLI determinism and exit codes", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu (%s): %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                c.detail.str().c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
