#include "nullwave/builtins.hpp"

#include "nullwave/error.hpp"
#include "nullwave/kerr.hpp"
#include "nullwave/twistor.hpp"

namespace nullwave {

namespace {

ScalarField linear(const std::string& label, Gradient4 g) {
  ScalarField f;
  f.label = label;
  f.evaluate = [g](const MinkVec& x) {
    return g[0] * x.t + g[1] * x.x1 + g[2] * x.x2 + g[3] * x.x3;
  };
  f.analytic_gradient = [g](const MinkVec&) { return g; };
  return f;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"u", "q", "t", "kerr-basic", "surface-basic"};
  return names;
}

ScalarField builtin_field(const std::string& name) {
  if (name == "u") return linear(name, {1.0, -1.0, 0.0, 0.0});
  if (name == "q") return linear(name, {0.0, 0.0, 1.0, kI});
  if (name == "t") return linear(name, {1.0, 0.0, 0.0, 0.0});
  if (name == "kerr-basic") return kerr_field(kerr_basic_triple(), kerr_basic_domain(), 0, name);
  if (name == "surface-basic") {
    return surface_field(surface_basic(), surface_basic_domain(), std::nullopt, name);
  }
  throw Error(ErrorKind::Parse, "unknown builtin '" + name + "'");
}

GridSpec default_grid(const ScalarField& f, int n) { return GridSpec::inside(f.domain, 0.8, n); }

}  // namespace nullwave
