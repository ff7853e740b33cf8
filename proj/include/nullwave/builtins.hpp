#ifndef NULLWAVE_BUILTINS_HPP
#define NULLWAVE_BUILTINS_HPP

// Named fields used by the CLI and the tests:
//   u             t - x1
//   q             x2 + i x3
//   t             t (not null; det nabla f = 1/2)
//   kerr-basic    implicit solution for f = z, g = 0, h = 1
//   surface-basic z(x) of the twistor surface [w, 0, z, 1]

#include <string>
#include <vector>

#include "nullwave/fields.hpp"

namespace nullwave {

const std::vector<std::string>& builtin_names();

/// Throws Parse for an unknown name.
ScalarField builtin_field(const std::string& name);

/// 5^4 grid over 80% of the field's domain.
GridSpec default_grid(const ScalarField& f, int n = 5);

}  // namespace nullwave

#endif
