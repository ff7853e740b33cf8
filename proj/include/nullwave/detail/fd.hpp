#ifndef NULLWAVE_DETAIL_FD_HPP
#define NULLWAVE_DETAIL_FD_HPP

#include "nullwave/error.hpp"

namespace nullwave {

template <typename T, typename F>
std::array<T, 4> central_partials(const F& fn, const Box& domain, const MinkVec& x, double h) {
  if (!domain.contains(x, h)) {
    throw Error(ErrorKind::OutOfDomain, "difference stencil leaves the domain");
  }
  std::array<T, 4> out{};
  for (int a = 0; a < 4; ++a) {
    MinkVec xp = x;
    MinkVec xm = x;
    xp[a] += h;
    xm[a] -= h;
    const T fp = fn(xp);
    const T fm = fn(xm);
    out[a] = (fp - fm) * (0.5 / h);
  }
  return out;
}

}  // namespace nullwave

#endif
