#include "sts/phys.hpp"

#include <cmath>

namespace sts {

Wavenumbers wavenumbers(const PhysicalParams& params, const Barrier& barrier, double e) {
  if (!(e >= 0.0)) throw std::domain_error("wavenumbers: E must be >= 0");
  const double k = std::sqrt(2.0 * params.m * e) / params.hbar;
  const double k0 = std::sqrt(2.0 * params.m * barrier.v0) / params.hbar;
  return {k, k0, branch_sqrt(k0 * k0 - k * k)};
}

double tau0(const PhysicalParams& params, const Barrier& barrier) {
  if (!(barrier.v0 > 0.0))
    throw std::domain_error("tau0: undefined for V0 = 0");
  return params.m * barrier.length / std::sqrt(2.0 * params.m * barrier.v0);
}

}  // namespace sts
