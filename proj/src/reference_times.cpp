#include "sts/reference_times.hpp"

#include <cmath>

namespace sts {

TimeFamily table1_times(const PhysicalParams& params, const Barrier& barrier, double e) {
  if (!(e > 0.0)) throw std::domain_error("table1_times: k -> 0 pole at E <= 0");
  if (!(e < barrier.v0)) throw std::domain_error("table1_times: kappa -> 0 pole at E >= V0");
  const Wavenumbers wn = wavenumbers(params, barrier, e);
  const double kappa = wn.kappa.real();
  const double m = params.m;
  const double hbar = params.hbar;
  const double len = barrier.length;

  TimeFamily f;
  f.tau_phase = 2.0 * m / (hbar * wn.k * kappa);
  f.tau_dwell = 2.0 * m * wn.k / (hbar * kappa * wn.k0 * wn.k0);
  f.tau_larmor = m * len / (hbar * kappa);
  f.tau_bl = std::hypot(f.tau_larmor, f.tau_dwell);
  f.tau_complex = cplx(f.tau_dwell, -f.tau_larmor);
  f.tau_stochastic = friction_coefficient(params, barrier, e) * (f.tau_larmor * f.tau_larmor) +
                     cplx(0.0, f.tau_larmor);
  return f;
}

cplx friction_coefficient(const PhysicalParams& params, const Barrier& barrier, double e_max) {
  if (!(barrier.v0 > 0.0)) throw std::domain_error("friction_coefficient: need V0 > 0");
  return {0.0, params.m * params.m * e_max * e_max / (12.0 * params.hbar * barrier.v0)};
}

cplx classical_crossing_time(const PhysicalParams& params, const Barrier& barrier, double e) {
  if (e == barrier.v0)
    throw std::domain_error("classical_crossing_time: pole at E = V0");
  return params.m * barrier.length / momentum(e, barrier.v0, params);
}

}  // namespace sts
